#ifndef PARETOEST_REPORT_IO_HPP
#define PARETOEST_REPORT_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "paretoest/exact_moments.hpp"
#include "paretoest/mc_harness.hpp"
#include "paretoest/quadrature_oracle.hpp"

namespace paretoest {

/// Shortest round-trippable decimal form (17 significant digits).
std::string fmt_g17(double v);

/// Human-oriented 6-significant-digit form.
std::string fmt_g6(double v);

// CSV writers. Numbers are serialized with fmt_g17 so parsing the emitted
// file recovers the in-memory rows exactly.

extern const char* const kTableCsvHeader;
extern const char* const kDeviationCsvHeader;

void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows);
void write_deviation_csv(std::ostream& os,
                         const std::vector<DeviationRow>& rows);

std::vector<TableRow> parse_table_csv(std::istream& is);
std::vector<DeviationRow> parse_deviation_csv(std::istream& is);

// JSON mirrors of the CSV fields (arrays of objects).
std::string table_rows_json(const std::vector<TableRow>& rows);
std::string deviation_rows_json(const std::vector<DeviationRow>& rows);
std::string moment_report_json(const MomentReport& report);

/// One CSV row (with header) for a single MomentReport.
void write_moment_report_csv(std::ostream& os, const MomentReport& report);

/// Console rendering with 6 significant digits.
std::string moment_report_console(const MomentReport& report);

}  // namespace paretoest

#endif  // PARETOEST_REPORT_IO_HPP

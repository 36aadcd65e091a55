#include "paretoest/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace paretoest {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* const kTableCsvHeader =
    "n,alpha,k,mse_umvue_pdf,mse_mle_pdf,mse_umvue_cdf,mse_mle_cdf,"
    "se_umvue_pdf,se_mle_pdf,se_umvue_cdf,se_mle_cdf,failed_reps";

const char* const kDeviationCsvHeader =
    "n,alpha,k,x,estimator,target,closed,quadrature,exact_special,rel_dev,flag";

void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  os << kTableCsvHeader << '\n';
  for (const TableRow& r : rows) {
    os << r.n << ',' << fmt_g17(r.alpha) << ',' << fmt_g17(r.k) << ','
       << fmt_g17(r.mse_umvue_pdf) << ',' << fmt_g17(r.mse_mle_pdf) << ','
       << fmt_g17(r.mse_umvue_cdf) << ',' << fmt_g17(r.mse_mle_cdf);
    for (double se : r.std_errors) os << ',' << fmt_g17(se);
    os << ',' << r.failed_reps << '\n';
  }
}

void write_deviation_csv(std::ostream& os,
                         const std::vector<DeviationRow>& rows) {
  os << kDeviationCsvHeader << '\n';
  for (const DeviationRow& r : rows) {
    os << r.n << ',' << fmt_g17(r.alpha) << ',' << fmt_g17(r.k) << ',';
    if (r.x) os << fmt_g17(*r.x);
    os << ',' << to_string(r.kind.tag) << ',' << to_string(r.kind.target)
       << ',' << fmt_g17(r.closed) << ',' << fmt_g17(r.quadrature) << ',';
    if (r.exact_special) os << fmt_g17(*r.exact_special);
    os << ',' << fmt_g17(r.rel_deviation) << ',' << r.flag << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

EstimatorTag tag_from(const std::string& s) {
  if (s == "mle") return EstimatorTag::Mle;
  if (s == "umvue") return EstimatorTag::Umvue;
  throw std::invalid_argument("bad estimator tag: " + s);
}

Target target_from(const std::string& s) {
  if (s == "alpha") return Target::Alpha;
  if (s == "pdf") return Target::Pdf;
  if (s == "cdf") return Target::Cdf;
  throw std::invalid_argument("bad target: " + s);
}

}  // namespace

std::vector<TableRow> parse_table_csv(std::istream& is) {
  std::vector<TableRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != kTableCsvHeader) {
    throw std::invalid_argument("parse_table_csv: bad header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 12) {
      throw std::invalid_argument("parse_table_csv: bad row: " + line);
    }
    TableRow r;
    r.n = std::stoi(f[0]);
    r.alpha = to_double(f[1]);
    r.k = to_double(f[2]);
    r.mse_umvue_pdf = to_double(f[3]);
    r.mse_mle_pdf = to_double(f[4]);
    r.mse_umvue_cdf = to_double(f[5]);
    r.mse_mle_cdf = to_double(f[6]);
    for (int i = 0; i < 4; ++i) r.std_errors[i] = to_double(f[7 + i]);
    r.failed_reps = std::stoll(f[11]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<DeviationRow> parse_deviation_csv(std::istream& is) {
  std::vector<DeviationRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != kDeviationCsvHeader) {
    throw std::invalid_argument("parse_deviation_csv: bad header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11) {
      throw std::invalid_argument("parse_deviation_csv: bad row: " + line);
    }
    DeviationRow r;
    r.n = std::stoi(f[0]);
    r.alpha = to_double(f[1]);
    r.k = to_double(f[2]);
    if (!f[3].empty()) r.x = to_double(f[3]);
    r.kind = EstimatorKind{tag_from(f[4]), target_from(f[5])};
    r.closed = to_double(f[6]);
    r.quadrature = to_double(f[7]);
    if (!f[8].empty()) r.exact_special = to_double(f[8]);
    r.rel_deviation = to_double(f[9]);
    r.flag = f[10];
    rows.push_back(r);
  }
  return rows;
}

namespace {

nlohmann::json table_row_json(const TableRow& r) {
  return nlohmann::json{{"n", r.n},
                        {"alpha", r.alpha},
                        {"k", r.k},
                        {"mse_umvue_pdf", r.mse_umvue_pdf},
                        {"mse_mle_pdf", r.mse_mle_pdf},
                        {"mse_umvue_cdf", r.mse_umvue_cdf},
                        {"mse_mle_cdf", r.mse_mle_cdf},
                        {"se_umvue_pdf", r.std_errors[0]},
                        {"se_mle_pdf", r.std_errors[1]},
                        {"se_umvue_cdf", r.std_errors[2]},
                        {"se_mle_cdf", r.std_errors[3]},
                        {"failed_reps", r.failed_reps}};
}

nlohmann::json deviation_row_json(const DeviationRow& r) {
  nlohmann::json j{{"n", r.n},
                   {"alpha", r.alpha},
                   {"k", r.k},
                   {"estimator", to_string(r.kind.tag)},
                   {"target", to_string(r.kind.target)},
                   {"closed", r.closed},
                   {"quadrature", r.quadrature},
                   {"rel_dev", r.rel_deviation},
                   {"flag", r.flag}};
  if (r.x) j["x"] = *r.x;
  if (r.exact_special) j["exact_special"] = *r.exact_special;
  return j;
}

}  // namespace

std::string table_rows_json(const std::vector<TableRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TableRow& r : rows) arr.push_back(table_row_json(r));
  return arr.dump(2);
}

std::string deviation_rows_json(const std::vector<DeviationRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const DeviationRow& r : rows) arr.push_back(deviation_row_json(r));
  return arr.dump(2);
}

std::string moment_report_json(const MomentReport& report) {
  nlohmann::json j{{"engine", to_string(report.engine)},
                   {"estimator", to_string(report.estimator.tag)},
                   {"target", to_string(report.estimator.target)},
                   {"mean", report.mean},
                   {"second_moment", report.second_moment},
                   {"variance", report.variance},
                   {"bias", report.bias},
                   {"mse", report.mse}};
  if (report.eval_x) j["x"] = *report.eval_x;
  if (report.std_error) j["std_error"] = *report.std_error;
  if (report.second_std_error) j["second_std_error"] = *report.second_std_error;
  if (report.mse_std_error) j["mse_std_error"] = *report.mse_std_error;
  return j.dump(2);
}

void write_moment_report_csv(std::ostream& os, const MomentReport& report) {
  os << "engine,estimator,target,x,mean,second_moment,variance,bias,mse,"
        "std_error,second_std_error,mse_std_error\n";
  os << to_string(report.engine) << ',' << to_string(report.estimator.tag)
     << ',' << to_string(report.estimator.target) << ',';
  if (report.eval_x) os << fmt_g17(*report.eval_x);
  os << ',' << fmt_g17(report.mean) << ',' << fmt_g17(report.second_moment)
     << ',' << fmt_g17(report.variance) << ',' << fmt_g17(report.bias) << ','
     << fmt_g17(report.mse) << ',';
  if (report.std_error) os << fmt_g17(*report.std_error);
  os << ',';
  if (report.second_std_error) os << fmt_g17(*report.second_std_error);
  os << ',';
  if (report.mse_std_error) os << fmt_g17(*report.mse_std_error);
  os << '\n';
}

std::string moment_report_console(const MomentReport& report) {
  std::ostringstream os;
  os << "engine=" << to_string(report.engine)
     << " estimator=" << to_string(report.estimator.tag)
     << " target=" << to_string(report.estimator.target);
  if (report.eval_x) os << " x=" << fmt_g6(*report.eval_x);
  os << "\n  mean          = " << fmt_g6(report.mean)
     << "\n  second moment = " << fmt_g6(report.second_moment)
     << "\n  variance      = " << fmt_g6(report.variance)
     << "\n  bias          = " << fmt_g6(report.bias)
     << "\n  mse           = " << fmt_g6(report.mse);
  if (report.std_error) os << "\n  se(mean)      = " << fmt_g6(*report.std_error);
  if (report.mse_std_error) os << "\n  se(mse)       = " << fmt_g6(*report.mse_std_error);
  return os.str();
}

}  // namespace paretoest

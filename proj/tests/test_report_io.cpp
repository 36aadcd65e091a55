#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "paretoest/mc_harness.hpp"
#include "paretoest/quadrature_oracle.hpp"
#include "paretoest/report_io.hpp"

using namespace paretoest;

TEST_CASE("fmt_g17 round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, 2.718281828459045, 1e-300, 6.02214076e23,
                   -0.4551780}) {
    CHECK(std::strtod(fmt_g17(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("table CSV round-trips bit-exactly") {
  SimulationConfig config;
  config.reps = 40;
  config.n_grid = {4, 7};
  config.alpha_grid = {0.5, 1.25};
  config.k_grid = {0.5};
  config.seed = 31;
  const auto rows = simulate_table(config);

  std::stringstream ss;
  write_table_csv(ss, rows);
  const std::string text = ss.str();
  CHECK(text.substr(0, text.find('\n')) == kTableCsvHeader);

  std::stringstream in(text);
  const auto parsed = parse_table_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i] == rows[i]);
  }
}

TEST_CASE("deviation CSV round-trips bit-exactly") {
  QuadratureConfig cfg;
  const auto rows = deviation_report(5, 1.0, 1.0, {1.0, 1.5, 3.0}, cfg);
  std::stringstream ss;
  write_deviation_csv(ss, rows);
  const std::string text = ss.str();
  CHECK(text.substr(0, text.find('\n')) == kDeviationCsvHeader);

  std::stringstream in(text);
  const auto parsed = parse_deviation_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // NaN-free rows compare exactly; this grid produces none
    CHECK(parsed[i] == rows[i]);
  }
}

TEST_CASE("JSON mirrors the CSV fields") {
  TableRow row;
  row.n = 4;
  row.alpha = 0.5;
  row.k = 0.5;
  row.mse_umvue_pdf = 0.25;
  row.mse_mle_pdf = 0.125;
  row.mse_umvue_cdf = 0.0625;
  row.mse_mle_cdf = 0.03125;
  row.std_errors = {1e-3, 2e-3, 3e-3, 4e-3};
  const auto arr = nlohmann::json::parse(table_rows_json({row}));
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 1);
  CHECK(arr[0]["n"] == 4);
  CHECK(arr[0]["mse_mle_pdf"] == 0.125);
  CHECK(arr[0]["se_mle_cdf"] == 4e-3);
  CHECK(arr[0]["failed_reps"] == 0);
}

TEST_CASE("moment report serialization carries the engine and errors") {
  MomentReport r;
  r.engine = Engine::MonteCarlo;
  r.estimator = EstimatorKind{EstimatorTag::Umvue, Target::Pdf};
  r.eval_x = 2.0;
  r.mean = 0.25;
  r.second_moment = 0.125;
  r.variance = 0.0625;
  r.bias = 0.0;
  r.mse = 0.0625;
  r.std_error = 1e-4;
  r.second_std_error = 2e-4;
  r.mse_std_error = 3e-4;
  const auto j = nlohmann::json::parse(moment_report_json(r));
  CHECK(j["engine"] == "mc");
  CHECK(j["estimator"] == "umvue");
  CHECK(j["target"] == "pdf");
  CHECK(j["x"] == 2.0);
  CHECK(j["std_error"] == 1e-4);

  std::stringstream ss;
  write_moment_report_csv(ss, r);
  std::string header;
  std::getline(ss, header);
  CHECK(header.find("mse_std_error") != std::string::npos);

  const std::string console = moment_report_console(r);
  CHECK(console.find("mse") != std::string::npos);
  CHECK(console.find("0.0625") != std::string::npos);
}

// End-to-end checks of the installed command-line surface. Each case runs
// the real binary (path injected by CMake) and inspects exit status and
// output.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef PARETOEST_CLI_PATH
#error "PARETOEST_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PARETOEST_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), got);
  }
  const int rc = pclose(pipe);
  return RunResult{WEXITSTATUS(rc), out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("eval: single-observation MLE collapses to 1") {
  const RunResult r =
      run_cli("eval --data \"2.718281828459045\" --k 1 --target alpha "
              "--estimator mle");
  CHECK(r.status == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eval: two-observation UMVUE of alpha") {
  const RunResult r = run_cli(
      "eval --data \"2.718281828459045,2.718281828459045\" --k 1 "
      "--target alpha --estimator umvue");
  CHECK(r.status == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("eval: reads newline-separated sample files") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "paretoest_sample.txt").string();
  {
    std::ofstream f(path);
    f << "2.718281828459045\n2.718281828459045\n";
  }
  const RunResult r = run_cli("eval --data " + path +
                              " --k 1 --target pdf --estimator mle --x 2");
  CHECK(r.status == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.25).epsilon(1e-9));
  std::filesystem::remove(path);
}

TEST_CASE("eval: usage errors") {
  CHECK(run_cli("eval --data \"2.0\" --k -1 --target alpha --estimator mle")
            .status != 0);
  CHECK(run_cli("eval --data \"2.0\" --k 1 --target pdf --estimator mle")
            .status != 0);  // missing --x
}

TEST_CASE("mse: closed-form collapse value") {
  const RunResult r = run_cli(
      "mse --n 5 --alpha 1 --k 1 --x 1 --estimator mle --target pdf "
      "--engine closed --format json");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"mse\": 0.58333333333") != std::string::npos);
}

TEST_CASE("mse: deterministic Monte Carlo output") {
  const std::string args =
      "mse --n 6 --alpha 1.5 --k 1 --x 2 --estimator umvue --target pdf "
      "--engine mc --reps 20000 --seed 7 --format json";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("mse: moment guards and combination matrix") {
  CHECK(run_cli("mse --n 2 --alpha 1 --k 1 --x 1 --estimator mle --target pdf "
                "--engine closed")
            .status != 0);
  const RunResult bad = run_cli(
      "mse --n 5 --alpha 1 --k 1 --x 2 --estimator umvue --target cdf "
      "--engine bessel");
  CHECK(bad.status == 2);
  CHECK(bad.out.find("valid engine/estimator/target combinations") !=
        std::string::npos);
}

TEST_CASE("mse: r-th moment printing") {
  const RunResult r = run_cli(
      "mse --n 5 --alpha 1 --k 1 --x 1 --estimator umvue --target pdf "
      "--engine closed --r 2");
  CHECK(r.status == 0);
  CHECK(std::stod(r.out) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("adjudicate: header, row count, collapse rows") {
  const RunResult r =
      run_cli("adjudicate --n 5 --alpha 1 --k 1 --x-grid 1:0.5:3");
  CHECK(r.status == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(!lines.empty());
  CHECK(lines[0] ==
        "n,alpha,k,x,estimator,target,closed,quadrature,exact_special,"
        "rel_dev,flag");
  // 5 grid points x 4 combos + alpha summary row
  CHECK(lines.size() == 1 + 5 * 4 + 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream ss(lines[i]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields[3] == "1") {  // x = k rows
      CHECK(std::stod(fields[9]) <= 1e-8);
    }
  }
}

TEST_CASE("table: CSV with std-error columns and TSV plot data") {
  const std::string dir =
      (std::filesystem::temp_directory_path() / "paretoest_plots").string();
  const std::string out =
      (std::filesystem::temp_directory_path() / "paretoest_table.csv").string();
  const RunResult r = run_cli(
      "table --n-grid 4,6,8 --alpha-grid 1 --k-grid 1 --reps 60 --seed 5 "
      "--out " + out + " --plot-dir " + dir);
  CHECK(r.status == 0);
  std::ifstream csv(out);
  std::string header;
  std::getline(csv, header);
  CHECK(header.find("se_umvue_pdf") != std::string::npos);
  int rows = 0;
  std::string line;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 3);

  std::ifstream tsv(dir + "/pdf_alpha1_k1.tsv");
  REQUIRE(tsv.good());
  std::getline(tsv, header);
  CHECK(header == "n\tmse_umvue\tmse_mle");
  int prev_n = 0;
  while (std::getline(tsv, line)) {
    if (line.empty()) continue;
    const int n = std::stoi(line.substr(0, line.find('\t')));
    CHECK(n > prev_n);
    prev_n = n;
  }
  std::filesystem::remove_all(dir);
  std::filesystem::remove(out);
}

TEST_CASE("table: identical seeds give identical output") {
  const std::string args =
      "table --n-grid 4 --alpha-grid 0.5 --k-grid 0.5 --reps 40 --seed 9";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

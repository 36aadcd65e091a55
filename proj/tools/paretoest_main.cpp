// paretoest CLI: point estimates, moment/MSE reports from five engines,
// closed-form adjudication against the quadrature oracle, and efficiency
// table reproduction.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paretoest/errors.hpp"
#include "paretoest/estimators.hpp"
#include "paretoest/exact_moments.hpp"
#include "paretoest/mc_harness.hpp"
#include "paretoest/pareto_model.hpp"
#include "paretoest/quadrature_oracle.hpp"
#include "paretoest/report_io.hpp"

namespace {

using namespace paretoest;

enum class OutputFormat { Console, Csv, Json };

struct OutputSpec {
  OutputFormat format = OutputFormat::Console;
  std::string path;  // empty = stdout
};

std::ostream& open_sink(const OutputSpec& spec, std::ofstream& file) {
  if (spec.path.empty() || spec.path == "-") return std::cout;
  file.open(spec.path);
  if (!file) throw std::runtime_error("cannot open output file: " + spec.path);
  return file;
}

std::vector<double> parse_inline_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    out.push_back(v);
  }
  return out;
}

std::vector<double> load_sample_values(const std::string& data) {
  if (std::filesystem::exists(data)) {
    std::ifstream in(data);
    if (!in) throw std::runtime_error("cannot open data file: " + data);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      out.push_back(std::stod(line));
    }
    return out;
  }
  return parse_inline_values(data);
}

/// "a,b,c" or "start:step:end" (end inclusive up to rounding slack).
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    std::vector<double> parts;
    while (std::getline(ss, part, ':')) parts.push_back(std::stod(part));
    if (parts.size() != 3 || !(parts[1] > 0.0)) {
      throw std::invalid_argument("grid must be start:step:end with step > 0");
    }
    std::vector<double> out;
    for (double v = parts[0]; v <= parts[2] + 1e-12 * std::fabs(parts[1]);
         v += parts[1]) {
      out.push_back(v);
    }
    return out;
  }
  return parse_inline_values(text);
}

EstimatorTag parse_tag(const std::string& s) {
  if (s == "mle") return EstimatorTag::Mle;
  if (s == "umvue") return EstimatorTag::Umvue;
  throw CLI::ValidationError("--estimator must be mle or umvue");
}

Target parse_target(const std::string& s) {
  if (s == "alpha") return Target::Alpha;
  if (s == "pdf") return Target::Pdf;
  if (s == "cdf") return Target::Cdf;
  throw CLI::ValidationError("--target must be alpha, pdf or cdf");
}

// ---------------------------------------------------------------- eval ----

struct EvalArgs {
  std::string data;
  double k = 0.0;
  std::string target;
  std::string estimator;
  std::optional<double> x;
};

int run_eval(const EvalArgs& args) {
  if (!(args.k > 0.0)) {
    std::cerr << "eval: --k must be > 0\n";
    return 2;
  }
  const Target target = parse_target(args.target);
  const EstimatorTag tag = parse_tag(args.estimator);
  if (target != Target::Alpha && !args.x.has_value()) {
    std::cerr << "eval: --x is required for pdf/cdf targets\n";
    return 2;
  }
  const SampleData sample =
      SampleData::from_values(load_sample_values(args.data), args.k);
  double value = 0.0;
  switch (target) {
    case Target::Alpha:
      value = tag == EstimatorTag::Mle ? mle_alpha(sample) : umvue_alpha(sample);
      break;
    case Target::Pdf:
      value = tag == EstimatorTag::Mle ? mle_pdf_at(sample, *args.x)
                                       : umvue_pdf_at(sample, *args.x);
      break;
    case Target::Cdf:
      value = tag == EstimatorTag::Mle ? mle_cdf_at(sample, *args.x)
                                       : umvue_cdf_at(sample, *args.x);
      break;
  }
  std::cout << fmt_g17(value) << '\n';
  return 0;
}

// ----------------------------------------------------------------- mse ----

struct MseArgs {
  int n = 0;
  double alpha = 0.0, k = 0.0;
  std::optional<double> x;
  std::string estimator, target, engine;
  std::optional<int> r;
  long long reps = 100000;
  std::uint64_t seed = 0;
  double rel_tol = 1e-10, abs_tol = 1e-12;
  int max_subdivisions = 2000;
  std::string transform = "rational";
  OutputSpec out;
};

bool engine_supported(const std::string& engine, EstimatorKind kind) {
  if (engine == "mc" || engine == "quadrature") return true;
  if (engine == "closed") {
    return !(kind.target == Target::Alpha && kind.tag == EstimatorTag::Umvue);
  }
  if (engine == "bessel") {
    return kind.tag == EstimatorTag::Mle && kind.target != Target::Alpha;
  }
  if (engine == "kummer") {
    return kind.tag == EstimatorTag::Umvue && kind.target == Target::Pdf;
  }
  return false;
}

const char* kValidCombos =
    "valid engine/estimator/target combinations:\n"
    "  closed:     mle alpha|pdf|cdf, umvue pdf|cdf\n"
    "  quadrature: all\n"
    "  mc:         all\n"
    "  bessel:     mle pdf|cdf\n"
    "  kummer:     umvue pdf\n";

QuadratureConfig quad_config_from(const MseArgs& args) {
  QuadratureConfig cfg;
  cfg.rel_tol = args.rel_tol;
  cfg.abs_tol = args.abs_tol;
  cfg.max_subdivisions = args.max_subdivisions;
  cfg.infinite_transform = args.transform == "exp" ? InfiniteTransform::ExpMap
                                                   : InfiniteTransform::RationalMap;
  return cfg;
}

int emit_report(const MomentReport& report, const OutputSpec& out) {
  std::ofstream file;
  std::ostream& os = open_sink(out, file);
  switch (out.format) {
    case OutputFormat::Console:
      os << moment_report_console(report) << '\n';
      break;
    case OutputFormat::Csv:
      write_moment_report_csv(os, report);
      break;
    case OutputFormat::Json:
      os << moment_report_json(report) << '\n';
      break;
  }
  return 0;
}

int run_mse(const MseArgs& args) {
  const EstimatorKind kind{parse_tag(args.estimator), parse_target(args.target)};
  if (!engine_supported(args.engine, kind)) {
    std::cerr << "mse: unsupported combination (engine=" << args.engine
              << ", estimator=" << args.estimator << ", target=" << args.target
              << ")\n"
              << kValidCombos;
    return 2;
  }
  if (kind.target != Target::Alpha && !args.x.has_value()) {
    std::cerr << "mse: --x is required for pdf/cdf targets\n";
    return 2;
  }
  const double x = args.x.value_or(args.k);
  const QuadratureConfig cfg = quad_config_from(args);

  if (args.r.has_value()) {
    // r-th raw moment instead of the full report
    const int r = *args.r;
    double value = 0.0;
    if (args.engine == "closed") {
      value = kind.tag == EstimatorTag::Mle
                  ? (kind.target == Target::Pdf
                         ? rth_moment_mle_pdf(args.n, args.alpha, args.k, x, r)
                         : rth_moment_mle_cdf(args.n, args.alpha, args.k, x, r))
                  : (kind.target == Target::Pdf
                         ? rth_moment_umvue_pdf(args.n, args.alpha, args.k, x, r)
                         : rth_moment_umvue_cdf(args.n, args.alpha, args.k, x,
                                                r));
    } else if (args.engine == "quadrature") {
      value = kind.tag == EstimatorTag::Mle
                  ? moment_mle(kind.target, r, args.n, args.alpha, args.k, x,
                               cfg)
                        .value
                  : moment_umvue(kind.target, r, args.n, args.alpha, args.k, x,
                                 cfg)
                        .value;
    } else if (args.engine == "bessel") {
      value = kind.target == Target::Pdf
                  ? exact_mle_moment_bessel(args.n, args.alpha, args.k, x, r)
                  : exact_mle_cdf_moment_bessel(args.n, args.alpha, args.k, x,
                                                r);
    } else if (args.engine == "kummer") {
      if (r != 2) {
        std::cerr << "mse: the Kummer engine provides only r = 2\n";
        return 2;
      }
      value =
          exact_umvue_pdf_second_moment_kummer(args.n, args.alpha, args.k, x);
    } else {  // mc
      value = brute_force_moment(kind, r, args.n, args.alpha, args.k, x,
                                 args.reps, args.seed)
                  .mean;
    }
    std::cout << fmt_g17(value) << '\n';
    return 0;
  }

  MomentReport report;
  if (args.engine == "closed") {
    if (kind.target == Target::Alpha) {
      report = mle_alpha_moments(args.n, args.alpha);
    } else if (kind.tag == EstimatorTag::Mle) {
      report = kind.target == Target::Pdf
                   ? mse_mle_pdf(args.n, args.alpha, args.k, x)
                   : mse_mle_cdf(args.n, args.alpha, args.k, x);
    } else {
      report = kind.target == Target::Pdf
                   ? mse_umvue_pdf(args.n, args.alpha, args.k, x)
                   : mse_umvue_cdf(args.n, args.alpha, args.k, x);
    }
  } else if (args.engine == "quadrature") {
    report = mse_via_quadrature(kind, args.n, args.alpha, args.k, x, cfg);
  } else if (args.engine == "bessel") {
    report = kind.target == Target::Pdf
                 ? mse_mle_pdf_bessel(args.n, args.alpha, args.k, x)
                 : mse_mle_cdf_bessel(args.n, args.alpha, args.k, x);
  } else if (args.engine == "kummer") {
    report = mse_umvue_pdf_kummer(args.n, args.alpha, args.k, x);
  } else {
    report = brute_force_moment(kind, 1, args.n, args.alpha, args.k, x,
                                args.reps, args.seed);
  }
  return emit_report(report, args.out);
}

// ---------------------------------------------------------- adjudicate ----

struct AdjudicateArgs {
  int n = 0;
  double alpha = 0.0, k = 0.0;
  std::string x_grid;
  std::string out_path;
  double rel_tol = 1e-10;
};

int run_adjudicate(const AdjudicateArgs& args) {
  QuadratureConfig cfg;
  cfg.rel_tol = args.rel_tol;
  const std::vector<double> grid = parse_grid(args.x_grid);
  const std::vector<DeviationRow> rows =
      deviation_report(args.n, args.alpha, args.k, grid, cfg);
  std::size_t failures = 0;
  for (const DeviationRow& r : rows) {
    if (r.flag == "quad_fail") ++failures;
  }
  std::ofstream file;
  OutputSpec spec{OutputFormat::Csv, args.out_path};
  std::ostream& os = open_sink(spec, file);
  write_deviation_csv(os, rows);
  return failures == rows.size() ? 1 : 0;
}

// --------------------------------------------------------------- table ----

struct TableArgs {
  long long reps = 1000;
  std::uint64_t seed = 0;
  std::string n_grid, alpha_grid, k_grid;
  bool paper_grid = false;
  std::string out_path;
  std::string plot_dir;
  std::string engine = "quadrature";
  std::optional<double> fixed_x;
  int threads = 0;
  OutputFormat format = OutputFormat::Csv;
};

std::vector<int> paper_n_grid() {
  std::vector<int> ns;
  for (int n = 4; n <= 15; ++n) ns.push_back(n);
  for (int n = 20; n <= 100; n += 5) ns.push_back(n);
  return ns;
}

int run_table(const TableArgs& args) {
  SimulationConfig config;
  config.reps = args.reps;
  config.seed = args.seed;
  config.max_threads = args.threads;
  config.engine_for_per_rep_mse = args.engine == "closed"
                                      ? PerRepEngine::ClosedForm
                                      : PerRepEngine::Quadrature;
  if (args.fixed_x.has_value()) {
    config.x_policy = XPolicy::FixedPoint;
    config.fixed_x = *args.fixed_x;
  }
  if (args.paper_grid) {
    config.n_grid = paper_n_grid();
    config.alpha_k_pairs = {{0.5, 0.5}, {1.0, 1.0}, {1.5, 1.5},
                            {2.0, 2.0}, {0.5, 2.0}, {2.0, 0.5}};
  } else {
    if (args.n_grid.empty() || args.alpha_grid.empty() || args.k_grid.empty()) {
      std::cerr << "table: need --n-grid, --alpha-grid and --k-grid (or "
                   "--paper-grid)\n";
      return 2;
    }
    for (double v : parse_grid(args.n_grid)) {
      config.n_grid.push_back(static_cast<int>(std::lround(v)));
    }
    config.alpha_grid = parse_grid(args.alpha_grid);
    config.k_grid = parse_grid(args.k_grid);
  }

  const std::vector<TableRow> rows = simulate_table(config);

  std::ofstream file;
  OutputSpec spec{args.format, args.out_path};
  std::ostream& os = open_sink(spec, file);
  if (args.format == OutputFormat::Json) {
    os << table_rows_json(rows) << '\n';
  } else {
    write_table_csv(os, rows);
  }

  if (!args.plot_dir.empty()) {
    std::filesystem::create_directories(args.plot_dir);
    // one TSV per (alpha, k) pair and per target, n ascending
    std::vector<std::pair<double, double>> pairs = config.cell_pairs();
    for (const auto& [a, k] : pairs) {
      for (const char* what : {"pdf", "cdf"}) {
        std::ostringstream name;
        name << args.plot_dir << "/" << what << "_alpha" << fmt_g6(a) << "_k"
             << fmt_g6(k) << ".tsv";
        std::ofstream tsv(name.str());
        tsv << "n\tmse_umvue\tmse_mle\n";
        for (const TableRow& r : rows) {
          if (r.alpha != a || r.k != k) continue;
          if (std::string(what) == "pdf") {
            tsv << r.n << '\t' << fmt_g17(r.mse_umvue_pdf) << '\t'
                << fmt_g17(r.mse_mle_pdf) << '\n';
          } else {
            tsv << r.n << '\t' << fmt_g17(r.mse_umvue_cdf) << '\t'
                << fmt_g17(r.mse_mle_cdf) << '\n';
          }
        }
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto(alpha; k known) MLE/UMVUE estimators: point "
               "evaluation, exact and simulated moments, closed-form "
               "adjudication, efficiency tables"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "point estimate from a sample");
  eval->add_option("--data", eval_args.data,
                   "sample file (one value per line) or inline comma list")
      ->required();
  eval->add_option("--k", eval_args.k, "known scale k")->required();
  eval->add_option("--target", eval_args.target, "alpha|pdf|cdf")->required();
  eval->add_option("--estimator", eval_args.estimator, "mle|umvue")->required();
  eval->add_option("--x", eval_args.x, "evaluation point (pdf/cdf)");

  MseArgs mse_args;
  CLI::App* mse = app.add_subcommand("mse", "moment/MSE report for one cell");
  mse->add_option("--n", mse_args.n, "sample size")->required();
  mse->add_option("--alpha", mse_args.alpha, "true shape")->required();
  mse->add_option("--k", mse_args.k, "known scale")->required();
  mse->add_option("--x", mse_args.x, "evaluation point");
  mse->add_option("--estimator", mse_args.estimator, "mle|umvue")->required();
  mse->add_option("--target", mse_args.target, "alpha|pdf|cdf")->required();
  mse->add_option("--engine", mse_args.engine,
                  "closed|quadrature|mc|bessel|kummer")
      ->required();
  mse->add_option("--r", mse_args.r, "print the r-th raw moment instead");
  mse->add_option("--reps", mse_args.reps, "Monte Carlo replications");
  mse->add_option("--seed", mse_args.seed, "Monte Carlo seed");
  mse->add_option("--rel-tol", mse_args.rel_tol, "quadrature relative tolerance");
  mse->add_option("--abs-tol", mse_args.abs_tol, "quadrature absolute tolerance");
  mse->add_option("--max-subdivisions", mse_args.max_subdivisions,
                  "quadrature subdivision budget");
  mse->add_option("--transform", mse_args.transform,
                  "infinite-interval transform: rational|exp");
  std::string mse_format = "console";
  mse->add_option("--format", mse_format, "console|csv|json");
  mse->add_option("--out", mse_args.out.path, "output path (default stdout)");

  AdjudicateArgs adj_args;
  CLI::App* adj = app.add_subcommand(
      "adjudicate", "closed form vs quadrature oracle deviation report (CSV)");
  adj->add_option("--n", adj_args.n, "sample size")->required();
  adj->add_option("--alpha", adj_args.alpha, "true shape")->required();
  adj->add_option("--k", adj_args.k, "known scale")->required();
  adj->add_option("--x-grid", adj_args.x_grid,
                  "comma list or start:step:end of evaluation points")
      ->required();
  adj->add_option("--out", adj_args.out_path, "CSV path (default stdout)");
  adj->add_option("--rel-tol", adj_args.rel_tol, "quadrature relative tolerance");

  TableArgs table_args;
  CLI::App* table = app.add_subcommand(
      "table", "efficiency tables: average per-point MSEs over replications");
  table->add_option("--reps", table_args.reps, "replications per cell");
  table->add_option("--seed", table_args.seed, "seed");
  table->add_option("--n-grid", table_args.n_grid, "sample sizes");
  table->add_option("--alpha-grid", table_args.alpha_grid, "shape grid");
  table->add_option("--k-grid", table_args.k_grid, "scale grid");
  table->add_flag("--paper-grid", table_args.paper_grid,
                  "n = 4(1)15(5)100 with the six (alpha, k) column pairs");
  table->add_option("--out", table_args.out_path, "output path");
  table->add_option("--plot-dir", table_args.plot_dir,
                    "also write per-pair TSV plot data here");
  table->add_option("--engine", table_args.engine,
                    "per-replication MSE engine: quadrature|closed");
  table->add_option("--x", table_args.fixed_x,
                    "fixed evaluation point (default: first observation)");
  table->add_option("--threads", table_args.threads, "0 = hardware");
  std::string table_format = "csv";
  table->add_option("--format", table_format, "csv|json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(eval_args);
    if (*mse) {
      mse_args.out.format = mse_format == "csv"
                                ? OutputFormat::Csv
                                : (mse_format == "json" ? OutputFormat::Json
                                                        : OutputFormat::Console);
      return run_mse(mse_args);
    }
    if (*adj) return run_adjudicate(adj_args);
    if (*table) {
      table_args.format =
          table_format == "json" ? OutputFormat::Json : OutputFormat::Csv;
      return run_table(table_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

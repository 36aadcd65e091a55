#include "paretoest/mc_harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>
#include <thread>

#include "paretoest/errors.hpp"
#include "paretoest/estimators.hpp"
#include "paretoest/quadrature_oracle.hpp"
#include "paretoest/rng.hpp"

namespace paretoest {

void SimulationConfig::validate() const {
  if (reps < 1) throw std::invalid_argument("SimulationConfig: reps must be >= 1");
  if (n_grid.empty()) throw std::invalid_argument("SimulationConfig: empty n_grid");
  for (int n : n_grid) {
    if (n < 3) {
      throw std::invalid_argument(
          "SimulationConfig: n_grid entries must be >= 3 (second moments)");
    }
  }
  if (alpha_k_pairs.empty() && (alpha_grid.empty() || k_grid.empty())) {
    throw std::invalid_argument("SimulationConfig: empty parameter grids");
  }
  for (const auto& [a, k] : cell_pairs()) {
    if (!(a > 0.0) || !(k > 0.0)) {
      throw std::invalid_argument("SimulationConfig: alpha and k must be > 0");
    }
  }
  if (x_policy == XPolicy::FixedPoint && !(fixed_x > 0.0)) {
    throw std::invalid_argument("SimulationConfig: fixed_x must be > 0");
  }
  quad.validate();
}

std::vector<std::pair<double, double>> SimulationConfig::cell_pairs() const {
  if (!alpha_k_pairs.empty()) return alpha_k_pairs;
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(alpha_grid.size() * k_grid.size());
  for (double a : alpha_grid) {
    for (double k : k_grid) pairs.emplace_back(a, k);
  }
  return pairs;
}

namespace {

double evaluate_estimator(EstimatorKind kind, const SampleData& s, double x) {
  switch (kind.target) {
    case Target::Alpha:
      return kind.tag == EstimatorTag::Mle ? mle_alpha(s) : umvue_alpha(s);
    case Target::Pdf:
      return kind.tag == EstimatorTag::Mle ? mle_pdf_at(s, x)
                                           : umvue_pdf_at(s, x);
    case Target::Cdf:
      return kind.tag == EstimatorTag::Mle ? mle_cdf_at(s, x)
                                           : umvue_cdf_at(s, x);
  }
  throw std::invalid_argument("evaluate_estimator: bad kind");
}

double true_target(EstimatorKind kind, double alpha, double k, double x) {
  const ParetoParams params(alpha, k);
  switch (kind.target) {
    case Target::Alpha: return alpha;
    case Target::Pdf: return pdf(params, x);
    case Target::Cdf: return cdf(params, x);
  }
  return 0.0;
}

}  // namespace

MomentReport brute_force_moment(EstimatorKind kind, int r, int n, double alpha,
                                double k, double x, long long reps,
                                std::uint64_t seed) {
  if (reps < 100) {
    throw std::invalid_argument("brute_force_moment: reps must be >= 100");
  }
  if (r < 1) throw std::invalid_argument("brute_force_moment: r must be >= 1");
  const int min_n = kind.tag == EstimatorTag::Umvue ? 2 : 1;
  if (n < min_n) {
    throw InsufficientSampleError("brute_force_moment: sample too small");
  }
  if (kind.target != Target::Alpha && !(x >= k)) {
    throw std::domain_error("brute_force_moment: x must be >= k");
  }
  const ParetoParams params(alpha, k);
  const double truth = std::pow(true_target(kind, alpha, k, x),
                                static_cast<double>(r));
  double sum_v = 0.0, sum_v2 = 0.0, sum_v4 = 0.0;
  double sum_d2 = 0.0, sum_d4 = 0.0;
  long long degenerate = 0;
  for (long long rep = 0; rep < reps; ++rep) {
    const SampleData s = sample(params, n, derive_seed(seed, 0, rep));
    double v;
    try {
      v = evaluate_estimator(kind, s, x);
    } catch (const DegenerateSampleError&) {
      ++degenerate;
      continue;
    }
    v = r == 1 ? v : std::pow(v, static_cast<double>(r));
    const double d = v - truth;
    sum_v += v;
    sum_v2 += v * v;
    sum_v4 += (v * v) * (v * v);
    sum_d2 += d * d;
    sum_d4 += (d * d) * (d * d);
  }
  if (degenerate * 10000 > reps) {
    throw DegenerateSampleError(
        "brute_force_moment: more than 0.01% of replications degenerate");
  }
  const double m = static_cast<double>(reps - degenerate);
  MomentReport report;
  report.engine = Engine::MonteCarlo;
  report.estimator = kind;
  if (kind.target != Target::Alpha) report.eval_x = x;
  report.mean = sum_v / m;
  report.second_moment = sum_v2 / m;
  report.variance = report.second_moment - report.mean * report.mean;
  report.bias = report.mean - truth;
  report.mse = report.variance + report.bias * report.bias;
  const double var_v = std::max(0.0, report.variance);
  const double var_v2 =
      std::max(0.0, sum_v4 / m - (sum_v2 / m) * (sum_v2 / m));
  const double var_d2 =
      std::max(0.0, sum_d4 / m - (sum_d2 / m) * (sum_d2 / m));
  report.std_error = std::sqrt(var_v / m);
  report.second_std_error = std::sqrt(var_v2 / m);
  report.mse_std_error = std::sqrt(var_d2 / m);
  return report;
}

namespace {

TableRow run_cell(const SimulationConfig& config, std::size_t cell_index,
                  int n, double alpha, double k) {
  const ParetoParams params(alpha, k);
  double sums[4] = {0, 0, 0, 0};
  double sq_sums[4] = {0, 0, 0, 0};
  long long failed = 0;
  const EstimatorKind kinds[4] = {
      {EstimatorTag::Umvue, Target::Pdf},
      {EstimatorTag::Mle, Target::Pdf},
      {EstimatorTag::Umvue, Target::Cdf},
      {EstimatorTag::Mle, Target::Cdf},
  };
  for (long long rep = 0; rep < config.reps; ++rep) {
    const std::uint64_t rep_seed = derive_seed(config.seed, cell_index, rep);
    const double x = config.x_policy == XPolicy::FixedPoint
                         ? config.fixed_x
                         : quantile(params, uniform01(rep_seed, 0));
    double values[4];
    try {
      for (int i = 0; i < 4; ++i) {
        values[i] =
            config.engine_for_per_rep_mse == PerRepEngine::Quadrature
                ? mse_via_quadrature(kinds[i], n, alpha, k, x, config.quad).mse
                : (kinds[i].target == Target::Pdf
                       ? (kinds[i].tag == EstimatorTag::Umvue
                              ? mse_umvue_pdf(n, alpha, k, x).mse
                              : mse_mle_pdf(n, alpha, k, x).mse)
                       : (kinds[i].tag == EstimatorTag::Umvue
                              ? mse_umvue_cdf(n, alpha, k, x).mse
                              : mse_mle_cdf(n, alpha, k, x).mse));
      }
    } catch (const QuadratureAccuracyError&) {
      ++failed;
      continue;
    }
    for (int i = 0; i < 4; ++i) {
      sums[i] += values[i];
      sq_sums[i] += values[i] * values[i];
    }
  }
  TableRow row;
  row.n = n;
  row.alpha = alpha;
  row.k = k;
  row.failed_reps = failed;
  const double m = static_cast<double>(config.reps - failed);
  double means[4], ses[4];
  for (int i = 0; i < 4; ++i) {
    means[i] = m > 0 ? sums[i] / m : 0.0;
    const double var = m > 1 ? std::max(0.0, (sq_sums[i] - m * means[i] * means[i]) / (m - 1.0))
                             : 0.0;
    ses[i] = m > 0 ? std::sqrt(var / m) : 0.0;
  }
  row.mse_umvue_pdf = means[0];
  row.mse_mle_pdf = means[1];
  row.mse_umvue_cdf = means[2];
  row.mse_mle_cdf = means[3];
  row.std_errors = {ses[0], ses[1], ses[2], ses[3]};
  return row;
}

}  // namespace

std::vector<TableRow> simulate_table(const SimulationConfig& config) {
  config.validate();
  const auto pairs = config.cell_pairs();
  struct Cell {
    std::size_t index;
    int n;
    double alpha, k;
  };
  std::vector<Cell> cells;
  std::size_t idx = 0;
  for (int n : config.n_grid) {
    for (const auto& [a, k] : pairs) {
      cells.push_back(Cell{idx++, n, a, k});
    }
  }
  std::vector<TableRow> rows(cells.size());
  unsigned threads = config.max_threads > 0
                         ? static_cast<unsigned>(config.max_threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, cells.size());
  if (threads <= 1) {
    for (const Cell& c : cells) {
      rows[c.index] = run_cell(config, c.index, c.n, c.alpha, c.k);
    }
    return rows;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    futures.push_back(std::async(std::launch::async, [&, t]() {
      for (std::size_t i = t; i < cells.size(); i += threads) {
        const Cell& c = cells[i];
        rows[c.index] = run_cell(config, c.index, c.n, c.alpha, c.k);
      }
    }));
  }
  for (auto& f : futures) f.get();
  return rows;
}

EfficiencySummary efficiency_report(const std::vector<TableRow>& rows,
                                    long long alpha_mc_reps,
                                    std::uint64_t seed) {
  if (rows.empty()) {
    throw std::invalid_argument("efficiency_report: rows must be nonempty");
  }
  EfficiencySummary summary;
  summary.total_cells = static_cast<int>(rows.size());
  std::set<std::pair<int, double>> alpha_keys;
  for (const TableRow& row : rows) {
    EfficiencyCell cell;
    cell.n = row.n;
    cell.alpha = row.alpha;
    cell.k = row.k;
    cell.pdf_ratio = row.mse_mle_pdf / row.mse_umvue_pdf;
    cell.cdf_ratio = row.mse_mle_cdf / row.mse_umvue_cdf;
    if (cell.pdf_ratio < 1.0) ++summary.pdf_mle_wins;
    if (cell.cdf_ratio < 1.0) ++summary.cdf_mle_wins;
    summary.cells.push_back(cell);
    alpha_keys.insert({row.n, row.alpha});
  }
  if (alpha_mc_reps >= 100) {
    std::size_t i = 0;
    for (const auto& [n, alpha] : alpha_keys) {
      AlphaComparison cmp;
      cmp.n = n;
      cmp.alpha = alpha;
      cmp.mse_mle_closed = mle_alpha_moments(n, alpha).mse;
      // alpha estimators are scale-free, so k = 1 loses nothing
      cmp.mse_umvue_mc =
          brute_force_moment(EstimatorKind{EstimatorTag::Umvue, Target::Alpha},
                             1, n, alpha, 1.0, 1.0, alpha_mc_reps,
                             derive_seed(seed, 0x0A11, i++))
              .mse;
      cmp.umvue_better = cmp.mse_umvue_mc < cmp.mse_mle_closed;
      summary.alpha_rows.push_back(cmp);
    }
  }
  return summary;
}

}  // namespace paretoest

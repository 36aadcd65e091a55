#ifndef PARETOEST_MC_HARNESS_HPP
#define PARETOEST_MC_HARNESS_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "paretoest/exact_moments.hpp"
#include "paretoest/quadrature.hpp"

namespace paretoest {

enum class XPolicy { FirstObservation, FixedPoint };
enum class PerRepEngine { ClosedForm, Quadrature };

/// Replication design for simulate_table. alpha_k_pairs, when nonempty,
/// overrides the alpha_grid x k_grid cross product (the paper's tables pair
/// the two grids column-wise rather than crossing them).
struct SimulationConfig {
  long long reps = 1000;
  std::vector<int> n_grid;
  std::vector<double> alpha_grid;
  std::vector<double> k_grid;
  std::vector<std::pair<double, double>> alpha_k_pairs;
  std::uint64_t seed = 0;
  XPolicy x_policy = XPolicy::FirstObservation;
  double fixed_x = 0.0;  // used when x_policy == FixedPoint
  PerRepEngine engine_for_per_rep_mse = PerRepEngine::Quadrature;
  QuadratureConfig quad = table_quadrature_defaults();
  int max_threads = 0;  // 0 = hardware concurrency

  static QuadratureConfig table_quadrature_defaults() {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-8;  // far below Monte Carlo noise at any sane rep count
    return cfg;
  }

  void validate() const;
  std::vector<std::pair<double, double>> cell_pairs() const;
};

/// One (n, alpha, k) cell of the efficiency tables: averaged per-point MSEs
/// of the four density/distribution estimators with their standard errors
/// (ordered as the mse fields).
struct TableRow {
  int n = 0;
  double alpha = 0.0;
  double k = 0.0;
  double mse_umvue_pdf = 0.0;
  double mse_mle_pdf = 0.0;
  double mse_umvue_cdf = 0.0;
  double mse_mle_cdf = 0.0;
  std::array<double, 4> std_errors{};
  long long failed_reps = 0;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Empirical moments of estimator^r at x over `reps` independent seeded
/// samples. Deterministic for a fixed seed. Degenerate samples (S = 0) are
/// excluded when rarer than 0.01% of reps, otherwise an error is thrown.
MomentReport brute_force_moment(EstimatorKind kind, int r, int n, double alpha,
                                double k, double x, long long reps,
                                std::uint64_t seed);

/// The tables protocol: per replication draw a fresh sample, take x per the
/// x-policy, evaluate the four per-point MSEs analytically with the
/// configured engine, and average over replications. Cells run in parallel;
/// rows are a pure function of the config.
std::vector<TableRow> simulate_table(const SimulationConfig& config);

struct EfficiencyCell {
  int n;
  double alpha;
  double k;
  double pdf_ratio;  // mse_mle_pdf / mse_umvue_pdf
  double cdf_ratio;
};

struct AlphaComparison {
  int n;
  double alpha;
  double mse_mle_closed;
  double mse_umvue_mc;
  bool umvue_better;
};

struct EfficiencySummary {
  std::vector<EfficiencyCell> cells;
  int pdf_mle_wins = 0;
  int cdf_mle_wins = 0;
  int total_cells = 0;
  std::vector<AlphaComparison> alpha_rows;
};

/// Per-cell MLE/UMVUE MSE ratios plus the alpha-estimator comparison
/// (closed-form MLE MSE vs Monte Carlo UMVUE MSE at each distinct (n, alpha)).
EfficiencySummary efficiency_report(const std::vector<TableRow>& rows,
                                    long long alpha_mc_reps = 10000,
                                    std::uint64_t seed = 0);

}  // namespace paretoest

#endif  // PARETOEST_MC_HARNESS_HPP

#ifndef PARETOEST_QUADRATURE_ORACLE_HPP
#define PARETOEST_QUADRATURE_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "paretoest/exact_moments.hpp"
#include "paretoest/quadrature.hpp"

namespace paretoest {

struct OracleMoment {
  double value = 0.0;
  double error_estimate = 0.0;  // achieved absolute-error estimate
};

/// E[statistic(W)^r] against the exact MLE sampling density g(w), with
/// statistic(w) in {w k^w / x^(w+1), 1 - (k/x)^w, w}. Integrates the full
/// original integrand (never a truncated series).
OracleMoment moment_mle(Target statistic, int r, int n, double alpha, double k,
                        double x, const QuadratureConfig& cfg);

/// E[statistic^r] for the UMVUE estimators against h*(t), integrated over
/// z = ln t - n ln k with the support split at z = ln(x/k).
OracleMoment moment_umvue(Target statistic, int r, int n, double alpha,
                          double k, double x, const QuadratureConfig& cfg);

/// Mean / second / variance / bias / MSE assembled from r=1 and r=2
/// quadrature moments; engine tag Quadrature.
MomentReport mse_via_quadrature(EstimatorKind kind, int n, double alpha,
                                double k, double x,
                                const QuadratureConfig& cfg);

/// One adjudication row: closed-form value vs quadrature oracle vs (where
/// defined) the exact Bessel/Kummer representation, all for the MSE.
struct DeviationRow {
  int n = 0;
  double alpha = 0.0;
  double k = 0.0;
  std::optional<double> x;  // absent for the alpha summary row
  EstimatorKind kind{EstimatorTag::Mle, Target::Alpha};
  double closed = 0.0;
  double quadrature = 0.0;
  std::optional<double> exact_special;
  double rel_deviation = 0.0;
  std::string flag = "ok";

  friend bool operator==(const DeviationRow&, const DeviationRow&) = default;
};

/// |x_grid| x 4 estimator/target rows plus one alpha row.
/// rel_deviation = |closed - quadrature| / max(|quadrature|, cfg.abs_tol).
std::vector<DeviationRow> deviation_report(int n, double alpha, double k,
                                           const std::vector<double>& x_grid,
                                           const QuadratureConfig& cfg);

}  // namespace paretoest

#endif  // PARETOEST_QUADRATURE_ORACLE_HPP

#ifndef PARETOEST_PARETO_MODEL_HPP
#define PARETOEST_PARETO_MODEL_HPP

#include <cstdint>
#include <vector>

namespace paretoest {

/// Pareto(alpha; k) with known scale k: density alpha k^alpha / x^(alpha+1)
/// on [k, inf).
struct ParetoParams {
  double alpha;  // shape, > 0
  double k;      // known scale / support minimum, > 0

  ParetoParams(double alpha_, double k_);
};

/// An i.i.d. sample with its cached sufficient statistics. Immutable after
/// construction; s_stat() = sum ln(x_i / k_ref), log_t() = sum ln x_i.
class SampleData {
 public:
  static SampleData from_values(std::vector<double> values, double k_ref);

  const std::vector<double>& values() const noexcept { return values_; }
  int n() const noexcept { return static_cast<int>(values_.size()); }
  double k_ref() const noexcept { return k_ref_; }
  double s_stat() const noexcept { return s_stat_; }
  double log_t() const noexcept { return log_t_; }

 private:
  SampleData(std::vector<double> values, double k_ref, double s_stat);

  std::vector<double> values_;
  double k_ref_;
  double s_stat_;
  double log_t_;
};

/// 0 below k, alpha k^alpha / x^(alpha+1) otherwise.
double pdf(const ParetoParams& params, double x) noexcept;

/// 0 below k, 1 - (k/x)^alpha otherwise.
double cdf(const ParetoParams& params, double x) noexcept;

/// Inverse CDF, k (1-u)^(-1/alpha); u must lie in [0, 1).
double quantile(const ParetoParams& params, double u);

/// n inverse-CDF draws from the deterministic uniform stream of `seed`.
SampleData sample(const ParetoParams& params, int n, std::uint64_t seed);

}  // namespace paretoest

#endif  // PARETOEST_PARETO_MODEL_HPP

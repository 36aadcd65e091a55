#include "paretoest/pareto_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "paretoest/rng.hpp"

namespace paretoest {

ParetoParams::ParetoParams(double alpha_, double k_) : alpha(alpha_), k(k_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("ParetoParams: alpha must be finite and > 0, got " +
                            std::to_string(alpha_));
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::domain_error("ParetoParams: k must be finite and > 0, got " +
                            std::to_string(k_));
  }
}

SampleData::SampleData(std::vector<double> values, double k_ref, double s_stat)
    : values_(std::move(values)),
      k_ref_(k_ref),
      s_stat_(s_stat),
      log_t_(s_stat + static_cast<double>(values_.size()) * std::log(k_ref)) {}

SampleData SampleData::from_values(std::vector<double> values, double k_ref) {
  if (values.empty()) {
    throw std::domain_error("SampleData: need at least one observation");
  }
  if (!(k_ref > 0.0) || !std::isfinite(k_ref)) {
    throw std::domain_error("SampleData: k_ref must be finite and > 0");
  }
  double s = 0.0;
  for (double v : values) {
    if (!(v >= k_ref) || !std::isfinite(v)) {
      throw std::domain_error("SampleData: every observation must be >= k_ref");
    }
    s += std::log(v / k_ref);
  }
  return SampleData(std::move(values), k_ref, s);
}

double pdf(const ParetoParams& params, double x) noexcept {
  if (x < params.k || std::isinf(x)) return 0.0;
  return params.alpha * std::pow(params.k, params.alpha) /
         std::pow(x, params.alpha + 1.0);
}

double cdf(const ParetoParams& params, double x) noexcept {
  if (x < params.k) return 0.0;
  return -std::expm1(params.alpha * std::log(params.k / x));
}

double quantile(const ParetoParams& params, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::domain_error("quantile: u must lie in [0, 1), got " +
                            std::to_string(u));
  }
  return params.k * std::pow(1.0 - u, -1.0 / params.alpha);
}

SampleData sample(const ParetoParams& params, int n, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample: n must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] =
        quantile(params, uniform01(seed, static_cast<std::uint64_t>(i)));
  }
  return SampleData::from_values(std::move(values), params.k);
}

}  // namespace paretoest

#include "paretoest/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "paretoest/errors.hpp"

namespace paretoest {

std::string to_string(EstimatorTag tag) {
  return tag == EstimatorTag::Mle ? "mle" : "umvue";
}

std::string to_string(Target target) {
  switch (target) {
    case Target::Alpha: return "alpha";
    case Target::Pdf: return "pdf";
    case Target::Cdf: return "cdf";
  }
  return "?";
}

double mle_alpha(const SampleData& sample) {
  if (!(sample.s_stat() > 0.0)) {
    throw DegenerateSampleError(
        "mle_alpha: all observations equal k, likelihood unbounded");
  }
  return static_cast<double>(sample.n()) / sample.s_stat();
}

double umvue_alpha(const SampleData& sample) {
  if (sample.n() < 2) {
    throw InsufficientSampleError("umvue_alpha: need n >= 2");
  }
  if (!(sample.s_stat() > 0.0)) {
    throw DegenerateSampleError("umvue_alpha: all observations equal k");
  }
  return static_cast<double>(sample.n() - 1) / sample.s_stat();
}

namespace {

void require_in_support(const SampleData& sample, double x, const char* who) {
  if (!(x >= sample.k_ref())) {
    throw std::domain_error(std::string(who) + ": x must be >= k");
  }
}

}  // namespace

double mle_pdf_at(const SampleData& sample, double x) {
  require_in_support(sample, x, "mle_pdf_at");
  const double a = mle_alpha(sample);
  // a k^a / x^(a+1), evaluated as exp(log) so huge a-hat cannot overflow.
  return std::exp(std::log(a) + a * std::log(sample.k_ref() / x) - std::log(x));
}

double mle_cdf_at(const SampleData& sample, double x) {
  require_in_support(sample, x, "mle_cdf_at");
  const double a = mle_alpha(sample);
  return -std::expm1(a * std::log(sample.k_ref() / x));
}

double umvue_pdf_at(const SampleData& sample, double x) {
  const int n = sample.n();
  if (n < 2) throw InsufficientSampleError("umvue_pdf_at: need n >= 2");
  if (x < sample.k_ref()) return 0.0;
  const double s = sample.s_stat();
  const double c = std::log(x / sample.k_ref());
  if (c >= s) return 0.0;  // at/beyond t k^(1-n)
  return std::exp(std::log(n - 1.0) + (n - 2.0) * std::log(s - c) -
                  std::log(x) - (n - 1.0) * std::log(s));
}

double umvue_cdf_at(const SampleData& sample, double x) {
  const int n = sample.n();
  if (n < 2) throw InsufficientSampleError("umvue_cdf_at: need n >= 2");
  if (x < sample.k_ref()) return 0.0;
  const double s = sample.s_stat();
  const double c = std::log(x / sample.k_ref());
  if (c >= s) return 1.0;
  return -std::expm1((n - 1.0) * std::log1p(-c / s));
}

}  // namespace paretoest

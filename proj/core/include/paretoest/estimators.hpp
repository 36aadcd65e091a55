#ifndef PARETOEST_ESTIMATORS_HPP
#define PARETOEST_ESTIMATORS_HPP

#include <string>

#include "paretoest/pareto_model.hpp"

namespace paretoest {

enum class EstimatorTag { Mle, Umvue };
enum class Target { Alpha, Pdf, Cdf };

/// Which of the six point estimators is meant: {MLE, UMVUE} x {alpha, f, F}.
struct EstimatorKind {
  EstimatorTag tag;
  Target target;

  friend bool operator==(const EstimatorKind&, const EstimatorKind&) = default;
};

std::string to_string(EstimatorTag tag);
std::string to_string(Target target);

/// n / sum ln(x_i/k). Throws DegenerateSampleError when S = 0.
double mle_alpha(const SampleData& sample);

/// (n-1) / sum ln(x_i/k); unbiased for alpha. Needs n >= 2.
double umvue_alpha(const SampleData& sample);

/// Plug-in density estimate at x >= k.
double mle_pdf_at(const SampleData& sample, double x);

/// Plug-in distribution estimate at x >= k.
double mle_cdf_at(const SampleData& sample, double x);

/// Unbiased density estimate; positive on [k, t k^(1-n)), zero beyond.
double umvue_pdf_at(const SampleData& sample, double x);

/// Unbiased distribution estimate; 0 below k, 1 beyond t k^(1-n).
double umvue_cdf_at(const SampleData& sample, double x);

}  // namespace paretoest

#endif  // PARETOEST_ESTIMATORS_HPP

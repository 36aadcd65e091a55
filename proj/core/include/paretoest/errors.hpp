#ifndef PARETOEST_ERRORS_HPP
#define PARETOEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace paretoest {

/// All observations equal the scale minimum, so S = 0 and the
/// log-likelihood has no interior maximum.
class DegenerateSampleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested estimator needs more observations than the sample holds.
class InsufficientSampleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested moment does not exist (diverging integral).
class MomentNotDefinedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive integration ran out of subdivisions before reaching the
/// requested tolerance. Carries the best estimate obtained so far.
class QuadratureAccuracyError : public std::runtime_error {
 public:
  QuadratureAccuracyError(const std::string& what, double best_estimate,
                          double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace paretoest

#endif  // PARETOEST_ERRORS_HPP

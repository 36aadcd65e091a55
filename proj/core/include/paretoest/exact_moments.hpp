#ifndef PARETOEST_EXACT_MOMENTS_HPP
#define PARETOEST_EXACT_MOMENTS_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "paretoest/estimators.hpp"

namespace paretoest {

enum class Engine { ClosedForm, Quadrature, MonteCarlo, BesselExact, KummerExact };

std::string to_string(Engine engine);

/// Mean / second moment / variance / bias / MSE of one estimator at one
/// evaluation point, tagged with the engine that produced it. The three
/// std-error fields are populated by the Monte Carlo engine only.
struct MomentReport {
  Engine engine = Engine::ClosedForm;
  EstimatorKind estimator{EstimatorTag::Mle, Target::Alpha};
  std::optional<double> eval_x;  // absent for Target::Alpha
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double bias = 0.0;
  double mse = 0.0;
  std::optional<double> std_error;         // SE of the mean
  std::optional<double> second_std_error;  // SE of the second moment
  std::optional<double> mse_std_error;     // SE of the MSE
};

/// Signed accumulator in the log domain for alternating series: positive
/// and negative magnitudes are log-sum-exp'ed separately and cancelled
/// once at finalization, so intermediate terms may exceed double range.
class SignedLogSum {
 public:
  void add(int sign, double log_magnitude);
  void add_value(double v);
  double value() const;

 private:
  static double log_add(double a, double b);

  double log_pos_ = -std::numeric_limits<double>::infinity();
  double log_neg_ = -std::numeric_limits<double>::infinity();
};

// --- sampling densities -------------------------------------------------

/// Density of the MLE w = alpha-tilde: (alpha n)^n / (Gamma(n) w^(n+1))
/// exp(-alpha n / w) on w > 0.
double g_density(double w, int n, double alpha);

/// Density of t = prod x_i at log(t): alpha^n k^(n alpha) / (n-1)!
/// t^(-alpha-1) [ln t - n ln k]^(n-1) on t >= k^n; log-t input avoids
/// overflow of t itself for large n.
double h_star_density_log_t(double log_t, int n, double alpha, double k);

/// Same density with t given directly.
double h_star_density(double t, int n, double alpha, double k);

// --- alpha-tilde moments (exact) ----------------------------------------

/// E = alpha n/(n-1), E^2 = (alpha n)^2/((n-1)(n-2)),
/// MSE = alpha^2 (n^2+n-2)/((n-1)^2 (n-2)); needs n >= 3.
MomentReport mle_alpha_moments(int n, double alpha);

// --- series building blocks ----------------------------------------------

/// int_a^inf z^(m-1) e^(-rate z) dz for integer m >= 1 (finite-sum form).
double upper_incomplete_gamma_int(int m, double rate, double a);

// --- truncated closed-form series ----------------------------------------
// Index limits keep every Gamma argument >= 1 (printed limits in excess of
// that are treated as typos); for x > k the dropped non-elementary tail
// makes these approximations whose gap the quadrature oracle measures.

double e_mle_pdf(int n, double alpha, double k, double x);   // j <= n-2
double e_mle_cdf(int n, double alpha, double k, double x);   // j <= n-1

MomentReport mse_mle_pdf(int n, double alpha, double k, double x);
MomentReport mse_mle_cdf(int n, double alpha, double k, double x);
MomentReport mse_umvue_pdf(int n, double alpha, double k, double x);
MomentReport mse_umvue_cdf(int n, double alpha, double k, double x);

double rth_moment_mle_pdf(int n, double alpha, double k, double x, int r);
double rth_moment_mle_cdf(int n, double alpha, double k, double x, int r);
double rth_moment_umvue_pdf(int n, double alpha, double k, double x, int r);
double rth_moment_umvue_cdf(int n, double alpha, double k, double x, int r);

// --- exact special-function representations ------------------------------

/// Modified Bessel K_nu(z) via int_0^inf e^(-z cosh t) cosh(nu t) dt.
double bessel_k_nu(double nu, double z);
double log_bessel_k_nu(double nu, double z);

/// U(a, b, c) = 1/Gamma(a) int_0^inf t^(a-1) (1+t)^(b-a-1) e^(-c t) dt.
double kummer_u(double a, double b, double c);
double log_kummer_u(double a, double b, double c);

/// Exact E(f-tilde^r(x)) through the Bessel-K representation of the
/// Laplace-type core E[W^r e^(-r c W)], c = ln(x/k). At x = k falls back
/// to the inverse-gamma moment (needs n > r there).
double exact_mle_moment_bessel(int n, double alpha, double k, double x, int r);

/// Exact E(F-tilde^r(x)) by binomial expansion into K_n Laplace cores.
double exact_mle_cdf_moment_bessel(int n, double alpha, double k, double x,
                                   int r);

/// Exact E(f-hat^2(x)) = (n-1) alpha^n / (x^2 (n-2)!) c^(n-2) e^(-alpha c)
/// Gamma(2n-3) U(2n-3, n-1, alpha c); at x = k returns the collapse value.
double exact_umvue_pdf_second_moment_kummer(int n, double alpha, double k,
                                            double x);

/// MomentReport assembled from the exact special-function engines.
MomentReport mse_mle_pdf_bessel(int n, double alpha, double k, double x);
MomentReport mse_mle_cdf_bessel(int n, double alpha, double k, double x);
MomentReport mse_umvue_pdf_kummer(int n, double alpha, double k, double x);

}  // namespace paretoest

#endif  // PARETOEST_EXACT_MOMENTS_HPP

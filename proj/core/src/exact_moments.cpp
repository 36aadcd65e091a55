#include "paretoest/exact_moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "paretoest/errors.hpp"
#include "paretoest/quadrature.hpp"

namespace paretoest {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lg(double x) { return std::lgamma(x); }

/// log C(m, j) for real m >= j >= 0.
double log_choose(double m, int j) {
  if (j == 0) return 0.0;
  return lg(m + 1.0) - lg(static_cast<double>(j) + 1.0) - lg(m - j + 1.0);
}

void require_x_at_least_k(double x, double k, const char* who) {
  if (!(x >= k)) throw std::domain_error(std::string(who) + ": x must be >= k");
}

void require_positive_params(double alpha, double k, const char* who) {
  if (!(alpha > 0.0) || !(k > 0.0)) {
    throw std::domain_error(std::string(who) + ": alpha and k must be > 0");
  }
}

MomentReport assemble(Engine engine, EstimatorKind kind,
                      std::optional<double> x, double mean, double second,
                      double target) {
  MomentReport r;
  r.engine = engine;
  r.estimator = kind;
  r.eval_x = x;
  r.mean = mean;
  r.second_moment = second;
  r.variance = second - mean * mean;
  r.bias = mean - target;
  r.mse = r.variance + r.bias * r.bias;
  return r;
}

}  // namespace

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::ClosedForm: return "closed";
    case Engine::Quadrature: return "quadrature";
    case Engine::MonteCarlo: return "mc";
    case Engine::BesselExact: return "bessel";
    case Engine::KummerExact: return "kummer";
  }
  return "?";
}

// --- SignedLogSum ---------------------------------------------------------

double SignedLogSum::log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

void SignedLogSum::add(int sign, double log_magnitude) {
  if (sign == 0 || log_magnitude == kNegInf) return;
  if (sign > 0) {
    log_pos_ = log_add(log_pos_, log_magnitude);
  } else {
    log_neg_ = log_add(log_neg_, log_magnitude);
  }
}

void SignedLogSum::add_value(double v) {
  if (v == 0.0) return;
  add(v > 0.0 ? 1 : -1, std::log(std::fabs(v)));
}

double SignedLogSum::value() const {
  if (log_pos_ == kNegInf && log_neg_ == kNegInf) return 0.0;
  if (log_pos_ >= log_neg_) {
    if (log_neg_ == kNegInf) return std::exp(log_pos_);
    return std::exp(log_pos_ + std::log1p(-std::exp(log_neg_ - log_pos_)));
  }
  if (log_pos_ == kNegInf) return -std::exp(log_neg_);
  return -std::exp(log_neg_ + std::log1p(-std::exp(log_pos_ - log_neg_)));
}

// --- sampling densities ----------------------------------------------------

double g_density(double w, int n, double alpha) {
  if (n < 1) throw std::domain_error("g_density: n must be >= 1");
  require_positive_params(alpha, 1.0, "g_density");
  if (!(w > 0.0)) return 0.0;
  const double an = alpha * n;
  return std::exp(n * std::log(an) - lg(n) - (n + 1.0) * std::log(w) - an / w);
}

double h_star_density_log_t(double log_t, int n, double alpha, double k) {
  if (n < 2) throw std::domain_error("h_star_density: n must be >= 2");
  require_positive_params(alpha, k, "h_star_density");
  const double z = log_t - n * std::log(k);
  if (!(z > 0.0)) return 0.0;
  return std::exp(n * std::log(alpha) + n * alpha * std::log(k) -
                  (alpha + 1.0) * log_t + (n - 1.0) * std::log(z) - lg(n));
}

double h_star_density(double t, int n, double alpha, double k) {
  if (!(t > 0.0)) return 0.0;
  return h_star_density_log_t(std::log(t), n, alpha, k);
}

// --- alpha-tilde moments ----------------------------------------------------

MomentReport mle_alpha_moments(int n, double alpha) {
  require_positive_params(alpha, 1.0, "mle_alpha_moments");
  if (n <= 2) {
    throw MomentNotDefinedError(
        "mle_alpha_moments: E(alpha-tilde^2) requires n > 2");
  }
  const double an = alpha * n;
  const double mean = an / (n - 1.0);
  const double second = an * an / ((n - 1.0) * (n - 2.0));
  return assemble(Engine::ClosedForm,
                  EstimatorKind{EstimatorTag::Mle, Target::Alpha}, std::nullopt,
                  mean, second, alpha);
}

// --- incomplete gamma --------------------------------------------------------

double upper_incomplete_gamma_int(int m, double rate, double a) {
  if (m < 1) {
    throw std::domain_error("upper_incomplete_gamma_int: m must be >= 1");
  }
  if (!(rate > 0.0) || !(a >= 0.0)) {
    throw std::domain_error(
        "upper_incomplete_gamma_int: need rate > 0 and a >= 0");
  }
  const double base = lg(m) - m * std::log(rate);
  if (a == 0.0) return std::exp(base);
  // e^(-rate a) sum_{i<m} (rate a)^i / i!  (Poisson tail), in log domain
  const double ra = rate * a;
  double log_sum = kNegInf;
  for (int i = 0; i < m; ++i) {
    const double term = i * std::log(ra) - lg(i + 1.0);
    const double hi = std::max(log_sum, term), lo = std::min(log_sum, term);
    log_sum = (lo == kNegInf) ? hi : hi + std::log1p(std::exp(lo - hi));
  }
  return std::exp(base - ra + log_sum);
}

// --- MLE-side truncated series ----------------------------------------------

namespace {

/// sum_{j=0}^{jmax} r^j (ln(k/x))^j / j! * Gamma(n-r-j) (alpha n)^(j+r)
/// / (Gamma(n) x^r); shared by Eq. (5) (r=1) and Eq. (14).
double mle_pdf_moment_series(int n, double alpha, double k, double x, int r) {
  const double an = alpha * n;
  const double c = std::log(x / k);  // >= 0
  const int jmax = n - r - 1;
  const double base = -lg(n) - r * std::log(x);
  SignedLogSum sum;
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0 && c == 0.0) break;
    const double log_mag = base + (j + r) * std::log(an) + lg(n - r - j) -
                           lg(j + 1.0) +
                           (j > 0 ? j * (std::log(r) + std::log(c)) : 0.0);
    sum.add(j % 2 == 0 ? 1 : -1, log_mag);  // (ln(k/x))^j = (-c)^j
  }
  return sum.value();
}

/// SeriesC(j) = 1/Gamma(n) sum_{i=0}^{n-1} (alpha n)^i Gamma(n-i)/i! (-jc)^i,
/// the truncated series for E[e^(-j c W)].
double laplace_core_series(int n, double alpha, double c, int j) {
  if (j == 0 || c == 0.0) return 1.0;
  const double an = alpha * n;
  SignedLogSum sum;
  for (int i = 0; i <= n - 1; ++i) {
    const double log_mag = -lg(n) + i * std::log(an) + lg(n - i) -
                           lg(i + 1.0) +
                           (i > 0 ? i * std::log(j * c) : 0.0);
    sum.add(i % 2 == 0 ? 1 : -1, log_mag);
  }
  return sum.value();
}

}  // namespace

double e_mle_pdf(int n, double alpha, double k, double x) {
  require_positive_params(alpha, k, "e_mle_pdf");
  require_x_at_least_k(x, k, "e_mle_pdf");
  if (n < 2) throw MomentNotDefinedError("e_mle_pdf: needs n >= 2");
  return mle_pdf_moment_series(n, alpha, k, x, 1);
}

double e_mle_cdf(int n, double alpha, double k, double x) {
  require_positive_params(alpha, k, "e_mle_cdf");
  require_x_at_least_k(x, k, "e_mle_cdf");
  if (n < 1) throw MomentNotDefinedError("e_mle_cdf: needs n >= 1");
  return 1.0 - laplace_core_series(n, alpha, std::log(x / k), 1);
}

double rth_moment_mle_pdf(int n, double alpha, double k, double x, int r) {
  require_positive_params(alpha, k, "rth_moment_mle_pdf");
  require_x_at_least_k(x, k, "rth_moment_mle_pdf");
  if (r < 1) throw std::domain_error("rth_moment_mle_pdf: r must be >= 1");
  if (n <= r) {
    throw MomentNotDefinedError("rth_moment_mle_pdf: needs n >= r + 1");
  }
  return mle_pdf_moment_series(n, alpha, k, x, r);
}

double rth_moment_mle_cdf(int n, double alpha, double k, double x, int r) {
  require_positive_params(alpha, k, "rth_moment_mle_cdf");
  require_x_at_least_k(x, k, "rth_moment_mle_cdf");
  if (n < 1 || r < 1) {
    throw std::domain_error("rth_moment_mle_cdf: needs n >= 1 and r >= 1");
  }
  const double c = std::log(x / k);
  SignedLogSum sum;
  for (int j = 0; j <= r; ++j) {
    const double series = laplace_core_series(n, alpha, c, j);
    const double signed_term = (j % 2 == 0 ? 1.0 : -1.0) * series;
    const double binom = std::exp(log_choose(r, j));
    sum.add_value(binom * signed_term);
  }
  return sum.value();
}

MomentReport mse_mle_pdf(int n, double alpha, double k, double x) {
  require_positive_params(alpha, k, "mse_mle_pdf");
  require_x_at_least_k(x, k, "mse_mle_pdf");
  if (n <= 2) throw MomentNotDefinedError("mse_mle_pdf: needs n >= 3");
  const double mean = mle_pdf_moment_series(n, alpha, k, x, 1);
  const double second = mle_pdf_moment_series(n, alpha, k, x, 2);
  const double fx = pdf(ParetoParams(alpha, k), x);
  return assemble(Engine::ClosedForm,
                  EstimatorKind{EstimatorTag::Mle, Target::Pdf}, x, mean,
                  second, fx);
}

MomentReport mse_mle_cdf(int n, double alpha, double k, double x) {
  require_positive_params(alpha, k, "mse_mle_cdf");
  require_x_at_least_k(x, k, "mse_mle_cdf");
  if (n < 1) throw MomentNotDefinedError("mse_mle_cdf: needs n >= 1");
  const double c = std::log(x / k);
  const double lap1 = laplace_core_series(n, alpha, c, 1);
  const double lap2 = laplace_core_series(n, alpha, c, 2);
  const double mean = 1.0 - lap1;
  const double second = 1.0 - 2.0 * lap1 + lap2;
  const double Fx = cdf(ParetoParams(alpha, k), x);
  return assemble(Engine::ClosedForm,
                  EstimatorKind{EstimatorTag::Mle, Target::Cdf}, x, mean,
                  second, Fx);
}

// --- UMVUE-side truncated series ---------------------------------------------

double rth_moment_umvue_pdf(int n, double alpha, double k, double x, int r) {
  require_positive_params(alpha, k, "rth_moment_umvue_pdf");
  require_x_at_least_k(x, k, "rth_moment_umvue_pdf");
  if (r < 1) throw std::domain_error("rth_moment_umvue_pdf: r must be >= 1");
  if (n <= r) {
    throw MomentNotDefinedError("rth_moment_umvue_pdf: needs n >= r + 1");
  }
  const double c = std::log(x / k);
  const double base = r * std::log(n - 1.0) + r * std::log(alpha) +
                      alpha * std::log(k) - (alpha + r) * std::log(x) - lg(n);
  const double m_binom = static_cast<double>(r) * (n - 2);
  SignedLogSum sum;
  for (int j = 0; j <= n - r - 1; ++j) {
    if (j > 0 && c == 0.0) break;
    const double outer = base + log_choose(m_binom, j) +
                         (j > 0 ? j * (std::log(alpha) + std::log(c)) : 0.0) +
                         lg(n - r - j);
    for (int i = 0; i <= n - r - j - 1; ++i) {
      if (i > 0 && c == 0.0) break;
      const double log_mag =
          outer + (i > 0 ? i * (std::log(alpha) + std::log(c)) : 0.0) -
          lg(i + 1.0);
      sum.add(j % 2 == 0 ? 1 : -1, log_mag);  // (-ln(x/k))^j alternates
    }
  }
  return sum.value();
}

double rth_moment_umvue_cdf(int n, double alpha, double k, double x, int r) {
  require_positive_params(alpha, k, "rth_moment_umvue_cdf");
  require_x_at_least_k(x, k, "rth_moment_umvue_cdf");
  if (n < 2) throw InsufficientSampleError("rth_moment_umvue_cdf: needs n >= 2");
  if (r < 1) throw std::domain_error("rth_moment_umvue_cdf: r must be >= 1");
  const double c = std::log(x / k);
  if (c == 0.0) return 0.0;  // F-hat(k) = 0 a.s.
  const double ac = alpha * c;
  const double base = -ac - lg(n);  // (k/x)^alpha / (n-1)!
  SignedLogSum sum;
  for (int j = 0; j <= r; ++j) {
    const double m_binom = static_cast<double>(j) * (n - 1);
    const int imax = std::min<long long>(static_cast<long long>(j) * (n - 1),
                                         n - 1);
    const double jsign = (j % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i <= imax; ++i) {
      const double mid = base + log_choose(r, j) + log_choose(m_binom, i) +
                         (i > 0 ? i * std::log(ac) : 0.0) + lg(n - i);
      for (int l = 0; l <= n - i - 1; ++l) {
        const double log_mag =
            mid + (l > 0 ? l * std::log(ac) : 0.0) - lg(l + 1.0);
        const double sign = jsign * ((i % 2 == 0) ? 1.0 : -1.0);
        sum.add(sign > 0 ? 1 : -1, log_mag);
      }
    }
  }
  // closing term: 1 - e^(-alpha c) sum_{i<n} (alpha c)^i / i!
  double log_tail = kNegInf;
  for (int i = 0; i < n; ++i) {
    const double term = i * std::log(ac) - lg(i + 1.0);
    const double hi = std::max(log_tail, term), lo = std::min(log_tail, term);
    log_tail = (lo == kNegInf) ? hi : hi + std::log1p(std::exp(lo - hi));
  }
  sum.add_value(-std::expm1(-ac + log_tail));
  return sum.value();
}

MomentReport mse_umvue_pdf(int n, double alpha, double k, double x) {
  require_positive_params(alpha, k, "mse_umvue_pdf");
  require_x_at_least_k(x, k, "mse_umvue_pdf");
  if (n <= 2) throw MomentNotDefinedError("mse_umvue_pdf: needs n >= 3");
  const double fx = pdf(ParetoParams(alpha, k), x);
  const double second = rth_moment_umvue_pdf(n, alpha, k, x, 2);
  MomentReport r = assemble(Engine::ClosedForm,
                            EstimatorKind{EstimatorTag::Umvue, Target::Pdf}, x,
                            fx, second, fx);
  r.bias = 0.0;  // exact unbiasedness
  r.mse = r.variance;
  return r;
}

MomentReport mse_umvue_cdf(int n, double alpha, double k, double x) {
  require_positive_params(alpha, k, "mse_umvue_cdf");
  require_x_at_least_k(x, k, "mse_umvue_cdf");
  if (n < 2) throw InsufficientSampleError("mse_umvue_cdf: needs n >= 2");
  const double c = std::log(x / k);
  const double Fx = cdf(ParetoParams(alpha, k), x);
  // Eq. (13): (k/x)^alpha / Gamma(n) sum_j sum_i ... - (k/x)^(2 alpha)
  const double ac = alpha * c;
  SignedLogSum sum;
  for (int j = 0; j <= n - 1; ++j) {
    if (j > 0 && c == 0.0) break;
    const double outer = -ac - lg(n) + log_choose(2.0 * n - 2.0, j) +
                         (j > 0 ? j * std::log(ac) : 0.0) + lg(n - j);
    for (int i = 0; i <= n - 1 - j; ++i) {
      if (i > 0 && c == 0.0) break;
      const double log_mag =
          outer + (i > 0 ? i * std::log(ac) : 0.0) - lg(i + 1.0);
      sum.add(j % 2 == 0 ? 1 : -1, log_mag);
    }
  }
  sum.add(-1, -2.0 * ac);
  const double mse = sum.value();
  const double second = mse + Fx * Fx;
  MomentReport r = assemble(Engine::ClosedForm,
                            EstimatorKind{EstimatorTag::Umvue, Target::Cdf}, x,
                            Fx, second, Fx);
  r.bias = 0.0;
  r.mse = r.variance;
  return r;
}

// --- Bessel K and Kummer U ---------------------------------------------------

namespace {

QuadratureConfig special_function_config() {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-300;
  cfg.max_subdivisions = 2000;
  return cfg;
}

}  // namespace

double log_bessel_k_nu(double nu, double z) {
  if (!(z > 0.0)) throw std::domain_error("bessel_k_nu: z must be > 0");
  const double anu = std::fabs(nu);  // K is even in the order
  auto log_integrand = [anu, z](double t) {
    if (t < 0.0) return kNegInf;
    // log cosh(a t) = a t + log1p(e^(-2 a t)) - log 2, stable for large a t
    const double at = anu * t;
    const double log_cosh = at + std::log1p(std::exp(-2.0 * at)) - std::log(2.0);
    return -z * std::cosh(t) + log_cosh;
  };
  // find where the integrand has dropped far below its peak
  double peak = kNegInf;
  double t_hi = 1.0;
  for (double t = 0.0; t <= 80.0; t += 0.25) {
    peak = std::max(peak, log_integrand(t));
  }
  while (t_hi < 800.0 && log_integrand(t_hi) > peak - 90.0) t_hi += 1.0;
  const LogIntegralResult r = integrate_log_scaled_finite(
      log_integrand, 0.0, t_hi, special_function_config());
  return r.log_value;
}

double bessel_k_nu(double nu, double z) {
  return std::exp(log_bessel_k_nu(nu, z));
}

double log_kummer_u(double a, double b, double c) {
  if (!(a > 0.0) || !(c > 0.0)) {
    throw std::domain_error("kummer_u: needs a > 0 and c > 0");
  }
  // substitute t = e^v so the wide-support integrand is well scaled
  auto log_integrand = [a, b, c](double v) {
    const double t = std::exp(v);
    return a * v + (b - a - 1.0) * std::log1p(t) - c * t;
  };
  const std::vector<double> window = quad_detail::peak_window_boundaries(
      log_integrand, -700.0, 700.0, 1.0, 90.0, -746.0, 746.0);
  const LogIntegralResult r = integrate_log_scaled_finite(
      log_integrand, window.front(), window.back(), special_function_config());
  return r.log_value - lg(a);
}

double kummer_u(double a, double b, double c) {
  return std::exp(log_kummer_u(a, b, c));
}

// --- exact moment representations ---------------------------------------------

double exact_mle_moment_bessel(int n, double alpha, double k, double x, int r) {
  require_positive_params(alpha, k, "exact_mle_moment_bessel");
  if (r < 1) throw std::domain_error("exact_mle_moment_bessel: r must be >= 1");
  if (!(x >= k)) {
    throw std::domain_error("exact_mle_moment_bessel: x must be >= k");
  }
  const double an = alpha * n;
  const double c = std::log(x / k);
  if (c == 0.0) {
    // gamma limit: E(W^r)/x^r, defined for n > r
    if (n <= r) {
      throw MomentNotDefinedError(
          "exact_mle_moment_bessel: moment at x = k needs n > r");
    }
    return std::exp(r * std::log(an) + lg(n - r) - lg(n) - r * std::log(x));
  }
  const double rc = r * c;
  const double log_core = n * std::log(an) - lg(n) + std::log(2.0) +
                          0.5 * (n - r) * (std::log(rc) - std::log(an)) +
                          log_bessel_k_nu(n - r, 2.0 * std::sqrt(an * rc));
  return std::exp(log_core - r * std::log(x));
}

double exact_mle_cdf_moment_bessel(int n, double alpha, double k, double x,
                                   int r) {
  require_positive_params(alpha, k, "exact_mle_cdf_moment_bessel");
  if (r < 1 || n < 1) {
    throw std::domain_error("exact_mle_cdf_moment_bessel: needs n, r >= 1");
  }
  if (!(x >= k)) {
    throw std::domain_error("exact_mle_cdf_moment_bessel: x must be >= k");
  }
  const double c = std::log(x / k);
  if (c == 0.0) return 0.0;  // F-tilde(k) = 0
  const double an = alpha * n;
  SignedLogSum sum;
  sum.add(1, 0.0);  // j = 0 term of the binomial expansion
  for (int j = 1; j <= r; ++j) {
    const double jc = j * c;
    const double log_lap = n * std::log(an) - lg(n) + std::log(2.0) +
                           0.5 * n * (std::log(jc) - std::log(an)) +
                           log_bessel_k_nu(n, 2.0 * std::sqrt(an * jc));
    sum.add(j % 2 == 0 ? 1 : -1, log_choose(r, j) + log_lap);
  }
  return sum.value();
}

double exact_umvue_pdf_second_moment_kummer(int n, double alpha, double k,
                                            double x) {
  require_positive_params(alpha, k, "exact_umvue_pdf_second_moment_kummer");
  if (n <= 2) {
    throw MomentNotDefinedError(
        "exact_umvue_pdf_second_moment_kummer: needs n >= 3");
  }
  if (!(x >= k)) {
    throw std::domain_error(
        "exact_umvue_pdf_second_moment_kummer: x must be >= k");
  }
  const double c = std::log(x / k);
  if (c == 0.0) {
    // exact collapse: (n-1) alpha^2 / ((n-2) k^2)
    return (n - 1.0) * alpha * alpha / ((n - 2.0) * k * k);
  }
  const double ac = alpha * c;
  const double log_val = std::log(n - 1.0) + n * std::log(alpha) - lg(n - 1) -
                         2.0 * std::log(x) + (n - 2.0) * std::log(c) - ac +
                         lg(2.0 * n - 3.0) +
                         log_kummer_u(2.0 * n - 3.0, n - 1.0, ac);
  return std::exp(log_val);
}

MomentReport mse_mle_pdf_bessel(int n, double alpha, double k, double x) {
  const double mean = exact_mle_moment_bessel(n, alpha, k, x, 1);
  const double second = exact_mle_moment_bessel(n, alpha, k, x, 2);
  const double fx = pdf(ParetoParams(alpha, k), x);
  return assemble(Engine::BesselExact,
                  EstimatorKind{EstimatorTag::Mle, Target::Pdf}, x, mean,
                  second, fx);
}

MomentReport mse_mle_cdf_bessel(int n, double alpha, double k, double x) {
  const double mean = exact_mle_cdf_moment_bessel(n, alpha, k, x, 1);
  const double second = exact_mle_cdf_moment_bessel(n, alpha, k, x, 2);
  const double Fx = cdf(ParetoParams(alpha, k), x);
  return assemble(Engine::BesselExact,
                  EstimatorKind{EstimatorTag::Mle, Target::Cdf}, x, mean,
                  second, Fx);
}

MomentReport mse_umvue_pdf_kummer(int n, double alpha, double k, double x) {
  const double second = exact_umvue_pdf_second_moment_kummer(n, alpha, k, x);
  const double fx = pdf(ParetoParams(alpha, k), x);
  MomentReport r = assemble(Engine::KummerExact,
                            EstimatorKind{EstimatorTag::Umvue, Target::Pdf}, x,
                            fx, second, fx);
  r.bias = 0.0;
  r.mse = r.variance;
  return r;
}

}  // namespace paretoest

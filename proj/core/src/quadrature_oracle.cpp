#include "paretoest/quadrature_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "paretoest/errors.hpp"

namespace paretoest {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lg(double v) { return std::lgamma(v); }

OracleMoment finish(const IntegralResult& r, const char* what) {
  if (!r.converged) {
    throw QuadratureAccuracyError(
        std::string(what) + ": tolerance not reached within subdivision budget",
        r.value, r.error);
  }
  return OracleMoment{r.value, r.error};
}

void check_common(int r, double alpha, double k, const char* who) {
  if (r < 1) throw std::domain_error(std::string(who) + ": r must be >= 1");
  if (!(alpha > 0.0) || !(k > 0.0)) {
    throw std::domain_error(std::string(who) + ": alpha and k must be > 0");
  }
}

}  // namespace

OracleMoment moment_mle(Target statistic, int r, int n, double alpha, double k,
                        double x, const QuadratureConfig& cfg) {
  cfg.validate();
  check_common(r, alpha, k, "moment_mle");
  if (n < 1) throw std::domain_error("moment_mle: n must be >= 1");
  const double an = alpha * n;
  const double log_g_norm = n * std::log(an) - lg(n);
  auto log_g = [=](double w) {
    if (!(w > 0.0) || std::isinf(w)) return kNegInf;
    return log_g_norm - (n + 1.0) * std::log(w) - an / w;
  };
  switch (statistic) {
    case Target::Alpha: {
      if (n <= r) {
        throw MomentNotDefinedError("moment_mle: E(W^r) needs n > r");
      }
      auto f = [=](double w) { return r * std::log(w) + log_g(w); };
      return finish(integrate_log_positive_axis(f, cfg), "moment_mle(alpha)");
    }
    case Target::Pdf: {
      if (!(x >= k)) throw std::domain_error("moment_mle: x must be >= k");
      const double c = std::log(x / k);
      if (c == 0.0 && n <= r) {
        throw MomentNotDefinedError("moment_mle: E(f~^r(k)) needs n > r");
      }
      const double lx = std::log(x);
      auto f = [=](double w) {
        if (!(w > 0.0) || std::isinf(w)) return kNegInf;
        return r * (std::log(w) - c * w - lx) + log_g(w);
      };
      return finish(integrate_log_positive_axis(f, cfg), "moment_mle(pdf)");
    }
    case Target::Cdf: {
      if (!(x >= k)) throw std::domain_error("moment_mle: x must be >= k");
      const double c = std::log(x / k);
      if (c == 0.0) return OracleMoment{0.0, 0.0};  // integrand identically 0
      auto f = [=](double w) {
        if (!(w > 0.0) || std::isinf(w)) return kNegInf;
        return r * std::log1p(-std::exp(-c * w)) + log_g(w);
      };
      return finish(integrate_log_positive_axis(f, cfg), "moment_mle(cdf)");
    }
  }
  throw std::invalid_argument("moment_mle: bad statistic");
}

OracleMoment moment_umvue(Target statistic, int r, int n, double alpha,
                          double k, double x, const QuadratureConfig& cfg) {
  cfg.validate();
  check_common(r, alpha, k, "moment_umvue");
  if (n < 2) throw std::domain_error("moment_umvue: n must be >= 2");
  if (!(x >= k)) throw std::domain_error("moment_umvue: x must be >= k");
  const double c = std::log(x / k);
  const double log_gamma_norm = n * std::log(alpha) - lg(n);
  // density of z = ln t - n ln k, i.e. Gamma(n, 1/alpha)
  auto log_gamma_pdf = [=](double z) {
    if (!(z > 0.0) || std::isinf(z)) return kNegInf;
    return log_gamma_norm + (n - 1.0) * std::log(z) - alpha * z;
  };
  switch (statistic) {
    case Target::Pdf: {
      if (c == 0.0 && n <= r) {
        throw MomentNotDefinedError("moment_umvue: E(f^^r(k)) needs n > r");
      }
      // f-hat = 0 for z <= c; integrate over y = z - c > 0
      const double lx = std::log(x);
      const double ln1 = std::log(n - 1.0);
      auto f = [=](double y) {
        if (!(y > 0.0) || std::isinf(y)) return kNegInf;
        const double z = y + c;
        return r * (ln1 + (n - 2.0) * std::log(y) - lx -
                    (n - 1.0) * std::log(z)) +
               log_gamma_pdf(z);
      };
      return finish(integrate_log_positive_axis(f, cfg), "moment_umvue(pdf)");
    }
    case Target::Cdf: {
      if (c == 0.0) return OracleMoment{0.0, 0.0};
      // F-hat = 1 on z in (0, c]; Eq. (11) branch beyond
      IntegralResult below = integrate_log_finite(log_gamma_pdf, 0.0, c, cfg);
      auto f = [=](double y) {
        if (!(y > 0.0) || std::isinf(y)) return kNegInf;
        const double z = y + c;
        const double log_ratio_pow = (n - 1.0) * (std::log(y) - std::log(z));
        return r * std::log1p(-std::exp(log_ratio_pow)) + log_gamma_pdf(z);
      };
      IntegralResult above = integrate_log_positive_axis(f, cfg);
      IntegralResult total{below.value + above.value,
                           below.error + above.error,
                           below.subdivisions + above.subdivisions,
                           below.converged && above.converged};
      return finish(total, "moment_umvue(cdf)");
    }
    case Target::Alpha:
      break;
  }
  throw std::invalid_argument(
      "moment_umvue: statistic must be Pdf or Cdf (alpha-hat has no h* form "
      "here; use moment_mle(Alpha) and scale)");
}

MomentReport mse_via_quadrature(EstimatorKind kind, int n, double alpha,
                                double k, double x,
                                const QuadratureConfig& cfg) {
  double mean = 0.0, second = 0.0, target = 0.0;
  std::optional<double> eval_x;
  switch (kind.target) {
    case Target::Alpha: {
      OracleMoment m1 = moment_mle(Target::Alpha, 1, n, alpha, k, x, cfg);
      OracleMoment m2 = moment_mle(Target::Alpha, 2, n, alpha, k, x, cfg);
      // alpha-hat = (n-1)/n * W, so its moments are scaled W-moments
      const double scale =
          kind.tag == EstimatorTag::Umvue ? (n - 1.0) / n : 1.0;
      mean = scale * m1.value;
      second = scale * scale * m2.value;
      target = alpha;
      break;
    }
    case Target::Pdf:
    case Target::Cdf: {
      eval_x = x;
      OracleMoment m1, m2;
      if (kind.tag == EstimatorTag::Mle) {
        m1 = moment_mle(kind.target, 1, n, alpha, k, x, cfg);
        m2 = moment_mle(kind.target, 2, n, alpha, k, x, cfg);
      } else {
        m1 = moment_umvue(kind.target, 1, n, alpha, k, x, cfg);
        m2 = moment_umvue(kind.target, 2, n, alpha, k, x, cfg);
      }
      mean = m1.value;
      second = m2.value;
      const ParetoParams params(alpha, k);
      target = kind.target == Target::Pdf ? pdf(params, x) : cdf(params, x);
      break;
    }
  }
  MomentReport r;
  r.engine = Engine::Quadrature;
  r.estimator = kind;
  r.eval_x = eval_x;
  r.mean = mean;
  r.second_moment = second;
  r.variance = second - mean * mean;
  r.bias = mean - target;
  r.mse = r.variance + r.bias * r.bias;
  return r;
}

namespace {

DeviationRow make_row(int n, double alpha, double k, std::optional<double> x,
                      EstimatorKind kind, const QuadratureConfig& cfg) {
  DeviationRow row;
  row.n = n;
  row.alpha = alpha;
  row.k = k;
  row.x = x;
  row.kind = kind;

  bool closed_ok = true;
  try {
    switch (kind.target) {
      case Target::Alpha:
        row.closed = mle_alpha_moments(n, alpha).mse;
        break;
      case Target::Pdf:
        row.closed = kind.tag == EstimatorTag::Mle
                         ? mse_mle_pdf(n, alpha, k, *x).mse
                         : mse_umvue_pdf(n, alpha, k, *x).mse;
        break;
      case Target::Cdf:
        row.closed = kind.tag == EstimatorTag::Mle
                         ? mse_mle_cdf(n, alpha, k, *x).mse
                         : mse_umvue_cdf(n, alpha, k, *x).mse;
        break;
    }
  } catch (const MomentNotDefinedError&) {
    row.closed = std::numeric_limits<double>::quiet_NaN();
    closed_ok = false;
    row.flag = "closed_undefined";
  }

  try {
    row.quadrature =
        mse_via_quadrature(kind, n, alpha, k, x.value_or(k), cfg).mse;
  } catch (const QuadratureAccuracyError& e) {
    row.quadrature = e.best_estimate();
    row.flag = "quad_fail";
    row.rel_deviation = std::numeric_limits<double>::quiet_NaN();
    return row;
  }

  if (x.has_value()) {
    try {
      if (kind.tag == EstimatorTag::Mle) {
        row.exact_special = kind.target == Target::Pdf
                                ? mse_mle_pdf_bessel(n, alpha, k, *x).mse
                                : mse_mle_cdf_bessel(n, alpha, k, *x).mse;
      } else if (kind.target == Target::Pdf) {
        row.exact_special = mse_umvue_pdf_kummer(n, alpha, k, *x).mse;
      }
    } catch (const MomentNotDefinedError&) {
      row.exact_special = std::nullopt;
    }
  }

  if (closed_ok) {
    row.rel_deviation = std::fabs(row.closed - row.quadrature) /
                        std::max(std::fabs(row.quadrature), cfg.abs_tol);
    if (row.flag == "ok" && row.closed < 0.0) row.flag = "closed_negative_mse";
  } else {
    row.rel_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

std::vector<DeviationRow> deviation_report(int n, double alpha, double k,
                                           const std::vector<double>& x_grid,
                                           const QuadratureConfig& cfg) {
  if (x_grid.empty()) {
    throw std::invalid_argument("deviation_report: x_grid must be nonempty");
  }
  std::vector<DeviationRow> rows;
  rows.reserve(x_grid.size() * 4 + 1);
  const EstimatorKind combos[4] = {
      {EstimatorTag::Mle, Target::Pdf},
      {EstimatorTag::Mle, Target::Cdf},
      {EstimatorTag::Umvue, Target::Pdf},
      {EstimatorTag::Umvue, Target::Cdf},
  };
  for (double x : x_grid) {
    for (const EstimatorKind& kind : combos) {
      rows.push_back(make_row(n, alpha, k, x, kind, cfg));
    }
  }
  rows.push_back(make_row(n, alpha, k, std::nullopt,
                          EstimatorKind{EstimatorTag::Mle, Target::Alpha},
                          cfg));
  return rows;
}

}  // namespace paretoest

#ifndef PARETOEST_QUADRATURE_HPP
#define PARETOEST_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace paretoest {

enum class InfiniteTransform { RationalMap, ExpMap };

/// Tolerances and limits for the adaptive Gauss-Kronrod engine.
struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  InfiniteTransform infinite_transform = InfiniteTransform::RationalMap;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw std::invalid_argument("QuadratureConfig: tolerances must be > 0");
    }
    if (max_subdivisions < 50) {
      throw std::invalid_argument(
          "QuadratureConfig: max_subdivisions must be >= 50");
    }
  }

  /// Nodes whose log-integrand falls below this are treated as zero.
  double log_zero_cutoff() const { return std::log(abs_tol) - 40.0; }
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;     // achieved absolute-error estimate
  int subdivisions = 0;   // panels used
  bool converged = true;
};

namespace quad_detail {

// QUADPACK dqk15 abscissae/weights. Even-index Kronrod points interleave the
// 7 Gauss points (odd indices); index 7 is the midpoint.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

/// One GK15 pass over [a, b]; f is evaluated in the linear domain.
template <class F>
Panel gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  double flo[7], fhi[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    flo[i] = f(mid - dx);
    fhi[i] = f(mid + dx);
    const double s = flo[i] + fhi[i];
    resk += kWgk[i] * s;
    resabs += kWgk[i] * (std::fabs(flo[i]) + std::fabs(fhi[i]));
    if (i % 2 == 1) resg += kWg[i / 2] * s;
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int i = 0; i < 7; ++i) {
    resasc += kWgk[i] * (std::fabs(flo[i] - reskh) + std::fabs(fhi[i] - reskh));
  }
  const double value = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * resabs);
  }
  return Panel{a, b, value, err};
}

}  // namespace quad_detail

/// Adaptive GK15 over consecutive panels given by `boundaries`. Splits the
/// worst panel until the summed error estimate meets the tolerance or the
/// subdivision budget runs out. Narrow features must be resolved by the
/// seed partition: a panel whose nodes all miss a spike reports a small
/// error and will not be revisited.
template <class F>
IntegralResult integrate_adaptive_seeded(const F& f,
                                         const std::vector<double>& boundaries,
                                         const QuadratureConfig& cfg) {
  using quad_detail::Panel;
  if (boundaries.size() < 2) return IntegralResult{0.0, 0.0, 0, true};
  const double a = boundaries.front();
  const double b = boundaries.back();
  if (!(b > a)) return IntegralResult{0.0, 0.0, 0, true};
  std::priority_queue<Panel> heap;
  int panels = 0;
  double sum_value = 0.0;
  double sum_error = 0.0;
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    if (!(boundaries[i + 1] > boundaries[i])) continue;
    Panel p = quad_detail::gk15(f, boundaries[i], boundaries[i + 1]);
    sum_value += p.value;
    sum_error += p.error;
    heap.push(p);
    ++panels;
  }
  const double min_width = (b - a) * 1e-14;
  while (true) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(sum_value));
    if (sum_error <= tol) {
      return IntegralResult{sum_value, sum_error, panels, true};
    }
    if (heap.empty() || panels >= cfg.max_subdivisions) {
      return IntegralResult{sum_value, sum_error, panels, false};
    }
    Panel worst = heap.top();
    heap.pop();
    if (worst.b - worst.a < min_width) {
      // cannot refine further; leave its contribution in the running sums
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = quad_detail::gk15(f, worst.a, mid);
    Panel right = quad_detail::gk15(f, mid, worst.b);
    sum_value += left.value + right.value - worst.value;
    sum_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
}

template <class F>
IntegralResult integrate_adaptive(const F& f, double a, double b,
                                  const QuadratureConfig& cfg) {
  return integrate_adaptive_seeded(f, std::vector<double>{a, b}, cfg);
}

/// Adaptive integration of exp(log_f) over [a, b]; nodes below the
/// config's log-zero cutoff contribute exactly zero.
template <class LogF>
IntegralResult integrate_log_finite(const LogF& log_f, double a, double b,
                                    const QuadratureConfig& cfg) {
  const double cut = cfg.log_zero_cutoff();
  auto f = [&](double x) {
    const double lv = log_f(x);
    return (std::isnan(lv) || lv < cut) ? 0.0 : std::exp(lv);
  };
  return integrate_adaptive(f, a, b, cfg);
}

template <class LogF>
IntegralResult integrate_log_finite_seeded(const LogF& log_f,
                                           const std::vector<double>& bounds,
                                           const QuadratureConfig& cfg) {
  const double cut = cfg.log_zero_cutoff();
  auto f = [&](double x) {
    const double lv = log_f(x);
    return (std::isnan(lv) || lv < cut) ? 0.0 : std::exp(lv);
  };
  return integrate_adaptive_seeded(f, bounds, cfg);
}

namespace quad_detail {

/// Expanding scan for the support of exp(log_f): a coarse grid locates the
/// maximum, then the window widens until the integrand has dropped `drop`
/// nats below it. Returns a partition of the window fine enough that the
/// seed panels cannot straddle the whole peak.
template <class LogF>
std::vector<double> peak_window_boundaries(const LogF& log_f, double scan_lo,
                                           double scan_hi, double scan_step,
                                           double drop, double walk_limit_lo,
                                           double walk_limit_hi,
                                           int peak_panels = 12) {
  double best = -std::numeric_limits<double>::infinity();
  double best_v = 0.5 * (scan_lo + scan_hi);
  for (double v = scan_lo; v <= scan_hi; v += scan_step) {
    const double lv = log_f(v);
    if (lv > best) {
      best = lv;
      best_v = v;
    }
  }
  if (!std::isfinite(best)) {
    return {scan_lo, scan_hi};  // nothing visible; leave it to the adaptor
  }
  const double floor_lv = best - drop;
  const double walk_step = 4.0 * scan_step;
  double lo = best_v, hi = best_v;
  while (lo - walk_step > walk_limit_lo && log_f(lo) > floor_lv) lo -= walk_step;
  while (hi + walk_step < walk_limit_hi && log_f(hi) > floor_lv) hi += walk_step;
  std::vector<double> bounds;
  bounds.reserve(peak_panels + 1);
  for (int i = 0; i <= peak_panels; ++i) {
    bounds.push_back(lo + (hi - lo) * static_cast<double>(i) / peak_panels);
  }
  return bounds;
}

}  // namespace quad_detail

/// Integral of exp(log_f) over (0, inf) using the configured transform.
/// Both transforms seed from the same log-axis scan, where the gamma-type
/// kernels in this library are wide; the rational map alone would let
/// strongly concentrated integrands (large n) slip between quadrature
/// nodes unnoticed.
template <class LogF>
IntegralResult integrate_log_positive_axis(const LogF& log_f,
                                           const QuadratureConfig& cfg) {
  auto lg_v = [&](double v) { return log_f(std::exp(v)) + v; };
  const std::vector<double> v_bounds = quad_detail::peak_window_boundaries(
      lg_v, -60.0, 60.0, 0.5, 90.0, -746.0, 710.0);
  if (cfg.infinite_transform == InfiniteTransform::ExpMap) {
    return integrate_log_finite_seeded(lg_v, v_bounds, cfg);
  }
  // u = w/(1+w): map the log-axis partition through the logistic and keep
  // the full (0, 1) range so the power-law tail stays inside the domain
  auto lg_u = [&](double u) {
    const double om = 1.0 - u;
    if (u <= 0.0 || om <= 0.0) return -std::numeric_limits<double>::infinity();
    return log_f(u / om) - 2.0 * std::log(om);
  };
  std::vector<double> u_bounds{0.0};
  for (double v : v_bounds) {
    const double u = 1.0 / (1.0 + std::exp(-v));
    if (u > u_bounds.back() + 1e-15 && u < 1.0 - 1e-15) u_bounds.push_back(u);
  }
  u_bounds.push_back(1.0);
  return integrate_log_finite_seeded(lg_u, u_bounds, cfg);
}

struct LogIntegralResult {
  double log_value = -std::numeric_limits<double>::infinity();
  double rel_error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

/// log of the integral of exp(log_f) over [a, b], max-factored so the
/// result stays finite even when the integrand itself over/underflows.
template <class LogF>
LogIntegralResult integrate_log_scaled_finite(const LogF& log_f, double a,
                                              double b,
                                              const QuadratureConfig& cfg) {
  double peak = -std::numeric_limits<double>::infinity();
  const int scan = 256;
  const double step = (b - a) / scan;
  for (int i = 0; i <= scan; ++i) {
    peak = std::max(peak, log_f(a + step * i));
  }
  if (!std::isfinite(peak)) {
    return LogIntegralResult{-std::numeric_limits<double>::infinity(), 0.0, 0,
                             true};
  }
  auto shifted = [&](double x) { return log_f(x) - peak; };
  // seed panels that resolve the region near the maximum
  std::vector<double> bounds{a};
  std::vector<double> peak_bounds = quad_detail::peak_window_boundaries(
      shifted, a, b, step, 90.0, a, b);
  for (double v : peak_bounds) {
    if (v > bounds.back() + step * 1e-9 && v < b) bounds.push_back(v);
  }
  bounds.push_back(b);
  QuadratureConfig scaled = cfg;
  scaled.abs_tol = 1e-300;  // scaled integrand is O(1); drive by rel_tol
  IntegralResult r = integrate_log_finite_seeded(shifted, bounds, scaled);
  LogIntegralResult out;
  out.log_value = peak + std::log(r.value);
  out.rel_error = r.value > 0.0 ? r.error / r.value : 0.0;
  out.subdivisions = r.subdivisions;
  out.converged = r.converged;
  return out;
}

}  // namespace paretoest

#endif  // PARETOEST_QUADRATURE_HPP

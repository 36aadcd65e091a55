#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "paretoest/pareto_model.hpp"
#include "paretoest/quadrature.hpp"

using namespace paretoest;

TEST_CASE("pdf examples") {
  CHECK(pdf(ParetoParams(1, 1), 1.0) == doctest::Approx(1.0));
  CHECK(pdf(ParetoParams(2, 1), 0.5) == 0.0);
  // 0.5 * 0.5^0.5 / 2^1.5 = 0.125
  CHECK(pdf(ParetoParams(0.5, 0.5), 2.0) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("cdf examples") {
  CHECK(cdf(ParetoParams(3, 2), 2.0) == 0.0);
  CHECK(cdf(ParetoParams(1, 1), 1e308) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cdf(ParetoParams(2, 1), 2.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cdf(ParetoParams(2, 1), 0.3) == 0.0);
}

TEST_CASE("cdf is the antiderivative of pdf") {
  const ParetoParams p(1.7, 0.8);
  const double h = 1e-6;
  for (double x : {1.0, 1.5, 2.5, 7.0}) {
    const double deriv = (cdf(p, x + h) - cdf(p, x - h)) / (2 * h);
    CHECK(deriv == doctest::Approx(pdf(p, x)).epsilon(1e-6));
  }
}

TEST_CASE("pdf integrates to one over the support") {
  QuadratureConfig cfg;
  // the power-law tail needs the exponential map; the rational map leaves
  // an endpoint singularity for alpha < 1
  cfg.infinite_transform = InfiniteTransform::ExpMap;
  for (double alpha : {0.5, 1.0, 3.0}) {
    for (double k : {0.5, 2.0}) {
      const ParetoParams p(alpha, k);
      auto log_f = [&](double y) {
        const double v = pdf(p, y + k);
        return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
      };
      const IntegralResult r = integrate_log_positive_axis(log_f, cfg);
      CHECK(r.converged);
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("quantile examples and inverse relationship") {
  CHECK(quantile(ParetoParams(3, 2.5), 0.0) == doctest::Approx(2.5));
  CHECK(quantile(ParetoParams(1, 1), 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(quantile(ParetoParams(2, 2), 0.75) == doctest::Approx(4.0).epsilon(1e-14));
  const ParetoParams p(1.3, 0.7);
  for (double u : {0.0, 0.1, 0.437, 0.9, 0.999999}) {
    CHECK(cdf(p, quantile(p, u)) == doctest::Approx(u).epsilon(1e-12));
  }
  CHECK_THROWS_AS(quantile(p, 1.0), std::domain_error);
  CHECK_THROWS_AS(quantile(p, -0.01), std::domain_error);
}

TEST_CASE("quantile composed with cdf is the identity on [k, 1e6 k]") {
  // alpha kept below 1 so (k/x)^alpha stays representable inside 1 - u
  // across the whole range; heavier shapes saturate u at double precision
  const ParetoParams p(0.7, 1.4);
  for (double mult : {1.0, 1.01, 3.0, 100.0, 1e6}) {
    const double x = p.k * mult;
    CHECK(quantile(p, cdf(p, x)) == doctest::Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("sampling is deterministic and respects the support") {
  const ParetoParams p(5, 1);
  const SampleData a = sample(p, 1, 99);
  CHECK(a.values()[0] >= p.k);
  const SampleData b = sample(p, 64, 1234);
  const SampleData c = sample(p, 64, 1234);
  CHECK(b.values() == c.values());
  CHECK(b.s_stat() == c.s_stat());
  const SampleData d = sample(p, 64, 1235);
  CHECK(b.values() != d.values());
}

TEST_CASE("sample mean of ln(x/k) matches the exponential rate") {
  const double alpha = 5.0;
  const ParetoParams p(alpha, 1);
  const int n = 1000000;
  const SampleData s = sample(p, n, 2024);
  const double mean_log = s.s_stat() / n;
  // ln(X/k) ~ Exp(alpha); sd of the sample mean is (1/alpha)/sqrt(n)
  const double se = (1.0 / alpha) / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(mean_log - 1.0 / alpha) < 4 * se);
}

TEST_CASE("ln(x/k) passes a Kolmogorov-Smirnov check against Exponential") {
  const double alpha = 1.6;
  const ParetoParams p(alpha, 0.5);
  const int n = 100000;
  const SampleData s = sample(p, n, 777);
  std::vector<double> u(s.values().size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = -std::expm1(-alpha * std::log(s.values()[i] / p.k));
  }
  std::sort(u.begin(), u.end());
  double d_stat = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d_stat = std::max({d_stat, u[i] - lo, hi - u[i]});
  }
  // Kolmogorov critical value at significance 0.001
  const double critical = std::sqrt(-0.5 * std::log(0.001 / 2.0));
  CHECK(d_stat * std::sqrt(static_cast<double>(n)) < critical);
}

TEST_CASE("SampleData caches consistent sufficient statistics") {
  const SampleData s = SampleData::from_values({2.0, 3.0, 5.0}, 2.0);
  CHECK(s.n() == 3);
  CHECK(s.s_stat() >= 0.0);
  CHECK(s.s_stat() ==
        doctest::Approx(std::log(1.0) + std::log(1.5) + std::log(2.5)));
  CHECK(s.log_t() == s.s_stat() + 3 * std::log(2.0));  // exact by construction
}

TEST_CASE("SampleData rejects invalid inputs") {
  CHECK_THROWS_AS(SampleData::from_values({}, 1.0), std::domain_error);
  CHECK_THROWS_AS(SampleData::from_values({0.5}, 1.0), std::domain_error);
  CHECK_THROWS_AS(SampleData::from_values({1.0}, -1.0), std::domain_error);
  CHECK_THROWS_AS(ParetoParams(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ParetoParams(1.0, 0.0), std::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "paretoest/errors.hpp"
#include "paretoest/mc_harness.hpp"
#include "paretoest/quadrature_oracle.hpp"
#include "paretoest/rng.hpp"

using namespace paretoest;

namespace {

// Inverse of the SplitMix64 finalizer, used to construct a seed whose very
// first uniform is exactly 0 (a degenerate n = 1 sample).
std::uint64_t unmix64(std::uint64_t z) {
  z ^= z >> 31;
  z ^= z >> 62;
  z *= 0x319642B2D24D8EC3ULL;
  z ^= z >> 27;
  z ^= z >> 54;
  z *= 0x96DE1B173F119089ULL;
  z ^= z >> 30;
  z ^= z >> 60;
  return z;
}

bool reports_equal(const MomentReport& a, const MomentReport& b) {
  return a.engine == b.engine && a.estimator == b.estimator &&
         a.eval_x == b.eval_x && a.mean == b.mean &&
         a.second_moment == b.second_moment && a.variance == b.variance &&
         a.bias == b.bias && a.mse == b.mse && a.std_error == b.std_error &&
         a.second_std_error == b.second_std_error &&
         a.mse_std_error == b.mse_std_error;
}

}  // namespace

TEST_CASE("unmix64 inverts mix64") {
  for (std::uint64_t v : {0ULL, 1ULL, 42ULL, 0xDEADBEEFCAFEULL}) {
    CHECK(unmix64(mix64(v)) == v);
    CHECK(mix64(unmix64(v)) == v);
  }
}

TEST_CASE("brute_force_moment is bit-identical under the same seed") {
  const EstimatorKind kind{EstimatorTag::Mle, Target::Pdf};
  const MomentReport a = brute_force_moment(kind, 1, 8, 1.0, 1.0, 1.4, 5000, 99);
  const MomentReport b = brute_force_moment(kind, 1, 8, 1.0, 1.0, 1.4, 5000, 99);
  CHECK(reports_equal(a, b));
  const MomentReport c = brute_force_moment(kind, 1, 8, 1.0, 1.0, 1.4, 5000, 100);
  CHECK(!reports_equal(a, c));
}

TEST_CASE("brute force recovers unbiasedness of the UMVUE density") {
  const MomentReport r =
      brute_force_moment(EstimatorKind{EstimatorTag::Umvue, Target::Pdf}, 1,
                         15, 1.0, 1.0, 2.0, 100000, 12345);
  CHECK(std::fabs(r.mean - 0.25) < 4.0 * *r.std_error);
  CHECK(r.engine == Engine::MonteCarlo);
  CHECK(r.eval_x.has_value());
}

TEST_CASE("brute force MSE of the MLE of alpha matches the closed form") {
  const MomentReport r =
      brute_force_moment(EstimatorKind{EstimatorTag::Mle, Target::Alpha}, 1, 5,
                         2.0, 1.0, 1.0, 1000000, 2718);
  CHECK(std::fabs(r.mse - 7.0 / 3.0) < 4.0 * *r.mse_std_error);
  CHECK(!r.eval_x.has_value());
}

TEST_CASE("cdf estimators at x = k give exactly zero MSE") {
  for (EstimatorTag tag : {EstimatorTag::Mle, EstimatorTag::Umvue}) {
    const MomentReport r = brute_force_moment(EstimatorKind{tag, Target::Cdf},
                                              1, 6, 1.5, 2.0, 2.0, 500, 0);
    CHECK(r.mean == 0.0);
    CHECK(r.mse == 0.0);
    CHECK(*r.std_error == 0.0);
  }
}

TEST_CASE("brute force agrees with the quadrature oracle across a 12-cell grid") {
  QuadratureConfig cfg;
  int cell = 0;
  for (int n : {4, 9}) {
    for (double alpha : {0.6, 1.7}) {
      for (double ratio : {1.0, 1.8, 5.0}) {
        const double k = 1.0, x = k * ratio;
        const EstimatorKind kind{cell % 2 == 0 ? EstimatorTag::Mle
                                               : EstimatorTag::Umvue,
                                 Target::Pdf};
        const MomentReport mc =
            brute_force_moment(kind, 1, n, alpha, k, x, 200000,
                               derive_seed(1234, 77, static_cast<std::uint64_t>(cell)));
        const MomentReport quad = mse_via_quadrature(kind, n, alpha, k, x, cfg);
        CHECK(std::fabs(mc.mean - quad.mean) < 4.0 * *mc.std_error);
        CHECK(std::fabs(mc.mse - quad.mse) < 4.0 * *mc.mse_std_error);
        ++cell;
      }
    }
  }
}

TEST_CASE("degenerate replications abort when too frequent") {
  // engineer a seed whose first replication draws u = 0 at n = 1, so the
  // sample equals {k} and the estimator is degenerate: 1/100 > 0.01%
  const std::uint64_t rep_seed = unmix64(0) - kGolden;          // stream64 -> 0
  const std::uint64_t h = unmix64(rep_seed) - kGolden;          // invert derive b
  const std::uint64_t seed = unmix64(h) ^ kGolden;              // invert derive a
  CHECK(uniform01(derive_seed(seed, 0, 0), 0) == 0.0);
  CHECK_THROWS_AS(
      brute_force_moment(EstimatorKind{EstimatorTag::Mle, Target::Alpha}, 1, 1,
                         1.0, 1.0, 1.0, 100, seed),
      DegenerateSampleError);
}

TEST_CASE("brute force argument guards") {
  const EstimatorKind kind{EstimatorTag::Mle, Target::Pdf};
  CHECK_THROWS_AS(brute_force_moment(kind, 1, 5, 1.0, 1.0, 1.0, 99, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      brute_force_moment(EstimatorKind{EstimatorTag::Umvue, Target::Alpha}, 1,
                         1, 1.0, 1.0, 1.0, 500, 0),
      InsufficientSampleError);
  CHECK_THROWS_AS(brute_force_moment(kind, 1, 5, 1.0, 1.0, 0.2, 500, 0),
                  std::domain_error);
}

TEST_CASE("simulate_table: serial and parallel runs are identical") {
  SimulationConfig config;
  config.reps = 60;
  config.n_grid = {4, 6};
  config.alpha_grid = {0.8, 1.5};
  config.k_grid = {1.0};
  config.seed = 2026;
  config.max_threads = 1;
  const auto serial = simulate_table(config);
  config.max_threads = 4;
  const auto parallel = simulate_table(config);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i] == parallel[i]);
  }
  CHECK(serial.size() == 4);
  CHECK(serial[0].n == 4);
  CHECK(serial[0].failed_reps == 0);
}

TEST_CASE("simulate_table fixed-point mode reproduces the per-point MSE") {
  SimulationConfig config;
  config.reps = 25;
  config.n_grid = {5};
  config.alpha_grid = {1.0};
  config.k_grid = {1.0};
  config.x_policy = XPolicy::FixedPoint;
  config.fixed_x = 1.0;  // collapse point: exact values known
  const auto rows = simulate_table(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mse_mle_pdf == doctest::Approx(7.0 / 12.0).epsilon(1e-8));
  CHECK(rows[0].mse_umvue_pdf == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(rows[0].mse_mle_cdf == doctest::Approx(0.0));
  CHECK(rows[0].mse_umvue_cdf == doctest::Approx(0.0));
  for (double se : rows[0].std_errors) CHECK(se == doctest::Approx(0.0));
}

TEST_CASE("simulate_table closed-form engine agrees with quadrature at x = k") {
  SimulationConfig config;
  config.reps = 10;
  config.n_grid = {6};
  config.alpha_grid = {1.3};
  config.k_grid = {0.7};
  config.x_policy = XPolicy::FixedPoint;
  config.fixed_x = 0.7;
  config.engine_for_per_rep_mse = PerRepEngine::ClosedForm;
  const auto closed_rows = simulate_table(config);
  config.engine_for_per_rep_mse = PerRepEngine::Quadrature;
  const auto quad_rows = simulate_table(config);
  CHECK(closed_rows[0].mse_mle_pdf ==
        doctest::Approx(quad_rows[0].mse_mle_pdf).epsilon(1e-8));
  CHECK(closed_rows[0].mse_umvue_pdf ==
        doctest::Approx(quad_rows[0].mse_umvue_pdf).epsilon(1e-8));
}

TEST_CASE("simulate_table config validation") {
  SimulationConfig config;
  CHECK_THROWS_AS(simulate_table(config), std::invalid_argument);  // empty
  config.n_grid = {2};
  config.alpha_grid = {1.0};
  config.k_grid = {1.0};
  CHECK_THROWS_AS(simulate_table(config), std::invalid_argument);  // n < 3
  config.n_grid = {4};
  config.reps = 0;
  CHECK_THROWS_AS(simulate_table(config), std::invalid_argument);
}

TEST_CASE("alpha-k pair list overrides the cross product") {
  SimulationConfig config;
  config.reps = 5;
  config.n_grid = {4};
  config.alpha_k_pairs = {{0.5, 0.5}, {2.0, 0.5}};
  const auto rows = simulate_table(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].alpha == 0.5);
  CHECK(rows[1].alpha == 2.0);
  CHECK(rows[1].k == 0.5);
}

TEST_CASE("efficiency_report ratios and alpha comparison") {
  // the published example cell: ratio ~ 0.9636 counts as an MLE win
  TableRow published;
  published.n = 4;
  published.alpha = 0.5;
  published.k = 0.5;
  published.mse_umvue_pdf = 0.4723690;
  published.mse_mle_pdf = 0.4551780;
  published.mse_umvue_cdf = 0.1333908446;
  published.mse_mle_cdf = 0.0014763889;
  const EfficiencySummary summary =
      efficiency_report({published}, 20000, 555);
  REQUIRE(summary.cells.size() == 1);
  CHECK(summary.cells[0].pdf_ratio == doctest::Approx(0.9636).epsilon(1e-3));
  CHECK(summary.pdf_mle_wins == 1);
  CHECK(summary.cdf_mle_wins == 1);
  CHECK(std::isfinite(summary.cells[0].cdf_ratio));

  // UMVUE of alpha beats MLE of alpha (here n=4, and in general)
  REQUIRE(summary.alpha_rows.size() == 1);
  CHECK(summary.alpha_rows[0].mse_mle_closed ==
        doctest::Approx(0.25 * 18.0 / 18.0).epsilon(1e-12));
  CHECK(summary.alpha_rows[0].umvue_better);

  CHECK_THROWS_AS(efficiency_report({}, 0, 0), std::invalid_argument);
}

TEST_CASE("alpha comparison at n=5, alpha=2") {
  TableRow row;
  row.n = 5;
  row.alpha = 2.0;
  row.k = 1.0;
  row.mse_umvue_pdf = row.mse_mle_pdf = 1.0;
  row.mse_umvue_cdf = row.mse_mle_cdf = 1.0;
  const EfficiencySummary s = efficiency_report({row}, 30000, 7);
  REQUIRE(s.alpha_rows.size() == 1);
  // closed MSE(alpha~) = alpha^2 (n^2+n-2)/((n-1)^2 (n-2)) = 7/3 * 4 / ... = 2.333*4/4
  CHECK(s.alpha_rows[0].mse_mle_closed == doctest::Approx(4.0 * 28.0 / 48.0));
  CHECK(s.alpha_rows[0].mse_umvue_mc < s.alpha_rows[0].mse_mle_closed);
  CHECK(s.alpha_rows[0].umvue_better);
}

#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "msrank/errors.hpp"
#include "msrank/simulate.hpp"

using namespace msrank;

TEST_SUITE("simulate") {

TEST_CASE("uniform design quantiles") {
  const std::vector<double> want{0.25, 0.5, 0.75, 1.0};
  CHECK(gen_design(4, DesignDensity::uniform()) == want);
  CHECK_THROWS_AS(gen_design(1, DesignDensity::uniform()), InvalidArgument);
}

TEST_CASE("linear design solves the quantile equation") {
  // h(x) proportional to 1 + x: x + x^2/2 = (3/2) u, checked by bisection
  const DesignDensity dd = DesignDensity::linear(1.0);
  const std::size_t n = 32;
  const auto x = gen_design(n, dd);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i + 1) / n;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mid + 0.5 * mid * mid < 1.5 * u ? lo : hi) = mid;
    }
    CHECK(x[i] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
  }
  CHECK(std::is_sorted(x.begin(), x.end()));
  CHECK_THROWS_AS(DesignDensity::linear(-1.0), InvalidArgument);
}

TEST_CASE("designs are strictly increasing for random slopes") {
  Rng rng(51, 0);
  for (int it = 0; it < 100; ++it) {
    const double c = -0.9 + 4.0 * rng.next_unit();
    const auto x = gen_design(2 + rng.next_u64() % 60, DesignDensity::linear(c));
    for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i - 1] < x[i]);
  }
}

TEST_CASE("linear design density integrates to one") {
  const DesignDensity dd = DesignDensity::linear(2.0);
  const double mass = testutil::simpson(
      [&](double x) { return dd.density_at(x); }, 0.0, 1.0, 2000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bump signal shape") {
  const SignalSpec s = SignalSpec::bump(2.0, 0.5, 0.25, 1.0);
  const DesignDensity dd = DesignDensity::uniform();
  CHECK(s.eval(0.5, 0, dd) == doctest::Approx(2.0));
  CHECK(s.eval(0.625, 0, dd) == doctest::Approx(1.0));
  CHECK(s.eval(0.75, 0, dd) == doctest::Approx(0.0));
  CHECK(s.eval(0.76, 0, dd) == 0.0);
  CHECK(s.eval(0.1, 0, dd) == 0.0);
}

TEST_CASE("two-bump signal has opposite lobes") {
  const SignalSpec s = SignalSpec::two_bump(3.0, 0.25, 0.75, 0.1, 1.0);
  const DesignDensity dd = DesignDensity::uniform();
  CHECK(s.eval(0.25, 0, dd) == doctest::Approx(3.0));
  CHECK(s.eval(0.75, 0, dd) == doctest::Approx(-3.0));
  CHECK(s.eval(0.5, 0, dd) == 0.0);
}

TEST_CASE("sqrt(h) coupling divides by the design density root") {
  SignalSpec s = SignalSpec::constant(2.0);
  s.over_sqrt_h = true;
  const DesignDensity dd = DesignDensity::linear(1.0);
  const double h = dd.density_at(0.5);
  CHECK(s.eval(0.5, 0, dd) == doctest::Approx(2.0 / std::sqrt(h)).epsilon(1e-14));
}

TEST_CASE("noise profiles") {
  CHECK(NoiseProfile::constant(2.0).scale_at(0.3, 0) == 2.0);
  CHECK(NoiseProfile::linear(1.0, 2.0).scale_at(0.5, 0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(NoiseProfile::constant(0.0), InvalidArgument);
  CHECK_THROWS_AS(NoiseProfile::linear(1.0, -1.5), InvalidArgument);
  CHECK_THROWS_AS(NoiseProfile::custom({1.0, -1.0}), InvalidArgument);
  CHECK(NoiseProfile::parse("linear:1:2").spec() ==
        NoiseProfile::linear(1.0, 2.0).spec());
  CHECK_THROWS_AS(NoiseProfile::parse("spline:1"), InvalidArgument);
}

TEST_CASE("gen_dataset is seed deterministic") {
  const NoiseSpec noise = NoiseSpec::of(ErrorLaw::student_t(3));
  const Dataset a = gen_dataset(25, DesignDensity::uniform(),
                                SignalSpec::constant(1.0), noise, 99);
  const Dataset b = gen_dataset(25, DesignDensity::uniform(),
                                SignalSpec::constant(1.0), noise, 99);
  const Dataset c = gen_dataset(25, DesignDensity::uniform(),
                                SignalSpec::constant(1.0), noise, 100);
  CHECK(a.y() == b.y());
  CHECK(a.y() != c.y());
}

TEST_CASE("unit samplers match their distribution functions") {
  const std::size_t m = 40000;
  Rng rng(52, 0);
  std::size_t norm_hits = 0, lap_hits = 0, logi_hits = 0, t3_hits = 0;
  std::size_t sym = 0;
  for (std::size_t i = 0; i < m; ++i) {
    norm_hits += (rng.next_normal() <= 0.5);
    lap_hits += (rng.next_laplace() <= 0.5);
    logi_hits += (rng.next_logistic() <= 1.0);
    const double t = rng.next_student_t(3);
    t3_hits += (std::abs(t) <= 0.7649);  // quartile of Student-t(3)
    sym += (t > 0.0);
  }
  const double se = 3.0 / (2.0 * std::sqrt(static_cast<double>(m)));
  CHECK(std::abs(norm_hits / double(m) - 0.6915) <= se);
  CHECK(std::abs(lap_hits / double(m) - (1.0 - 0.5 * std::exp(-0.5))) <= se);
  CHECK(std::abs(logi_hits / double(m) - 1.0 / (1.0 + std::exp(-1.0))) <= se);
  CHECK(std::abs(t3_hits / double(m) - 0.5) <= se);
  CHECK(std::abs(sym / double(m) - 0.5) <= se);
}

TEST_CASE("student-t sampling requires integer degrees of freedom") {
  const NoiseSpec bad = NoiseSpec::of(ErrorLaw::student_t(2.5));
  CHECK_THROWS_AS(gen_dataset(4, DesignDensity::uniform(), SignalSpec::zero(),
                              bad, 1),
                  InvalidArgument);
}

TEST_CASE("level experiment is thread deterministic") {
  const NoiseSpec noise = NoiseSpec::of(ErrorLaw::normal(1));
  TestConfig cfg;
  cfg.alpha = 0.1;
  cfg.replicates = 19;
  cfg.kernel = Kernel::epanechnikov();
  const LevelResult a = run_level_experiment(60, 16, DesignDensity::uniform(),
                                             noise, cfg, 7, 1);
  const LevelResult b = run_level_experiment(60, 16, DesignDensity::uniform(),
                                             noise, cfg, 7, 2);
  CHECK(a.rejections == b.rejections);
  CHECK(a.datasets == 60);
  CHECK(a.size == doctest::Approx(a.rejections / 60.0));
  CHECK(a.size >= 0.0);
  CHECK(a.size <= 0.35);
}

TEST_CASE("power experiment endpoints") {
  const NoiseSpec noise = NoiseSpec::of(ErrorLaw::normal(1));
  TestConfig cfg;
  cfg.alpha = 0.1;
  cfg.replicates = 39;
  cfg.kernel = Kernel::epanechnikov();
  const std::vector<double> amps{0.0, 6.0};
  const auto points =
      run_power_experiment(40, 30, DesignDensity::uniform(),
                           SignalSpec::constant(1.0), amps, noise, cfg,
                           /*rho_beta=*/1.0, 11, 2);
  REQUIRE(points.size() == 2);
  CHECK(points[0].amplitude == 0.0);
  CHECK(points[0].rate <= 0.3);  // null cell stays near the level
  CHECK(points[1].rate >= 0.95);  // a 6-sigma constant shift is obvious
  CHECK(points[1].amplitude_rho ==
        doctest::Approx(6.0 / rate_rho(30, 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(
      run_power_experiment(10, 30, DesignDensity::uniform(),
                           SignalSpec::constant(1.0), {}, noise, cfg, 1.0, 1, 1),
      InvalidArgument);
}

TEST_CASE("level validity holds across an alpha grid") {
  const NoiseSpec noise = NoiseSpec::of(ErrorLaw::laplace(1));
  for (const double alpha : {0.01, 0.05, 0.1, 0.2}) {
    TestConfig cfg;
    cfg.alpha = alpha;
    cfg.replicates = 199;
    cfg.kernel = Kernel::epanechnikov();
    const std::size_t m = 300;
    const LevelResult r = run_level_experiment(m, 16, DesignDensity::uniform(),
                                               noise, cfg, 1009, 2);
    const double se = std::sqrt(alpha * (1.0 - alpha) / m);
    CHECK(r.size <= alpha + 3.0 * se);
  }
}

TEST_CASE("power does not grow with the noise scale") {
  TestConfig cfg;
  cfg.alpha = 0.1;
  cfg.replicates = 39;
  cfg.kernel = Kernel::epanechnikov();
  const std::vector<double> amps{1.5};
  const auto quiet = run_power_experiment(
      80, 30, DesignDensity::uniform(), SignalSpec::constant(1.0), amps,
      NoiseSpec::of(ErrorLaw::normal(1)), cfg, 1.0, 21, 2);
  const auto loud = run_power_experiment(
      80, 30, DesignDensity::uniform(), SignalSpec::constant(1.0), amps,
      NoiseSpec::of(ErrorLaw::normal(1), NoiseProfile::constant(2.0)), cfg, 1.0,
      21, 2);
  const double slack =
      2.0 * std::sqrt(quiet[0].se * quiet[0].se + loud[0].se * loud[0].se);
  CHECK(loud[0].rate <= quiet[0].rate + slack);
}

TEST_CASE("robustness comparison smoke") {
  const NoiseSpec noise = NoiseSpec::of(ErrorLaw::student_t(3));
  TestConfig cfg;
  cfg.alpha = 0.1;
  cfg.replicates = 49;
  cfg.kernel = Kernel::epanechnikov();
  GaussianConfig gcfg;
  gcfg.alpha = 0.1;
  gcfg.replicates = 49;
  gcfg.seed = 3;
  gcfg.kernel = Kernel::epanechnikov();
  gcfg.sigma = std::sqrt(3.0);
  const CompareResult r = run_robustness_comparison(
      30, 20, DesignDensity::uniform(), noise, cfg, gcfg, 13, 2);
  CHECK(r.signed_rank.datasets == 30);
  CHECK(r.gaussian.datasets == 30);
  CHECK(r.signed_rank.rejections == r.signed_rank_detections);
  CHECK(r.gaussian.rejections == r.gaussian_detections);
  CHECK(r.gaussian_kappa > 0.0);

  // mismatched kernels are rejected
  gcfg.kernel = Kernel::rectangular();
  CHECK_THROWS_AS(run_robustness_comparison(5, 20, DesignDensity::uniform(),
                                            noise, cfg, gcfg, 13, 1),
                  InvalidArgument);
}

TEST_CASE("design density parsing") {
  CHECK(DesignDensity::parse("uniform").kind == DesignDensity::Kind::Uniform);
  CHECK(DesignDensity::parse("linear:0.5").slope == 0.5);
  CHECK_THROWS_AS(DesignDensity::parse("beta:2"), InvalidArgument);
}

}  // TEST_SUITE

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "msrank/errors.hpp"
#include "msrank/gaussian.hpp"
#include "msrank/simulate.hpp"

using namespace msrank;

TEST_SUITE("gaussian") {

TEST_CASE("local statistic hand example") {
  const std::vector<double> w{1.0, 1.0, 1.0};
  const std::vector<double> y{1.0, -2.0, 3.0};
  CHECK(gaussian_local(w, y, 1.0) ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(gaussian_local(w, std::vector<double>{0.0, 0.0, 0.0}, 1.0) == 0.0);
  CHECK(gaussian_local(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 2.0},
                       1.0) == 0.0);
  CHECK_THROWS_AS(gaussian_local(w, y, 0.0), InvalidArgument);
  CHECK_THROWS_AS(gaussian_local(w, std::vector<double>{1.0}, 1.0),
                  InvalidArgument);
}

TEST_CASE("standardization invariance under joint scaling") {
  Rng rng(41, 0);
  for (int it = 0; it < 200; ++it) {
    const std::size_t m = 1 + rng.next_u64() % 10;
    std::vector<double> w(m), y(m), y2(m);
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = rng.next_unit();
      y[i] = rng.next_normal();
      y2[i] = 2.0 * y[i];  // power of two: exact in floating point
    }
    CHECK(gaussian_local(w, y, 1.0) == gaussian_local(w, y2, 2.0));
  }
}

TEST_CASE("weight table shares the window enumeration with the rank table") {
  Rng rng(42, 0);
  const Dataset d = testutil::random_dataset(rng, 40, false);
  for (const WindowPolicy& p :
       {WindowPolicy::exhaustive(), WindowPolicy::dyadic(),
        WindowPolicy::exhaustive(5)}) {
    const CoefficientTable ct(d, Kernel::epanechnikov(), p);
    const WeightTable wt(d.x(), Kernel::epanechnikov(), p);
    REQUIRE(ct.window_count() == wt.window_count());
    for (std::size_t w = 0; w < ct.window_count(); ++w) {
      CHECK(ct.window(w).j == wt.windows()[w].j);
      CHECK(ct.window(w).k == wt.windows()[w].k);
      CHECK(ct.penalty_of(w) == wt.penalty_of(w));
    }
  }
}

TEST_CASE("gaussian scan hand example") {
  const Dataset d({1.0 / 3, 2.0 / 3, 1.0}, {1.0, -2.0, 3.0});
  const WeightTable t(d.x(), Kernel::rectangular(), WindowPolicy::exhaustive());
  const ScanResult r = gaussian_scan(t, d.y(), 1.0);
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].t == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.records[1].t == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.records[2].t == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  const double expect =
      2.0 / std::sqrt(3.0) - std::sqrt(2.0 * std::log(1.5));
  CHECK(r.t_n == doctest::Approx(expect).epsilon(1e-12));
  // doubling sigma halves every statistic
  const ScanResult r2 = gaussian_scan(t, d.y(), 2.0);
  CHECK(r2.records[1].t == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("null samples are deterministic across thread counts") {
  const auto x = gen_design(30, DesignDensity::uniform());
  const WeightTable t(x, Kernel::epanechnikov(), WindowPolicy::exhaustive());
  const auto a = gaussian_null_samples(t, 300, 9, 1);
  const auto b = gaussian_null_samples(t, 300, 9, 3);
  CHECK(a == b);
  CHECK(gaussian_calibrate(t, 300, 0.1, 9, 2) ==
        gaussian_calibrate(t, 300, 0.1, 9, 1));
}

TEST_CASE("kappa shrinks as alpha grows; B=1 returns the single maximum") {
  const auto x = gen_design(20, DesignDensity::uniform());
  const WeightTable t(x, Kernel::epanechnikov(), WindowPolicy::exhaustive());
  const auto samples = gaussian_null_samples(t, 199, 3, 2);
  const double k05 = conditional_quantile(samples, 0.05);
  const double k10 = conditional_quantile(samples, 0.10);
  const double k20 = conditional_quantile(samples, 0.20);
  CHECK(k05 >= k10);
  CHECK(k10 >= k20);
  const auto one = gaussian_null_samples(t, 1, 11, 1);
  CHECK(conditional_quantile(one, 0.5) == one[0]);
}

TEST_CASE("first-difference scale") {
  const std::vector<double> y{0.0, 1.0, 0.0, 1.0};
  CHECK(first_difference_scale(y) ==
        doctest::Approx(1.4826 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(first_difference_scale(std::vector<double>{1.0, 1.0, 1.0}),
                  DataError);
  // consistency on smooth noise
  Rng rng(43, 0);
  std::vector<double> z(4000);
  for (double& e : z) e = 2.5 * rng.next_normal();
  const double est = first_difference_scale(z);
  CHECK(std::abs(est - 2.5) / 2.5 <= 0.10);
}

TEST_CASE("gaussian_test report wiring") {
  const Dataset d = gen_dataset(40, DesignDensity::uniform(), SignalSpec::zero(),
                                NoiseSpec::of(ErrorLaw::normal(1)), 77);
  GaussianConfig cfg;
  cfg.alpha = 0.1;
  cfg.replicates = 199;
  cfg.seed = 5;
  cfg.sigma.reset();  // estimate from the data
  cfg.threads = 2;
  const TestReport a = gaussian_test(d, cfg);
  const TestReport b = gaussian_test(d, cfg);
  CHECK(a.method == "gaussian");
  REQUIRE(a.sigma.has_value());
  CHECK(*a.sigma == first_difference_scale(d.y()));
  CHECK(a.t_n == b.t_n);
  CHECK(a.kappa == b.kappa);
  CHECK(a.reject == (a.t_n > a.kappa));
  CHECK(a.reject == !a.detection.intervals.empty());

  cfg.sigma = -1.0;
  CHECK_THROWS_AS(gaussian_test(d, cfg), InvalidArgument);
}

TEST_CASE("calibration law matches the observed statistic under the null") {
  // with sigma known and truly Gaussian errors, observed maxima and
  // calibration maxima are draws from one distribution: two-sample KS
  const std::size_t n = 50;
  const auto x = gen_design(n, DesignDensity::uniform());
  const WeightTable t(x, Kernel::epanechnikov(), WindowPolicy::exhaustive());
  const std::size_t m_obs = 400;
  std::vector<double> observed(m_obs);
  for (std::size_t i = 0; i < m_obs; ++i) {
    Rng rng(1000 + i, 7);
    std::vector<double> y(n);
    for (double& e : y) e = rng.next_normal();
    observed[i] = gaussian_scan(t, y, 1.0, false).t_n;
  }
  auto calib = gaussian_null_samples(t, 2000, 55, 2);
  std::sort(observed.begin(), observed.end());
  std::sort(calib.begin(), calib.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double fo = static_cast<double>(i + 1) / m_obs;
    const double fc =
        static_cast<double>(std::upper_bound(calib.begin(), calib.end(),
                                             observed[i]) -
                            calib.begin()) /
        calib.size();
    ks = std::max(ks, std::abs(fo - fc));
  }
  // 99% two-sample DKW-style band
  const double bound =
      1.63 * std::sqrt((m_obs + calib.size()) /
                       (static_cast<double>(m_obs) * calib.size()));
  CHECK(ks <= bound);
}

}  // TEST_SUITE

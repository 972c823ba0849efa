#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "msrank/errors.hpp"
#include "msrank/kernel.hpp"

using namespace msrank;

TEST_SUITE("kernel") {

TEST_CASE("holder beta=1 is the triangle") {
  const Kernel k = make_kernel(KernelKind::Holder, 1.0);
  CHECK(k(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(k(1.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rectangular is constant one") {
  const Kernel k = make_kernel(KernelKind::Rectangular);
  CHECK(k(0.0) == 1.0);
  CHECK(k(0.5) == 1.0);
  CHECK(k(1.0) == 1.0);
}

TEST_CASE("epanechnikov parabola") {
  const Kernel k = Kernel::epanechnikov();
  CHECK(k(0.5) == doctest::Approx(1.0));
  CHECK(k(0.25) == doctest::Approx(0.75));
  CHECK(k(0.0) == doctest::Approx(0.0));
}

TEST_CASE("holder beta > 1 is rejected") {
  CHECK_THROWS_AS(make_kernel(KernelKind::Holder, 2.0), InvalidArgument);
  CHECK_THROWS_AS(Kernel::holder(1.0000001), InvalidArgument);
}

TEST_CASE("bad beta arguments") {
  CHECK_THROWS_AS(make_kernel(KernelKind::Holder, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_kernel(KernelKind::Holder, -0.5), InvalidArgument);
  CHECK_THROWS_AS(make_kernel(KernelKind::Holder), InvalidArgument);
  CHECK_THROWS_AS(make_kernel(KernelKind::Rectangular, 0.5), InvalidArgument);
  CHECK_THROWS_AS(make_kernel(KernelKind::Epanechnikov, 0.5), InvalidArgument);
}

TEST_CASE("rescale examples") {
  CHECK(rescale_eval(Kernel::holder(1.0), 2.0, 4.0, 3.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rescale_eval(Kernel::epanechnikov(), 0.0, 2.0, 0.5) ==
        doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("identity rescale equals plain evaluation") {
  const Kernel k = Kernel::epanechnikov();
  for (double x : {0.0, 0.125, 0.5, 0.875, 1.0})
    CHECK(rescale_eval(k, 0.0, 1.0, x) == k(x));
}

TEST_CASE("degenerate window rejected") {
  CHECK_THROWS_AS(rescale_eval(Kernel::rectangular(), 1.0, 1.0, 1.0),
                  InvalidArgument);
  CHECK_THROWS_AS(rescale_eval(Kernel::rectangular(), 2.0, 1.0, 1.5),
                  InvalidArgument);
}

TEST_CASE("range, endpoint and affine invariance properties") {
  Rng rng(2024, 0);
  for (int it = 0; it < 1000; ++it) {
    const Kernel k = testutil::random_kernel(rng);
    const double s = rng.next_normal();
    const double t = s + 0.1 + rng.next_unit() * 3.0;
    const double x = s + rng.next_unit() * (t - s);
    const double v = rescale_eval(k, s, t, x);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(rescale_eval(k, s, t, s) == k(0.0));
    CHECK(rescale_eval(k, s, t, t) == k(1.0));
    const double a = rng.next_normal();
    const double b = 0.5 + rng.next_unit();
    CHECK(rescale_eval(k, a + b * s, a + b * t, a + b * x) ==
          doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("gamma_norm_sq closed form") {
  CHECK(gamma_norm_sq(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(gamma_norm_sq(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_norm_sq(0.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_norm_sq(1.5), InvalidArgument);
  CHECK_THROWS_AS(gamma_norm_sq(-1.0), InvalidArgument);
}

TEST_CASE("gamma_norm_sq agrees with quadrature") {
  for (double beta : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    const double oracle = testutil::adaptive_quad(
        [beta](double x) {
          const double g = 1.0 - std::pow(std::abs(x), beta);
          return g * g;
        },
        -1.0, 1.0, 1e-13);
    CHECK(std::abs(gamma_norm_sq(beta) - oracle) <= 1e-10);
  }
}

TEST_CASE("spec strings round trip") {
  for (const Kernel& k : {Kernel::rectangular(), Kernel::epanechnikov(),
                          Kernel::holder(0.37), Kernel::holder(1.0)}) {
    CHECK(Kernel::parse(k.spec()) == k);
  }
  CHECK_THROWS_AS(Kernel::parse("gauss"), InvalidArgument);
  CHECK_THROWS_AS(Kernel::parse("holder:abc"), InvalidArgument);
}

}  // TEST_SUITE

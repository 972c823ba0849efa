#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "msrank/errors.hpp"
#include "msrank/ranks.hpp"

using namespace msrank;

TEST_SUITE("ranks") {

TEST_CASE("midranks with ties") {
  const std::vector<double> v{2.0, 2.0, 5.0};
  const std::vector<double> want{1.5, 1.5, 3.0};
  CHECK(local_midranks(v) == want);
}

TEST_CASE("midranks of distinct values are ordinary ranks") {
  const std::vector<double> v{3.0, 1.0, 2.0};
  const std::vector<double> want{3.0, 1.0, 2.0};
  CHECK(local_midranks(v) == want);
}

TEST_CASE("singleton") {
  const std::vector<double> v{7.0};
  CHECK(local_midranks(v) == std::vector<double>{1.0});
}

TEST_CASE("empty input throws") {
  CHECK_THROWS_AS(local_midranks(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("midranks match the counting formula on random data") {
  Rng rng(11, 0);
  for (int it = 0; it < 1000; ++it) {
    const std::size_t m = 1 + rng.next_u64() % 30;
    std::vector<double> v(m);
    for (double& e : v) {
      e = std::abs(rng.next_normal());
      if (rng.next_unit() < 0.4) e = std::round(e * 4.0) / 4.0;
    }
    CHECK(local_midranks(v) == testutil::naive_midranks(v));
  }
}

TEST_CASE("sum identity and range hold with ties") {
  Rng rng(12, 0);
  for (int it = 0; it < 1000; ++it) {
    const std::size_t m = 1 + rng.next_u64() % 40;
    std::vector<double> v(m);
    for (double& e : v) e = std::round(std::abs(rng.next_normal()) * 3.0) / 3.0;
    const std::vector<double> r = local_midranks(v);
    double sum = 0.0;
    for (const double e : r) {
      sum += e;
      CHECK(e >= 1.0);
      CHECK(e <= static_cast<double>(m));
    }
    CHECK(sum == 0.5 * static_cast<double>(m) * static_cast<double>(m + 1));
  }
}

TEST_CASE("invariance under strictly increasing transforms") {
  Rng rng(13, 0);
  for (int it = 0; it < 1000; ++it) {
    const std::size_t m = 1 + rng.next_u64() % 25;
    std::vector<double> v(m), g(m);
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = std::abs(rng.next_normal());
      if (rng.next_unit() < 0.3) v[i] = std::round(v[i]);
      g[i] = v[i] * v[i] + 3.0 * v[i];  // strictly increasing on [0, inf)
    }
    CHECK(local_midranks(v) == local_midranks(g));
  }
}

TEST_CASE("window stream walkthrough") {
  // y = (1, -2, 3): midranks of |y| prefixes from the left end
  const Dataset d({0.1, 0.2, 0.3}, {1.0, -2.0, 3.0});
  const std::vector<double> absy = d.abs_y();
  const AbsOrderIndex order(absy);
  WindowRankStream s(order, 0);
  s.extend();
  CHECK(s.midranks()[0] == 1.0);
  CHECK(s.midranks()[1] == 2.0);
  s.extend();
  CHECK(s.right() == 2);
  CHECK(s.midranks()[0] == 1.0);
  CHECK(s.midranks()[1] == 2.0);
  CHECK(s.midranks()[2] == 3.0);
}

TEST_CASE("window stream handles ties") {
  const Dataset d({0.1, 0.2, 0.3}, {2.0, -2.0, 5.0});
  const std::vector<double> absy = d.abs_y();
  const AbsOrderIndex order(absy);
  WindowRankStream s(order, 0);
  s.extend();
  s.extend();
  const std::vector<double> want{1.5, 1.5, 3.0};
  CHECK(std::vector<double>(s.midranks().begin(), s.midranks().end()) == want);
}

TEST_CASE("window stream equals per-window recomputation everywhere") {
  Rng rng(14, 0);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + rng.next_u64() % 23;
    const Dataset d = testutil::random_dataset(rng, n, /*with_ties=*/true);
    const std::vector<double> absy = d.abs_y();
    const AbsOrderIndex order(absy);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      WindowRankStream stream(order, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        stream.extend();
        const std::vector<double> slice(absy.begin() + j, absy.begin() + k + 1);
        const std::vector<double> want = testutil::naive_midranks(slice);
        const auto got = stream.midranks();
        REQUIRE(got.size() == want.size());
        for (std::size_t t = 0; t < want.size(); ++t) CHECK(got[t] == want[t]);
      }
    }
  }
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>

#include "ttlab/rng.hpp"

using namespace ttlab;

TEST_CASE("rng streams are deterministic and decorrelated") {
  Rng a = Rng::derive(42, 0);
  Rng b = Rng::derive(42, 0);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng c = Rng::derive(42, 1);
  Rng d = Rng::derive(42, 0, 7);
  int equal = 0;
  Rng e = Rng::derive(42, 0);
  for (int i = 0; i < 100; ++i) {
    const auto x = e.next();
    equal += (x == c.next()) + (x == d.next());
  }
  CHECK(equal == 0);
}

TEST_CASE("uniform and below stay in range") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto k = rng.below(7);
    CHECK(k < 7);
  }
}

TEST_CASE("normal and exponential have the right first moments") {
  Rng rng(11);
  const int n = 200000;
  double sn = 0, sn2 = 0, se = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    se += rng.exponential();
  }
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(std::abs(sn2 / n - 1.0) < 0.02);
  CHECK(std::abs(se / n - 1.0) < 0.01);
}

TEST_CASE("poisson matches mean and variance") {
  Rng rng(13);
  const int n = 200000;
  const double lambda = 3.5;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.poisson(lambda));
    s += k;
    s2 += k * k;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean - lambda) < 0.03);
  CHECK(std::abs(var - lambda) < 0.1);
}

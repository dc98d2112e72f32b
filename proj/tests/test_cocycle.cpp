#include <doctest.h>

#include <cmath>

#include "support/test_systems.hpp"
#include "ttlab/cocycle.hpp"
#include "ttlab/parallel.hpp"

using namespace ttlab;
using namespace ttlab::testing;

namespace {

const MarkovShift& full3() {
  static const MarkovShift s = full_shift(3, std::log(3.0), Sided::one);
  return s;
}

Cocycle unit_steps() { return make_cocycle(full3(), {-1, 0, 1}); }

}  // namespace

TEST_CASE("birkhoff sums are prefix sums of per-symbol values") {
  const Cocycle c = unit_steps();
  const auto sums = birkhoff_sums({2, 2, 0}, c);
  CHECK(sums == std::vector<long long>{0, 1, 2, 1});

  const Cocycle zero = make_cocycle(full3(), {0, 0, 0});
  CHECK(birkhoff_sums({1, 2, 0, 1}, zero) ==
        std::vector<long long>{0, 0, 0, 0, 0});
  CHECK(zero.lattice_span == 0);

  Rng rng(3);
  const Word w = sample_path(full3(), 200, rng);
  const auto s = birkhoff_sums(w, c);
  for (std::size_t n = 1; n < s.size(); ++n)
    CHECK(s[n] - s[n - 1] == c.values[w[n - 1]]);
}

TEST_CASE("centering is enforced with the offending sum reported") {
  CHECK_THROWS_WITH_AS(make_cocycle(full3(), {1, 0, 1}),
                       doctest::Contains("not centered"),
                       std::invalid_argument);
  // Golden-mean Parry has an irrational stationary vector; (1, -2) cannot be
  // centered there, but is exactly centered under the (2/3, 1/3) kernel.
  CHECK_THROWS_AS(make_cocycle(golden_mean_shift(), std::vector<int>{1, -2}),
                  std::invalid_argument);
  CHECK_NOTHROW(make_cocycle(golden_mean_markov(), std::vector<int>{1, -2}));
}

TEST_CASE("exact walk distribution: small cases") {
  const Cocycle c = unit_steps();
  const auto d2 = exact_walk_distribution(full3(), c, 2);
  CHECK(d2.level_prob(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d2.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

  // n = 1 marginal equals the push-forward of the stationary vector.
  const auto d1 = exact_walk_distribution(full3(), c, 1);
  for (int k : {-1, 0, 1})
    CHECK(d1.level_prob(k) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(exact_walk_distribution(full3(), c, 100000),
                  std::length_error);
}

TEST_CASE("exact walk distribution matches a Monte Carlo oracle at n = 1000") {
  const Cocycle c = unit_steps();
  const int n = 1000;
  const auto dist = exact_walk_distribution(full3(), c, n);
  const std::size_t paths = 1000000;
  auto hits = parallel_map<int>(paths, 2, [&](std::size_t i) {
    Rng rng = Rng::derive(2024, 7, i);
    long long level = 0;
    for (int t = 0; t < n; ++t)
      level += c.values[rng.below(3)];
    return level == 0 ? 1 : 0;
  });
  double freq = 0;
  for (int h : hits) freq += h;
  freq /= static_cast<double>(paths);
  const double p0 = dist.level_prob(0);
  const double se = std::sqrt(p0 * (1 - p0) / static_cast<double>(paths));
  CHECK(std::abs(freq - p0) < 3.0 * se);
}

TEST_CASE("walk distribution invariants") {
  const Cocycle c = unit_steps();
  for (int n : {4, 16, 64}) {
    const auto dist = exact_walk_distribution(full3(), c, n);
    CHECK(dist.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist.mean() == doctest::Approx(0.0).epsilon(1e-10));
    // Value-negating symbol involution (0 <-> 2) preserves the measure, so
    // the law of h_n is exactly symmetric.
    for (int k = 1; k <= n; ++k)
      CHECK(dist.level_prob(k) == doctest::Approx(dist.level_prob(-k)).epsilon(1e-12));
  }
}

TEST_CASE("green-kubo variance closed forms") {
  CHECK(unit_steps().sigma2 == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

  const MarkovShift full2 = full_shift(2, std::log(2.0), Sided::one);
  const Cocycle pm1 = make_cocycle(full2, {-1, 1});
  CHECK(pm1.sigma2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pm1.lattice_span == 2);

  // Sticky 3-state chain: Cov_k = (1/4)^k Var(h), so sigma^2 = 10/9.
  const Cocycle sticky = make_cocycle(sticky3_shift(), {-1, 0, 1});
  CHECK(sticky.sigma2 == doctest::Approx(10.0 / 9.0).epsilon(1e-10));

  // Golden-mean Markov with (1,-2): Cov_k = -(-1/2)^{k-1}, sigma^2 = 2/3.
  const Cocycle gm = make_cocycle(golden_mean_markov(), {1, -2});
  CHECK(gm.sigma2 == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(gm.lattice_span == 3);
}

TEST_CASE("green-kubo agrees with the E[h_n^2]/n oracle") {
  for (auto [shift, values] :
       {std::pair{full3(), std::vector<int>{-1, 0, 1}},
        std::pair{golden_mean_markov(), std::vector<int>{1, -2}},
        std::pair{sticky3_shift(), std::vector<int>{-1, 0, 1}}}) {
    const Cocycle c = make_cocycle(shift, values);
    double prev_gap = 0.0;
    for (int n : {256, 512, 1024}) {
      const auto dist = exact_walk_distribution(shift, c, n);
      const double estimate = dist.second_moment() / n;
      const double gap = std::abs(estimate - c.sigma2);
      // O(1/n) agreement: the gap at 2n is about half the gap at n.
      if (prev_gap > 0) CHECK(gap < 0.75 * prev_gap + 1e-9);
      CHECK(gap < 20.0 / n);
      prev_gap = gap;
    }
    // Richardson extrapolation kills the 1/n term.
    const auto d512 = exact_walk_distribution(shift, c, 512);
    const auto d1024 = exact_walk_distribution(shift, c, 1024);
    const double extrap =
        2.0 * d1024.second_moment() / 1024 - d512.second_moment() / 512;
    CHECK(std::abs(extrap - c.sigma2) < 0.01 * c.sigma2);
  }
}

TEST_CASE("fourier eigenvalue: exact values and sigma^2 recovery") {
  const Cocycle c = unit_steps();
  CHECK(std::abs(fourier_eigenvalue(full3(), c, 0.0) - 1.0) < 1e-12);

  // i.i.d. uniform on (-1,0,1): lambda_u = (1 + 2 cos u)/3.
  const auto at_pi = fourier_eigenvalue(full3(), c, M_PI);
  CHECK(at_pi.real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
  CHECK(std::abs(at_pi.imag()) < 1e-10);
  CHECK(std::abs(at_pi) < 1.0);

  for (auto [shift, values] :
       {std::pair{full3(), std::vector<int>{-1, 0, 1}},
        std::pair{full_shift(2, std::log(2.0), Sided::one),
                  std::vector<int>{-1, 1}},
        std::pair{sticky3_shift(), std::vector<int>{-1, 0, 1}}}) {
    const Cocycle cc = make_cocycle(shift, values);
    const double u = 1e-3;
    const double curvature =
        (1.0 - fourier_eigenvalue(shift, cc, u).real()) / (u * u / 2.0);
    CHECK(std::abs(curvature - cc.sigma2) < 0.01 * cc.sigma2);
  }
}

TEST_CASE("fourier eigenvalue detects arithmetic cocycles on a u-grid") {
  const MarkovShift full2 = full_shift(2, std::log(2.0), Sided::one);
  const Cocycle pm1 = make_cocycle(full2, {-1, 1});
  const Cocycle aperiodic = unit_steps();
  double max_mod_pm1 = 0.0, max_mod_aperiodic = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double u = M_PI * i / 1000.0;
    const double m1 = std::abs(fourier_eigenvalue(full2, pm1, u));
    const double m2 = std::abs(fourier_eigenvalue(full3(), aperiodic, u));
    CHECK(m1 <= 1.0 + 1e-12);
    CHECK(m2 <= 1.0 + 1e-12);
    max_mod_pm1 = std::max(max_mod_pm1, m1);
    max_mod_aperiodic = std::max(max_mod_aperiodic, m2);
  }
  CHECK(max_mod_pm1 == doctest::Approx(1.0).epsilon(1e-9));  // span 2
  CHECK(max_mod_aperiodic < 1.0 - 1e-6);                     // span 1
}

TEST_CASE("llt check: exact DP against the gaussian prediction") {
  const Cocycle c = unit_steps();

  // Whole space, n = 2, k = 0: exact 1/3 vs 1/(sigma sqrt(4 pi)).
  const auto res = llt_check(full3(), c, {}, {}, 2, 0);
  CHECK(res.exact == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(res.prediction ==
        doctest::Approx(1.0 / (std::sqrt(2.0 / 3.0) * std::sqrt(4.0 * M_PI)))
            .epsilon(1e-12));

  // k out of the reachable range.
  CHECK(llt_check(full3(), c, {}, {}, 5, 17).exact == 0.0);

  // Two-symbol events, growing n: the normalized error stays bounded.
  const Word a{0, 1}, b{1, 2};
  double first = 0.0;
  for (int n : {250, 500, 1000}) {
    const auto r = llt_check(full3(), c, a, b, n, 0);
    if (first == 0.0) first = r.normalized_error;
    CHECK(r.normalized_error <= 1.25 * first + 0.05);
    CHECK(!r.arithmetic_warning);
  }

  const MarkovShift full2 = full_shift(2, std::log(2.0), Sided::one);
  const Cocycle pm1 = make_cocycle(full2, {-1, 1});
  CHECK(llt_check(full2, pm1, {}, {}, 100, 0).arithmetic_warning);
}

TEST_CASE("llt rejects words longer than the horizon") {
  const Cocycle c = unit_steps();
  CHECK_THROWS_AS(llt_check(full3(), c, {0, 1, 2}, {}, 2, 0),
                  std::invalid_argument);
}

#pragma once

#include <cstdint>
#include <vector>

#include "ttlab/limit_process.hpp"
#include "ttlab/step_function.hpp"

namespace ttlab {

using u128 = unsigned __int128;

// Stirling number of the second kind, exact for 0 <= q <= m <= 30.
u128 stirling2(int m, int q);

// All surjective maps {1..q} -> {0..q0} in lexicographic order;
// count = (q0+1)! S(q, q0+1). Empty when q0+1 > q.
std::vector<std::vector<int>> enumerate_surjections(int q, int q0);

// E[P_lambda^m] = sum_q S(m,q) lambda^q.
double poisson_moment(double lambda, int m);

// E[prod_j int g_j dP] for a Poisson process P with piecewise-constant
// intensity, via set-partition expansion (exact).
double poisson_integral_moment(const std::vector<StepFunction>& gs,
                               const StepFunction& intensity);

// Joint interval-count moment request: times 0 = t_0 < t_1 < ... < t_K with
// positive integer exponents per interval.
struct MomentSpec {
  std::vector<double> times;   // t_1..t_K (t_0 = 0 implicit)
  std::vector<int> exponents;  // m-bar_1..m-bar_K

  int total() const;
  void validate(int max_total) const;
};

// Exponent matrix of a local-time product integrand: entry (u, w) is the
// power of L_{t_w}(s_u) - L_{t_{w-1}}(s_u), u = 0..q0 (s_0 = 0 fixed, the
// rest integrated over R).
struct ColoringMatrix {
  int q0 = 0;
  int blocks = 0;              // K
  std::vector<int> z;          // (q0+1) x K, row-major

  int at(int u, int w) const { return z[static_cast<std::size_t>(u) * blocks + w]; }
  void validate() const;
};

struct McParams {
  std::size_t paths = 10000;
  std::size_t steps_per_unit = 20000;
  std::uint64_t seed = 1;
  int workers = 0;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of
// E[ int prod_{u,w} (L_{t_w}(s_u) - L_{t_{w-1}}(s_u))^{z_{u,w}} ds_1..ds_{q0} ]
// with the inner spatial integral evaluated as a Riemann sum on the banded
// local-time grid per path.
McEstimate H_integral(const ColoringMatrix& z, const MomentSpec& spec,
                      double sigma, const McParams& mc);

struct Q0Term {
  int q0 = 0;
  double value = 0.0;
  double std_error = 0.0;
};

struct LimitMomentResult {
  double value = 0.0;
  double std_error = 0.0;      // 0 for the exact (0,1) route
  bool exact = false;
  std::vector<Q0Term> breakdown;
};

// Joint moment E[prod_v (Z(t_v) - Z(t_{v-1}))^{m-bar_v}] of the limit
// process, by the combinatorial expansion over Stirling numbers and
// colorings, with the local-time integrals estimated on a shared path
// ensemble. (alpha, beta) = (0, 1) evaluates exactly as a product of
// Poisson moments.
LimitMomentResult limit_moment(const ZParams& params, const MomentSpec& spec,
                               const McParams& mc);

// Direct estimate of the same joint moment from sample_Z draws.
McEstimate simulate_limit_moment(const ZParams& params, const MomentSpec& spec,
                                 std::size_t samples,
                                 std::size_t steps_per_unit,
                                 std::uint64_t seed, int workers);

// Joint interval-count moment of a batch of event series (one per trial),
// with jackknife standard error.
McEstimate empirical_joint_moment(const std::vector<EventSeries>& series,
                                  const MomentSpec& spec);

}  // namespace ttlab

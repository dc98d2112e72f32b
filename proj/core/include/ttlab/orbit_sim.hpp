#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ttlab/event_series.hpp"
#include "ttlab/tt_system.hpp"

namespace ttlab {

// Lazily extended realization of one orbit: the streamed x word, its walk,
// and the two-sided y coordinate window. The y side grows on demand from two
// dedicated rng streams (right via the kernel, left via the backward kernel),
// so the realized sequence does not depend on query order.
class OrbitBuffer {
 public:
  OrbitBuffer(const MarkovShift* y_shift, long long anchor, Rng right,
              Rng left, std::uint64_t guard);

  // Pins the initial coordinate window (fixed-ball mode).
  void set_initial(const Word& window);

  Symbol y_at(long long index);
  void ensure_y(long long lo, long long hi);
  long long y_min() const { return anchor_ - static_cast<long long>(bwd_.size()); }
  long long y_max() const { return anchor_ + static_cast<long long>(fwd_.size()) - 1; }

  // Recorded x stream and walk; filled only in record mode.
  Word x;
  std::vector<long long> walk;  // walk[n] = h_n, n = 0..horizon

 private:
  const MarkovShift* y_shift_;
  long long anchor_;          // index of fwd_[0]
  std::vector<Symbol> fwd_;   // indices anchor_, anchor_+1, ...
  std::vector<Symbol> bwd_;   // indices anchor_-1, anchor_-2, ...
  Rng right_rng_, left_rng_;
  std::uint64_t guard_;
};

struct SimOptions {
  std::uint64_t y_guard = 1ull << 28;
  bool record_orbit = false;
  const Word* base_x = nullptr;  // fixed ball mode; sampled when null
  const Word* base_y = nullptr;
};

struct ScanResult {
  std::vector<std::uint64_t> events;  // raw integer event times, increasing
  Word base_x;
  Word base_y;
  BallPairData ball;
  std::uint64_t steps = 0;
  std::shared_ptr<OrbitBuffer> orbit;  // present in record mode
};

// Return events {n in [1, horizon] : x_{n..n+m_X} matches the base x word
// and h_n lies in G_r(y)}, with G_r(y) membership cached per visited level.
ScanResult simulate_returns(const TTSystem& system, double r,
                            std::uint64_t horizon, std::uint64_t seed,
                            const SimOptions& options = {});

struct PointProcessResult {
  EventSeries series;
  BallPairData ball;
};

// Events of simulate_returns over horizon floor(T n_r), times divided by
// n_r; the initial point is conditioned to start in the ball (the base words
// are the sampled initial coordinates).
PointProcessResult point_process(const TTSystem& system, double r, double T,
                                 std::uint64_t seed,
                                 const SimOptions& options = {});

struct ZExtensionResult {
  EventSeries series;
  double mu_ball = 0.0;
};

// Z-extension return process: events {n : x-word return and h_n = 0},
// normalized by mu(B_r^X)^2.
ZExtensionResult z_extension_process(const MarkovShift& x_shift,
                                     const Cocycle& cocycle, double r,
                                     double T, std::uint64_t seed,
                                     const SimOptions& options = {});

struct FirstReturnResult {
  std::optional<std::uint64_t> tau;  // empty when censored at the cap
  BallPairData ball;
  std::uint64_t steps = 0;
};

FirstReturnResult first_return(const TTSystem& system, double r,
                               std::uint64_t cap, std::uint64_t seed,
                               const SimOptions& options = {});

// First return times of one orbit at several nested radii (decreasing r,
// i.e. increasing generation), sharing the streamed orbit. Radii are given
// as x-side cylinder generations, r_i = e^{-lambda_X m_i}; each radius is
// censored at cap_multiplier * n_r(r_i).
struct FirstReturnMultiResult {
  std::vector<std::optional<std::uint64_t>> tau;
  std::vector<BallPairData> balls;
};

FirstReturnMultiResult first_return_multi(const TTSystem& system,
                                          const std::vector<int>& generations,
                                          double cap_multiplier,
                                          std::uint64_t seed,
                                          const SimOptions& options = {});

struct RecurrenceRateResult {
  double mean_slope = 0.0;
  double std_error = 0.0;
  std::vector<double> slopes;          // one per trial with enough points
  std::size_t censored_points = 0;     // radius/trial pairs dropped
  std::vector<std::size_t> all_censored_radii;  // excluded with warning
};

// Per-trial regression of log tau_r against -log r over >= 4 dyadic radii.
RecurrenceRateResult recurrence_rate(const TTSystem& system,
                                     const std::vector<int>& generations,
                                     std::size_t trials, std::uint64_t seed,
                                     double cap_multiplier, int workers);

}  // namespace ttlab

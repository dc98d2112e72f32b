#pragma once

#include <cstdint>
#include <vector>

#include "ttlab/event_series.hpp"
#include "ttlab/rng.hpp"

namespace ttlab {

struct BrownianPath {
  double dt = 0.0;
  double variance_rate = 1.0;   // sigma^2
  std::vector<double> values;   // B at grid times 0, dt, ..., T

  double T() const { return dt * (values.size() - 1); }
};

// Gaussian random walk construction; E[B_T^2] = sigma^2 T.
BrownianPath sample_brownian(double sigma, double T, std::size_t steps,
                             Rng& rng);

// Banded local time snapshots: L[checkpoint][level] with levels spaced eps
// starting at x_min. Occupation is counted trapezoidally along the piecewise
// linear path and divided by eps.
struct LocalTimeField {
  double eps = 0.0;
  double x_min = 0.0;
  std::size_t num_levels = 0;
  std::vector<double> checkpoints;
  std::vector<double> table;  // [checkpoint][level]

  double at(std::size_t checkpoint, std::size_t level) const {
    return table[checkpoint * num_levels + level];
  }
  double level_value(std::size_t level) const { return x_min + eps * level; }
  // Riemann integral over space of the last checkpoint row.
  double integral_at(std::size_t checkpoint) const;
};

LocalTimeField local_time(const BrownianPath& path, double eps,
                          std::vector<double> checkpoint_times);

// Convenience overload: single checkpoint at T.
LocalTimeField local_time(const BrownianPath& path, double eps);

// Cumulative occupation curve t -> L_t(level) sampled on the path grid.
std::vector<double> local_time_curve(const BrownianPath& path, double level,
                                     double eps);

// Terminal local time with the two-band kink correction (see local_time);
// clamped at zero for barely-visited levels.
double local_time_total_corrected(const BrownianPath& path, double level,
                                  double eps);

// Default band width for a given resolution: 10 sqrt(sigma^2 dt).
double default_band_eps(double sigma, double dt);

struct ZParams {
  double alpha = 1.0;  // in [0,1]
  double beta = 0.0;   // in [0,1], max(alpha,beta) = 1
  double sigma = 1.0;  // sqrt of the Brownian variance rate
};

void validate_z_params(const ZParams& params);

// Samples the compound limit process Z_{alpha,beta} on (0, T]: Poisson
// processes of intensity sqrt(alpha) read through the local time at the
// origin atom plus a two-sided Poisson cloud of intensity beta/sqrt(alpha)
// restricted to the path range. (alpha,beta) = (0,1) is a standard Poisson
// process.
EventSeries sample_Z(const ZParams& params, double T,
                     std::size_t steps_per_unit, Rng& rng);

// First-return limit law sigma^2 E^2 / N^2 with E standard exponential and
// N standard normal, independent.
double sample_first_return_limit(double sigma, Rng& rng);

}  // namespace ttlab

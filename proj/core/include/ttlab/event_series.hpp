#pragma once

#include <cstdint>
#include <vector>

namespace ttlab {

// Sorted normalized event times of a return point process.
struct EventSeries {
  std::vector<double> times;   // strictly increasing, all <= horizon
  double normalization = 1.0;  // n_r used to rescale raw integer times
  std::uint64_t raw_count = 0;
  double horizon = 0.0;        // T

  std::uint64_t count_in(double t0, double t1) const {
    std::uint64_t n = 0;
    for (double t : times) n += (t > t0 && t <= t1) ? 1 : 0;
    return n;
  }
};

}  // namespace ttlab

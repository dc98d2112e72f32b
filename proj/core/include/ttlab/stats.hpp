#pragma once

#include <cstdint>
#include <vector>

namespace ttlab {

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  std::size_t count = 0;
};

SampleSummary summarize(const std::vector<double>& xs);

// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|; inputs are sorted
// in place if needed by the caller (this function sorts copies).
double ks_distance(std::vector<double> a, std::vector<double> b);

// Variant for right-censored first samples: `a` holds the uncensored values
// and `a_total` the full sample size including censored-above-cap entries;
// the supremum runs over observed values up to the cap.
double ks_distance_censored(std::vector<double> a, std::size_t a_total,
                            std::vector<double> b, double cap);

// Approximate two-sample critical value c(alpha) sqrt((n+m)/(n m)) with
// c(0.05) = 1.358, c(0.01) = 1.628.
double ks_critical(double alpha, std::size_t n, std::size_t m);

}  // namespace ttlab

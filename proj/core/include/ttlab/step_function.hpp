#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ttlab {

// Piecewise-constant function with compact support: value values[i] on
// [breaks[i], breaks[i+1]), zero outside [breaks.front(), breaks.back()).
struct StepFunction {
  std::vector<double> breaks;  // size k+1, strictly increasing
  std::vector<double> values;  // size k

  StepFunction() = default;
  StepFunction(std::vector<double> b, std::vector<double> v)
      : breaks(std::move(b)), values(std::move(v)) {
    if (breaks.size() != values.size() + 1 || values.empty())
      throw std::invalid_argument("StepFunction: breaks must be values+1");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      if (!(breaks[i] < breaks[i + 1]))
        throw std::invalid_argument("StepFunction: breaks must increase");
  }

  double operator()(double x) const {
    if (x < breaks.front() || x >= breaks.back()) return 0.0;
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    return values[static_cast<std::size_t>(it - breaks.begin()) - 1];
  }

  double support_lo() const { return breaks.front(); }
  double support_hi() const { return breaks.back(); }
};

// Integral of prod_j fs[j] against the density `intensity`, evaluated
// exactly on the merged breakpoint grid.
inline double product_integral(const std::vector<const StepFunction*>& fs,
                               const StepFunction& intensity) {
  std::vector<double> cuts(intensity.breaks);
  for (const auto* f : fs)
    cuts.insert(cuts.end(), f->breaks.begin(), f->breaks.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    double prod = intensity(mid);
    for (const auto* f : fs) {
      if (prod == 0.0) break;
      prod *= (*f)(mid);
    }
    total += prod * (cuts[i + 1] - cuts[i]);
  }
  return total;
}

}  // namespace ttlab

#include "ttlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttlab {

SampleSummary summarize(const std::vector<double>& xs) {
  if (xs.empty()) throw std::domain_error("summarize: empty sample");
  SampleSummary s;
  s.count = xs.size();
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(s.count);
  for (double x : xs) s.variance += (x - s.mean) * (x - s.mean);
  s.variance /= s.count > 1 ? static_cast<double>(s.count - 1) : 1.0;
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.count));
  return s;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::domain_error("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_distance_censored(std::vector<double> a, std::size_t a_total,
                            std::vector<double> b, double cap) {
  if (a.empty() || b.empty() || a_total < a.size())
    throw std::domain_error("ks_distance_censored: bad sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a_total);
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    if (x > cap) break;
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) /
                       (static_cast<double>(n) * static_cast<double>(m)));
}

}  // namespace ttlab

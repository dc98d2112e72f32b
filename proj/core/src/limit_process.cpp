#include "ttlab/limit_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttlab {

BrownianPath sample_brownian(double sigma, double T, std::size_t steps,
                             Rng& rng) {
  if (steps < 1) throw std::invalid_argument("sample_brownian: steps >= 1");
  BrownianPath path;
  path.dt = T / static_cast<double>(steps);
  path.variance_rate = sigma * sigma;
  path.values.resize(steps + 1);
  path.values[0] = 0.0;
  const double sd = sigma * std::sqrt(path.dt);
  for (std::size_t i = 0; i < steps; ++i)
    path.values[i + 1] = path.values[i] + sd * rng.normal();
  return path;
}

double default_band_eps(double sigma, double dt) {
  return 10.0 * sigma * std::sqrt(dt);
}

namespace {

// Time spent by the linear segment a->b (duration dt) inside
// [lo, lo + eps), as a fraction of dt.
inline double segment_band_fraction(double a, double b, double lo, double hi) {
  if (a == b) return (a >= lo && a < hi) ? 1.0 : 0.0;
  const double smin = std::min(a, b), smax = std::max(a, b);
  const double overlap = std::min(smax, hi) - std::max(smin, lo);
  return overlap > 0.0 ? overlap / (smax - smin) : 0.0;
}

}  // namespace

std::vector<double> local_time_curve(const BrownianPath& path, double level,
                                     double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("local_time: eps > 0");
  const double lo = level - eps / 2.0, hi = level + eps / 2.0;
  std::vector<double> curve(path.values.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < path.values.size(); ++i) {
    acc += path.dt *
           segment_band_fraction(path.values[i], path.values[i + 1], lo, hi) /
           eps;
    curve[i + 1] = acc;
  }
  return curve;
}

double local_time_total_corrected(const BrownianPath& path, double level,
                                  double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("local_time: eps > 0");
  // Two-band extrapolation 2 occ(eps)/eps - occ(2 eps)/(2 eps): the expected
  // occupation density has a |x| kink at the starting level, so the single
  // band carries an O(eps) bias there that the second band cancels.
  double inner = 0.0, outer = 0.0;
  for (std::size_t i = 0; i + 1 < path.values.size(); ++i) {
    const double a = path.values[i], b = path.values[i + 1];
    inner += segment_band_fraction(a, b, level - eps / 2.0, level + eps / 2.0);
    outer += segment_band_fraction(a, b, level - eps, level + eps);
  }
  const double value = path.dt * (2.0 * inner - 0.5 * outer) / eps;
  return std::max(value, 0.0);
}

LocalTimeField local_time(const BrownianPath& path, double eps,
                          std::vector<double> checkpoint_times) {
  if (!(eps > 0.0)) throw std::invalid_argument("local_time: eps > 0");
  std::sort(checkpoint_times.begin(), checkpoint_times.end());

  const auto [mn, mx] =
      std::minmax_element(path.values.begin(), path.values.end());
  LocalTimeField field;
  field.eps = eps;
  // Grid aligned so that level 0 sits at a bin center.
  const long long j_lo =
      static_cast<long long>(std::floor((*mn - eps) / eps));
  const long long j_hi = static_cast<long long>(std::ceil((*mx + eps) / eps));
  field.x_min = j_lo * eps;
  field.num_levels = static_cast<std::size_t>(j_hi - j_lo + 1);
  field.checkpoints = checkpoint_times;
  field.table.assign(checkpoint_times.size() * field.num_levels, 0.0);

  std::vector<double> row(field.num_levels, 0.0);
  std::size_t next_cp = 0;
  // Checkpoints at t <= 0 keep the zero row.
  while (next_cp < checkpoint_times.size() && checkpoint_times[next_cp] <= 0.0)
    ++next_cp;
  const std::size_t steps = path.values.size() - 1;
  auto snapshot = [&](std::size_t cp) {
    double* dst = field.table.data() + cp * field.num_levels;
    const double* prev =
        cp > 0 ? field.table.data() + (cp - 1) * field.num_levels : nullptr;
    for (std::size_t j = 0; j < field.num_levels; ++j)
      dst[j] = prev ? std::max(row[j], prev[j]) : std::max(row[j], 0.0);
  };
  for (std::size_t i = 0; i < steps && next_cp < checkpoint_times.size();
       ++i) {
    const double a = path.values[i], b = path.values[i + 1];
    const double smin = std::min(a, b), smax = std::max(a, b);
    // Same two-band Richardson rule as local_time_curve; bins within eps of
    // the segment range can receive outer-band mass.
    long long j0 = static_cast<long long>(
        std::floor((smin - field.x_min) / eps - 1.0));
    long long j1 = static_cast<long long>(
        std::floor((smax - field.x_min) / eps + 1.0)) + 1;
    j0 = std::max(j0, 0LL);
    j1 = std::min(j1, static_cast<long long>(field.num_levels) - 1);
    for (long long j = j0; j <= j1; ++j) {
      const double center = field.x_min + j * eps;
      const double inner =
          segment_band_fraction(a, b, center - eps / 2.0, center + eps / 2.0);
      const double outer =
          segment_band_fraction(a, b, center - eps, center + eps);
      row[static_cast<std::size_t>(j)] +=
          path.dt * (2.0 * inner - 0.5 * outer) / eps;
    }
    const double t_end = path.dt * (i + 1);
    while (next_cp < checkpoint_times.size() &&
           t_end + 1e-12 * path.dt >= checkpoint_times[next_cp]) {
      snapshot(next_cp);
      ++next_cp;
    }
  }
  // Checkpoints at or beyond T take the final row.
  for (; next_cp < checkpoint_times.size(); ++next_cp) snapshot(next_cp);
  return field;
}

LocalTimeField local_time(const BrownianPath& path, double eps) {
  return local_time(path, eps, {path.T()});
}

double LocalTimeField::integral_at(std::size_t checkpoint) const {
  double s = 0.0;
  const double* row = table.data() + checkpoint * num_levels;
  for (std::size_t j = 0; j < num_levels; ++j) s += row[j];
  return s * eps;
}

void validate_z_params(const ZParams& params) {
  if (params.alpha < 0.0 || params.alpha > 1.0 || params.beta < 0.0 ||
      params.beta > 1.0)
    throw std::invalid_argument("Z params must lie in [0,1]^2");
  if (std::max(params.alpha, params.beta) != 1.0)
    throw std::invalid_argument("Z params require max(alpha, beta) = 1");
  if (params.alpha == 0.0 && params.beta != 1.0)
    throw std::invalid_argument("alpha = 0 requires beta = 1");
  if (!(params.sigma > 0.0))
    throw std::invalid_argument("Z params require sigma > 0");
}

namespace {

// Events of one atom: crossing times of the occupation curve over a Poisson
// grid of intensity rate on the value axis, linearly interpolated between
// path grid times.
void emit_atom_events(const std::vector<double>& curve, double dt, double rate,
                      Rng& rng, std::vector<double>& events) {
  const double total = curve.back();
  double threshold = rng.exponential() / rate;
  if (threshold > total) return;
  std::size_t i = 1;
  while (threshold <= total) {
    while (i < curve.size() && curve[i] < threshold) ++i;
    if (i >= curve.size()) break;
    const double prev = curve[i - 1];
    const double gain = curve[i] - prev;
    const double frac = gain > 0.0 ? (threshold - prev) / gain : 1.0;
    events.push_back(dt * (static_cast<double>(i - 1) + frac));
    threshold += rng.exponential() / rate;
  }
}

}  // namespace

EventSeries sample_Z(const ZParams& params, double T,
                     std::size_t steps_per_unit, Rng& rng) {
  validate_z_params(params);
  EventSeries series;
  series.horizon = T;
  series.normalization = 1.0;
  if (T <= 0.0) return series;

  if (params.alpha == 0.0) {
    // Standard Poisson process on (0, T].
    double t = rng.exponential();
    while (t <= T) {
      series.times.push_back(t);
      t += rng.exponential();
    }
    series.raw_count = series.times.size();
    return series;
  }

  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(steps_per_unit * T));
  BrownianPath path = sample_brownian(params.sigma, T, steps, rng);
  const double eps = default_band_eps(params.sigma, path.dt);
  const double root_alpha = std::sqrt(params.alpha);

  std::vector<double> atoms{0.0};
  if (params.beta > 0.0) {
    const auto [mn, mx] =
        std::minmax_element(path.values.begin(), path.values.end());
    const double lo = *mn - eps, hi = *mx + eps;
    const double cloud_rate = params.beta / root_alpha;
    const std::uint64_t count = rng.poisson(cloud_rate * (hi - lo));
    for (std::uint64_t k = 0; k < count; ++k)
      atoms.push_back(lo + (hi - lo) * rng.uniform());
  }

  for (double s : atoms) {
    // The monotone band curve places events in time; its total is rescaled
    // to the two-band corrected mass so counts carry no O(eps) kink bias.
    const auto curve = local_time_curve(path, s, eps);
    if (curve.back() <= 0.0) continue;
    const double corrected = local_time_total_corrected(path, s, eps);
    if (corrected <= 0.0) continue;
    const double rate = root_alpha * corrected / curve.back();
    emit_atom_events(curve, path.dt, rate, rng, series.times);
  }
  std::sort(series.times.begin(), series.times.end());
  series.raw_count = series.times.size();
  return series;
}

double sample_first_return_limit(double sigma, Rng& rng) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("sample_first_return_limit: sigma > 0");
  const double e = rng.exponential();
  double n = rng.normal();
  while (n == 0.0) n = rng.normal();
  return sigma * sigma * e * e / (n * n);
}

}  // namespace ttlab

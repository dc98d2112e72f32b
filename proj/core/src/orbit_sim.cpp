#include "ttlab/orbit_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ttlab/parallel.hpp"

namespace ttlab {

OrbitBuffer::OrbitBuffer(const MarkovShift* y_shift, long long anchor,
                         Rng right, Rng left, std::uint64_t guard)
    : y_shift_(y_shift),
      anchor_(anchor),
      right_rng_(right),
      left_rng_(left),
      guard_(guard) {}

void OrbitBuffer::set_initial(const Word& window) {
  fwd_.assign(window.begin(), window.end());
}

Symbol OrbitBuffer::y_at(long long index) {
  if (y_shift_ == nullptr)
    throw std::logic_error("OrbitBuffer has no y shift attached");
  if (static_cast<std::uint64_t>(std::abs(index - anchor_)) > guard_)
    throw std::runtime_error(
        "y window guard exceeded; reduce the horizon or raise y_guard");
  if (fwd_.empty()) {
    // First query seeds the window anchor from the stationary vector.
    double u = right_rng_.uniform();
    Symbol s = static_cast<Symbol>(y_shift_->alphabet - 1);
    for (int a = 0; a + 1 < y_shift_->alphabet; ++a) {
      u -= y_shift_->measure.initial[a];
      if (u < 0.0) {
        s = static_cast<Symbol>(a);
        break;
      }
    }
    fwd_.push_back(s);
  }
  if (index >= anchor_) {
    while (static_cast<long long>(fwd_.size()) <= index - anchor_)
      fwd_.push_back(sample_step(*y_shift_, fwd_.back(), right_rng_));
    return fwd_[static_cast<std::size_t>(index - anchor_)];
  }
  while (static_cast<long long>(bwd_.size()) < anchor_ - index) {
    const Symbol from = bwd_.empty() ? y_at(anchor_) : bwd_.back();
    bwd_.push_back(sample_step_backward(*y_shift_, from, left_rng_));
  }
  return bwd_[static_cast<std::size_t>(anchor_ - index - 1)];
}

void OrbitBuffer::ensure_y(long long lo, long long hi) {
  y_at(hi);
  y_at(lo);
}

namespace {

// KMP matching automaton: states 0..L, row-major over the alphabet; state L
// accepts an occurrence ending at the current position.
std::vector<std::uint32_t> build_automaton(const Word& pattern, int alphabet) {
  const int L = static_cast<int>(pattern.size());
  std::vector<std::uint32_t> delta(static_cast<std::size_t>(L + 1) * alphabet);
  for (int a = 0; a < alphabet; ++a)
    delta[a] = (a == pattern[0]) ? 1u : 0u;
  int x = 0;
  for (int j = 1; j <= L; ++j) {
    for (int a = 0; a < alphabet; ++a) {
      const std::uint32_t fallback = delta[static_cast<std::size_t>(x) * alphabet + a];
      delta[static_cast<std::size_t>(j) * alphabet + a] =
          (j < L && pattern[j] == a) ? static_cast<std::uint32_t>(j + 1)
                                     : fallback;
    }
    if (j < L) x = static_cast<int>(delta[static_cast<std::size_t>(x) * alphabet + pattern[j]]);
  }
  return delta;
}

// Lazily evaluated membership of walk levels in G_r(y), one tri-state cell
// per visited level.
class LevelCache {
 public:
  std::int8_t& slot(long long k) {
    if (k >= 0) {
      if (k >= static_cast<long long>(pos_.size()))
        pos_.resize(std::max<std::size_t>(2 * pos_.size(), k + 1), -1);
      return pos_[static_cast<std::size_t>(k)];
    }
    const long long i = -k - 1;
    if (i >= static_cast<long long>(neg_.size()))
      neg_.resize(std::max<std::size_t>(2 * neg_.size(), i + 1), -1);
    return neg_[static_cast<std::size_t>(i)];
  }

 private:
  std::vector<std::int8_t> pos_, neg_;
};

enum class FibreMode { window, level_zero };

struct Engine {
  const MarkovShift& xs;
  const Cocycle& cocycle;
  const MarkovShift* ys;
  FibreMode mode;
  double r;
  std::uint64_t horizon;
  bool stop_at_first;
  const SimOptions& opt;
  std::uint64_t seed;

  ScanResult run() {
    const int A = xs.alphabet;
    const int m_x = ball_generation(r, xs.lyapunov);
    const int L = m_x + 1;
    // Stream 0 samples the base word, stream 3 the continuation, so pinning
    // base words leaves the streamed orbit unchanged for a given seed.
    Rng base_rng = Rng::derive(seed, 0);
    Rng x_rng = Rng::derive(seed, 3);

    ScanResult res;
    if (opt.base_x) {
      if (static_cast<int>(opt.base_x->size()) != L)
        throw std::invalid_argument("base_x length does not match generation");
      if (!is_admissible(xs, *opt.base_x))
        throw std::invalid_argument("base_x is not admissible");
      res.base_x = *opt.base_x;
    } else {
      res.base_x = sample_path(xs, L, base_rng);
    }
    const auto delta = build_automaton(res.base_x, A);

    int w_lo = 0, w_hi = 0;
    LevelCache cache;
    if (mode == FibreMode::window) {
      const int m_y = ball_generation(r, ys->lyapunov);
      std::tie(w_lo, w_hi) = cylinder_window(m_y, ys->sided);
      res.orbit = std::make_shared<OrbitBuffer>(
          ys, w_lo, Rng::derive(seed, 1), Rng::derive(seed, 2), opt.y_guard);
      if (opt.base_y) {
        if (static_cast<int>(opt.base_y->size()) != w_hi - w_lo + 1)
          throw std::invalid_argument("base_y length does not match window");
        if (!is_admissible(*ys, *opt.base_y))
          throw std::invalid_argument("base_y is not admissible");
        res.orbit->set_initial(*opt.base_y);
      }
      res.orbit->ensure_y(w_lo, w_hi);
      res.base_y.resize(w_hi - w_lo + 1);
      for (int j = w_lo; j <= w_hi; ++j)
        res.base_y[static_cast<std::size_t>(j - w_lo)] = res.orbit->y_at(j);
      res.ball = ball_pair_from_measures(cylinder_measure(xs, res.base_x),
                                         cylinder_measure(*ys, res.base_y));
    } else {
      if (opt.record_orbit)
        res.orbit = std::make_shared<OrbitBuffer>(
            nullptr, 0, Rng::derive(seed, 1), Rng::derive(seed, 2),
            opt.y_guard);
      const double mu = cylinder_measure(xs, res.base_x);
      res.ball.mu_ball = mu;
      res.ball.nu_ball = 0.0;
      res.ball.n_r = 1.0 / (mu * mu);
      res.ball.alpha_r = 1.0;
      res.ball.beta_r = 0.0;
    }

    auto in_g = [&](long long k) -> bool {
      std::int8_t& s = cache.slot(k);
      if (s < 0) {
        res.orbit->ensure_y(k + w_lo, k + w_hi);
        s = 1;
        for (int j = w_lo; j <= w_hi; ++j) {
          if (res.orbit->y_at(k + j) != res.base_y[static_cast<std::size_t>(j - w_lo)]) {
            s = 0;
            break;
          }
        }
      }
      return s != 0;
    };

    const bool record = opt.record_orbit && res.orbit != nullptr;
    const bool uniform_x = xs.is_full_uniform();
    const std::uint64_t p_end = horizon + static_cast<std::uint64_t>(L) - 1;
    std::vector<long long> ring(L + 1);
    std::uint32_t state = 0;
    long long level = 0;
    Symbol prev = res.base_x.empty() ? Symbol{0} : res.base_x.back();

    if (record) {
      res.orbit->x.reserve(std::min<std::uint64_t>(p_end + 1, 1 << 20));
      res.orbit->walk.reserve(std::min<std::uint64_t>(horizon + 1, 1 << 20));
    }

    for (std::uint64_t p = 0; p <= p_end; ++p) {
      ring[p % (L + 1)] = level;
      Symbol sym;
      if (p < static_cast<std::uint64_t>(L))
        sym = res.base_x[static_cast<std::size_t>(p)];
      else
        sym = uniform_x ? static_cast<Symbol>(x_rng.below(A))
                        : sample_step(xs, prev, x_rng);
      prev = sym;
      if (record) {
        res.orbit->x.push_back(sym);
        if (p <= horizon) res.orbit->walk.push_back(level);
      }
      state = delta[static_cast<std::size_t>(state) * A + sym];
      if (state == static_cast<std::uint32_t>(L)) {
        const std::uint64_t n = p - L + 1;
        if (n >= 1 && n <= horizon) {
          const long long h_n = ring[n % (L + 1)];
          const bool hit =
              mode == FibreMode::level_zero ? (h_n == 0) : in_g(h_n);
          if (hit) {
            res.events.push_back(n);
            if (stop_at_first) {
              res.steps = p + 1;
              return res;
            }
          }
        }
      }
      level += cocycle.values[sym];
    }
    res.steps = p_end + 1;
    return res;
  }
};

double safe_horizon(double t, double n_r) {
  const double h = std::floor(t * n_r);
  if (h >= 9.0e18)
    throw std::length_error("requested horizon exceeds the 2^63 step budget");
  return h;
}

}  // namespace

ScanResult simulate_returns(const TTSystem& system, double r,
                            std::uint64_t horizon, std::uint64_t seed,
                            const SimOptions& options) {
  Engine eng{system.x_shift, system.cocycle, &system.y_shift,
             FibreMode::window, r,           horizon,
             false,            options,      seed};
  return eng.run();
}

PointProcessResult point_process(const TTSystem& system, double r, double T,
                                 std::uint64_t seed,
                                 const SimOptions& options) {
  if (!(T >= 0.0)) throw std::invalid_argument("point_process: T >= 0");
  // Resolve the ball first to get n_r; the engine reuses the same base words
  // because the derived rng streams coincide.
  Engine probe{system.x_shift, system.cocycle, &system.y_shift,
               FibreMode::window, r,           0,
               false,            options,      seed};
  ScanResult head = probe.run();
  const double n_r = head.ball.n_r;
  const std::uint64_t horizon =
      static_cast<std::uint64_t>(safe_horizon(T, n_r));

  SimOptions opts = options;
  // Pin the sampled base words so the full run is the same ball.
  Word base_x = head.base_x, base_y = head.base_y;
  opts.base_x = &base_x;
  opts.base_y = &base_y;
  Engine eng{system.x_shift, system.cocycle, &system.y_shift,
             FibreMode::window, r,           horizon,
             false,            opts,         seed};
  ScanResult scan = eng.run();

  PointProcessResult out;
  out.ball = scan.ball;
  out.series.normalization = n_r;
  out.series.horizon = T;
  out.series.raw_count = scan.events.size();
  out.series.times.reserve(scan.events.size());
  for (std::uint64_t n : scan.events)
    out.series.times.push_back(static_cast<double>(n) / n_r);
  return out;
}

ZExtensionResult z_extension_process(const MarkovShift& x_shift,
                                     const Cocycle& cocycle, double r,
                                     double T, std::uint64_t seed,
                                     const SimOptions& options) {
  if (!(T >= 0.0)) throw std::invalid_argument("z_extension_process: T >= 0");
  const int L = ball_generation(r, x_shift.lyapunov) + 1;
  Word base_x;
  if (options.base_x) {
    base_x = *options.base_x;
  } else {
    Rng x_rng = Rng::derive(seed, 0);
    base_x = sample_path(x_shift, static_cast<std::size_t>(L), x_rng);
  }
  const double mu = cylinder_measure(x_shift, base_x);
  const double n_r = 1.0 / (mu * mu);
  const std::uint64_t horizon =
      static_cast<std::uint64_t>(safe_horizon(T, n_r));

  SimOptions opts = options;
  opts.base_x = &base_x;
  Engine eng{x_shift, cocycle, nullptr, FibreMode::level_zero, r, horizon,
             false,   opts,    seed};
  ScanResult scan = eng.run();

  ZExtensionResult out;
  out.mu_ball = mu;
  out.series.normalization = n_r;
  out.series.horizon = T;
  out.series.raw_count = scan.events.size();
  out.series.times.reserve(scan.events.size());
  for (std::uint64_t n : scan.events)
    out.series.times.push_back(static_cast<double>(n) / n_r);
  return out;
}

FirstReturnResult first_return(const TTSystem& system, double r,
                               std::uint64_t cap, std::uint64_t seed,
                               const SimOptions& options) {
  if (cap < 1) throw std::invalid_argument("first_return: cap >= 1");
  Engine eng{system.x_shift, system.cocycle, &system.y_shift,
             FibreMode::window, r,           cap,
             true,             options,      seed};
  ScanResult scan = eng.run();
  FirstReturnResult out;
  out.ball = scan.ball;
  out.steps = scan.steps;
  if (!scan.events.empty()) out.tau = scan.events.front();
  return out;
}

FirstReturnMultiResult first_return_multi(const TTSystem& system,
                                          const std::vector<int>& generations,
                                          double cap_multiplier,
                                          std::uint64_t seed,
                                          const SimOptions& options) {
  const MarkovShift& xs = system.x_shift;
  const MarkovShift& ys = system.y_shift;
  const int A = xs.alphabet;
  const std::size_t R = generations.size();
  if (R == 0) throw std::invalid_argument("first_return_multi: no radii");
  for (std::size_t i = 0; i + 1 < R; ++i)
    if (generations[i] >= generations[i + 1])
      throw std::invalid_argument("generations must be strictly increasing");

  Rng base_rng = Rng::derive(seed, 0);
  Rng x_rng = Rng::derive(seed, 3);
  const int l_max = generations.back() + 1;
  const Word prefix = sample_path(xs, static_cast<std::size_t>(l_max), base_rng);

  struct Radius {
    int len = 0;
    int w_lo = 0, w_hi = 0;
    std::vector<std::uint32_t> delta;
    std::uint32_t state = 0;
    std::uint64_t cap = 0;
    LevelCache cache;
    Word base_y;
    bool resolved = false;
    std::optional<std::uint64_t> tau;
  };

  // The y anchor must cover the widest window; anchor at the deepest w_lo.
  const double r_min =
      cylinder_radius(generations.back(), xs.lyapunov);
  const int m_y_max = ball_generation(r_min, ys.lyapunov);
  const auto [wide_lo, wide_hi] = cylinder_window(m_y_max, ys.sided);
  OrbitBuffer orbit_anchored(&ys, wide_lo, Rng::derive(seed, 1),
                             Rng::derive(seed, 2), options.y_guard);
  orbit_anchored.ensure_y(wide_lo, wide_hi);

  FirstReturnMultiResult out;
  out.tau.resize(R);
  out.balls.resize(R);

  std::vector<Radius> radii(R);
  std::uint64_t max_cap = 0;
  for (std::size_t i = 0; i < R; ++i) {
    Radius& rad = radii[i];
    rad.len = generations[i] + 1;
    const double r = cylinder_radius(generations[i], xs.lyapunov);
    const int m_y = ball_generation(r, ys.lyapunov);
    std::tie(rad.w_lo, rad.w_hi) = cylinder_window(m_y, ys.sided);
    rad.base_y.resize(rad.w_hi - rad.w_lo + 1);
    for (int j = rad.w_lo; j <= rad.w_hi; ++j)
      rad.base_y[static_cast<std::size_t>(j - rad.w_lo)] =
          orbit_anchored.y_at(j);
    Word base_x(prefix.begin(), prefix.begin() + rad.len);
    rad.delta = build_automaton(base_x, A);
    out.balls[i] = ball_pair_from_measures(cylinder_measure(xs, base_x),
                                           cylinder_measure(ys, rad.base_y));
    const double cap_d = std::ceil(cap_multiplier * out.balls[i].n_r);
    if (cap_d >= 9.0e18) throw std::length_error("cap exceeds step budget");
    rad.cap = static_cast<std::uint64_t>(cap_d);
    max_cap = std::max(max_cap, rad.cap);
  }

  const bool uniform_x = xs.is_full_uniform();
  const int ring_len = l_max + 1;
  std::vector<long long> ring(ring_len);
  long long level = 0;
  Symbol prev = prefix.back();
  std::size_t unresolved = R;
  const std::uint64_t p_end = max_cap + static_cast<std::uint64_t>(l_max) - 1;

  for (std::uint64_t p = 0; p <= p_end && unresolved > 0; ++p) {
    ring[p % ring_len] = level;
    Symbol sym;
    if (p < static_cast<std::uint64_t>(l_max))
      sym = prefix[static_cast<std::size_t>(p)];
    else
      sym = uniform_x ? static_cast<Symbol>(x_rng.below(A))
                      : sample_step(xs, prev, x_rng);
    prev = sym;
    for (std::size_t i = 0; i < R; ++i) {
      Radius& rad = radii[i];
      if (rad.resolved) continue;
      rad.state = rad.delta[static_cast<std::size_t>(rad.state) * A + sym];
      if (rad.state == static_cast<std::uint32_t>(rad.len)) {
        const std::uint64_t n = p - rad.len + 1;
        if (n >= 1 && n <= rad.cap) {
          const long long h_n = ring[n % ring_len];
          std::int8_t& cell = rad.cache.slot(h_n);
          if (cell < 0) {
            orbit_anchored.ensure_y(h_n + rad.w_lo, h_n + rad.w_hi);
            cell = 1;
            for (int j = rad.w_lo; j <= rad.w_hi; ++j) {
              if (orbit_anchored.y_at(h_n + j) !=
                  rad.base_y[static_cast<std::size_t>(j - rad.w_lo)]) {
                cell = 0;
                break;
              }
            }
          }
          if (cell != 0) {
            rad.tau = n;
            rad.resolved = true;
            --unresolved;
          }
        }
      }
      if (!rad.resolved &&
          p >= rad.cap + static_cast<std::uint64_t>(rad.len) - 1) {
        rad.resolved = true;  // censored
        --unresolved;
      }
    }
    level += system.cocycle.values[sym];
  }

  for (std::size_t i = 0; i < R; ++i) out.tau[i] = radii[i].tau;
  return out;
}

RecurrenceRateResult recurrence_rate(const TTSystem& system,
                                     const std::vector<int>& generations,
                                     std::size_t trials, std::uint64_t seed,
                                     double cap_multiplier, int workers) {
  if (generations.size() < 4)
    throw std::invalid_argument("recurrence_rate: need >= 4 radii");

  struct TrialOut {
    std::optional<double> slope;
    std::vector<std::uint8_t> censored;
  };

  auto results = parallel_map<TrialOut>(trials, workers, [&](std::size_t t) {
    auto fr = first_return_multi(system, generations, cap_multiplier,
                                 derive_trial_seed(seed, t), SimOptions{});
    TrialOut out;
    out.censored.resize(generations.size(), 0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int pts = 0;
    for (std::size_t i = 0; i < generations.size(); ++i) {
      if (!fr.tau[i].has_value()) {
        out.censored[i] = 1;
        continue;
      }
      const double x = system.x_shift.lyapunov * generations[i];  // -log r
      const double y = std::log(static_cast<double>(*fr.tau[i]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++pts;
    }
    if (pts >= 2) {
      const double denom = pts * sxx - sx * sx;
      if (denom > 0) out.slope = (pts * sxy - sx * sy) / denom;
    }
    return out;
  });

  RecurrenceRateResult out;
  std::vector<std::size_t> censored_per_radius(generations.size(), 0);
  for (const auto& res : results) {
    for (std::size_t i = 0; i < generations.size(); ++i) {
      if (res.censored[i]) {
        ++censored_per_radius[i];
        ++out.censored_points;
      }
    }
    if (res.slope) out.slopes.push_back(*res.slope);
  }
  for (std::size_t i = 0; i < generations.size(); ++i)
    if (censored_per_radius[i] == trials) out.all_censored_radii.push_back(i);

  if (out.slopes.empty())
    throw std::runtime_error("recurrence_rate: every trial was censored");
  double mean = 0;
  for (double s : out.slopes) mean += s;
  mean /= out.slopes.size();
  double var = 0;
  for (double s : out.slopes) var += (s - mean) * (s - mean);
  var /= std::max<std::size_t>(1, out.slopes.size() - 1);
  out.mean_slope = mean;
  out.std_error = std::sqrt(var / out.slopes.size());
  return out;
}

}  // namespace ttlab

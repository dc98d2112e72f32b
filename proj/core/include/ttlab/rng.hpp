#pragma once

#include <cmath>
#include <cstdint>

namespace ttlab {

// SplitMix64 step, used to expand seeds and derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-trial seed of a parallel experiment; results depend only on
// (master, trial), never on the worker that picks the trial up.
inline std::uint64_t derive_trial_seed(std::uint64_t master,
                                       std::size_t trial) {
  std::uint64_t sm = master;
  splitmix64(sm);
  return sm ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1));
}

// xoshiro256++ with hand-rolled distributions.
//
// All distribution code is written out explicitly (no <random> distributions)
// so that a (seed, stream) pair reproduces the exact same draws on every
// platform and under every worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  // Independent stream derived from a master seed. Streams for distinct
  // (stream, substream) pairs are decorrelated by seed scrambling.
  static Rng derive(std::uint64_t master, std::uint64_t stream,
                    std::uint64_t substream = 0) {
    std::uint64_t sm = master;
    std::uint64_t a = splitmix64(sm);
    sm = a ^ (0x632be59bd9b4e019ULL + stream * 0x9e3779b97f4a7c15ULL);
    std::uint64_t b = splitmix64(sm);
    sm = b ^ (substream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return Rng(splitmix64(sm));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), unbiased (Lemire's method).
  std::uint32_t below(std::uint32_t n) {
    std::uint64_t x = next() >> 32;
    std::uint64_t m = x * n;
    std::uint32_t low = static_cast<std::uint32_t>(m);
    if (low < n) {
      const std::uint32_t threshold = (-n) % n;
      while (low < threshold) {
        x = next() >> 32;
        m = x * n;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // Standard normal via Marsaglia's polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return u * factor;
  }

  // Standard exponential (mean 1).
  double exponential() { return -std::log1p(-uniform()); }

  // Poisson draw, exact for any lambda >= 0: Knuth's product method applied
  // to chunks of at most 16 to avoid underflow.
  std::uint64_t poisson(double lambda) {
    std::uint64_t total = 0;
    while (lambda > 16.0) {
      total += poisson_knuth(16.0);
      lambda -= 16.0;
    }
    return total + poisson_knuth(lambda);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t poisson_knuth(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    std::uint64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ttlab

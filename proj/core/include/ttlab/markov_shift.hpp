#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttlab/rng.hpp"

namespace ttlab {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

enum class Sided { one, two };

// Stationary Markov measure on a subshift of finite type. Parry measures
// additionally carry the Perron eigendata they were built from.
struct MarkovMeasure {
  std::vector<double> initial;        // stationary vector p, sums to 1
  std::vector<double> kernel;         // row-stochastic A x A, row-major
  double entropy = 0.0;               // -sum p_a P_ab log P_ab
  bool is_parry = false;
  std::vector<double> perron_left;    // u, with u.v = 1 (Parry only)
  std::vector<double> perron_right;   // v (Parry only)

  double p(Symbol a) const { return initial[a]; }
  double k(Symbol a, Symbol b, int alphabet) const {
    return kernel[static_cast<std::size_t>(a) * alphabet + b];
  }
};

struct MarkovShift {
  int alphabet = 0;
  std::vector<std::uint8_t> transitions;  // A x A of {0,1}, row-major
  MarkovMeasure measure;
  double lyapunov = 1.0;
  Sided sided = Sided::one;

  bool allowed(Symbol a, Symbol b) const {
    return transitions[static_cast<std::size_t>(a) * alphabet + b] != 0;
  }
  bool is_full_uniform() const;  // full shift with uniform kernel (fast path)
};

// Ball/cylinder identification data: the ball of radius r around x is the
// cylinder of generation m on indices 0..m (one-sided) or -m..m (two-sided).
struct CylinderBall {
  Word base_word;
  int generation = 0;
  double radius = 0.0;
  Sided sided = Sided::one;
};

struct NonPrimitiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Primitivity check by boolean matrix powering up to A^2. Returns empty
// string when primitive, otherwise a human-readable witness (unreachable
// pair or the period of the transition graph).
std::string primitivity_witness(const std::vector<std::uint8_t>& transitions,
                                int alphabet);

// Maximal-entropy (Parry) measure from Perron eigendata of the transition
// matrix, computed by deterministic power iteration (all-ones start,
// tolerance 1e-13, at most 1e5 iterations). Throws NonPrimitiveError with a
// witness for non-primitive matrices.
MarkovMeasure parry_measure(const std::vector<std::uint8_t>& transitions,
                            int alphabet);

// General Markov measure from an explicit row-stochastic kernel supported on
// the allowed transitions. The stationary vector is computed (or validated
// when `initial` is non-empty).
MarkovMeasure markov_measure(const std::vector<std::uint8_t>& transitions,
                             int alphabet, const std::vector<double>& kernel,
                             const std::vector<double>& initial = {});

// p_{a_0} prod P_{a_i a_{i+1}}. Inadmissible words have measure 0; the empty
// word has measure 1.
double cylinder_measure(const MarkovShift& shift, const Word& word);

bool is_admissible(const MarkovShift& shift, const Word& word);

// m = floor(-log r / lambda), valid for r in (0,1).
int ball_generation(double r, double lambda);

// Index window of the generation-m cylinder: [0, m] or [-m, m].
std::pair<int, int> cylinder_window(int generation, Sided sided);

// Word length of the generation-m cylinder.
inline int cylinder_word_length(int generation, Sided sided) {
  return sided == Sided::two ? 2 * generation + 1 : generation + 1;
}

// Pointwise dimension of the measure: h/lambda one-sided, 2h/lambda
// two-sided.
double dimension(const MarkovShift& shift);

// Exact radius of the generation-m cylinder boundary, r = e^{-lambda m}.
inline double cylinder_radius(int generation, double lambda) {
  return std::exp(-lambda * generation);
}

// Stationary sample path: initial symbol ~ p, transitions ~ kernel.
Word sample_path(const MarkovShift& shift, std::size_t length, Rng& rng);

// Single transition step from symbol a.
Symbol sample_step(const MarkovShift& shift, Symbol a, Rng& rng);

// Backward transition step (stationary chain read right to left):
// P(prev = b | cur = a) = p_b P_ba / p_a.
Symbol sample_step_backward(const MarkovShift& shift, Symbol a, Rng& rng);

// Structured-text shift definition files; schema documented in the README.
MarkovShift parse_shift(const std::string& text);
MarkovShift load_shift(const std::string& path);

}  // namespace ttlab

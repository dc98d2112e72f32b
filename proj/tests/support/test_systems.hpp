#pragma once

#include <cmath>

#include "ttlab/tt_system.hpp"

namespace ttlab::testing {

inline MarkovShift full_shift(int alphabet, double lyapunov, Sided sided) {
  MarkovShift s;
  s.alphabet = alphabet;
  s.transitions.assign(static_cast<std::size_t>(alphabet) * alphabet, 1);
  s.measure = parry_measure(s.transitions, alphabet);
  s.lyapunov = lyapunov;
  s.sided = sided;
  return s;
}

inline MarkovShift golden_mean_shift(double lyapunov = 1.0,
                                     Sided sided = Sided::one) {
  MarkovShift s;
  s.alphabet = 2;
  s.transitions = {1, 1, 1, 0};
  s.measure = parry_measure(s.transitions, 2);
  s.lyapunov = lyapunov;
  s.sided = sided;
  return s;
}

// Golden-mean graph with the Markov kernel [[1/2,1/2],[1,0]]; the stationary
// vector is (2/3, 1/3), which centers the integer cocycle (1, -2) exactly.
inline MarkovShift golden_mean_markov(double lyapunov = 1.0) {
  MarkovShift s;
  s.alphabet = 2;
  s.transitions = {1, 1, 1, 0};
  s.measure = markov_measure(s.transitions, 2, {0.5, 0.5, 1.0, 0.0},
                             {2.0 / 3.0, 1.0 / 3.0});
  s.lyapunov = lyapunov;
  s.sided = Sided::one;
  return s;
}

// Doubly stochastic sticky chain on 3 symbols: kernel (1/4)I + (1/4)J.
// With values (-1, 0, 1) the Green-Kubo variance is 10/9 in closed form.
inline MarkovShift sticky3_shift(double lyapunov = 1.0) {
  MarkovShift s;
  s.alphabet = 3;
  s.transitions.assign(9, 1);
  s.measure = markov_measure(
      s.transitions, 3,
      {0.5, 0.25, 0.25, 0.25, 0.5, 0.25, 0.25, 0.25, 0.5},
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  s.lyapunov = lyapunov;
  s.sided = Sided::one;
  return s;
}

// Case (a) bench system: d_mu = 1 < d_nu = 2, aperiodic cocycle.
inline TTSystem case_a_system() {
  return make_tt_system(full_shift(3, std::log(3.0), Sided::one),
                        full_shift(2, std::log(2.0), Sided::two),
                        {-1, 0, 1});
}

// Case (b) bench system: d_mu = 3 > d_nu = 1.
inline TTSystem case_b_system() {
  return make_tt_system(full_shift(8, std::log(2.0), Sided::one),
                        full_shift(2, std::log(2.0), Sided::one),
                        {-1, 0, 1, 0, 0, -1, 1, 0});
}

}  // namespace ttlab::testing

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ttlab/markov_shift.hpp"

namespace ttlab {

// Integer step function constant on 0-cylinders (one value per symbol),
// centered against the shift's stationary measure.
struct Cocycle {
  std::vector<int> values;
  double sigma2 = 0.0;   // asymptotic variance lim E[h_n^2]/n (Green-Kubo)
  int lattice_span = 1;  // gcd of pairwise value differences; 0 = identically
                         // zero (degenerate); >1 flags an arithmetic cocycle

  int max_abs() const;
  int value(Symbol a) const { return values[a]; }
};

// Validates centering (exactly over rationals when the stationary vector is
// recognizably rational, else to 1e-12), computes the Green-Kubo variance and
// the lattice span. Throws std::invalid_argument with the offending centering
// sum for non-centered input.
Cocycle make_cocycle(const MarkovShift& shift, std::vector<int> values);

// Prefix sums (h_0 = 0, h_1, ..., h_n) of the cocycle along a word.
std::vector<long long> birkhoff_sums(const Word& word, const Cocycle& c);

// Exact joint law of (symbol at time n, h_n) under the stationary start.
struct WalkDistribution {
  int horizon = 0;
  int level_min = 0;  // table covers levels level_min .. level_min+levels-1
  int levels = 0;
  int alphabet = 0;
  std::vector<double> table;  // [level][state], row-major

  double prob(int level, Symbol state) const;
  double level_prob(int level) const;
  double mean() const;
  double second_moment() const;
  double total_mass() const;
};

// Dynamic program over (state, level); the work budget n*A*(2n*max|h|+1) is
// guarded at ~1e8 cells.
WalkDistribution exact_walk_distribution(const MarkovShift& shift,
                                         const Cocycle& c, int n);

// Green-Kubo asymptotic variance Var(h) + 2 sum_{k>=1} Cov(h, h o f^k),
// summed to geometric-tail convergence.
double sigma2_green_kubo(const MarkovShift& shift, const Cocycle& c);

// Modulus-maximal eigenvalue of the A x A matrix P_ab e^{iu h(b)}
// (one-step Fourier perturbation of the transfer operator restricted to
// symbol-dependent cocycles). lambda_0 = 1.
std::complex<double> fourier_eigenvalue(const MarkovShift& shift,
                                        const Cocycle& c, double u);

// Local limit theorem check: exact DP probability of
// {x in [A_word], h_n = k, f^n x in [B_word]} against the Gaussian
// prediction mu(A) mu(B) exp(-k^2/(2 sigma^2 n)) / (sigma sqrt(2 pi n)).
struct LltResult {
  double exact = 0.0;
  double prediction = 0.0;
  double normalized_error = 0.0;  // |exact - prediction| * n / (mu(A)mu(B) m)
  bool arithmetic_warning = false;
};

LltResult llt_check(const MarkovShift& shift, const Cocycle& c,
                    const Word& a_word, const Word& b_word, int n, long long k);

}  // namespace ttlab

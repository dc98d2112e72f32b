#pragma once

#include "ttlab/cocycle.hpp"
#include "ttlab/markov_shift.hpp"

namespace ttlab {

// Skew product F(x,y) = (f(x), g^{h(x)}(y)) over a pair of subshifts.
struct TTSystem {
  MarkovShift x_shift;  // one-sided driving shift
  MarkovShift y_shift;  // two-sided (or one-sided-flagged) fibre shift
  Cocycle cocycle;      // on x_shift
};

TTSystem make_tt_system(MarkovShift x_shift, MarkovShift y_shift,
                        std::vector<int> cocycle_values);

// Per-ball normalization data: n_r = 1/max(mu^2, mu*nu) and the
// (alpha_r, beta_r) classification pair with max(alpha_r, beta_r) = 1.
struct BallPairData {
  double mu_ball = 0.0;
  double nu_ball = 0.0;
  double n_r = 0.0;
  double alpha_r = 0.0;
  double beta_r = 0.0;
};

BallPairData ball_pair_from_measures(double mu_ball, double nu_ball);

BallPairData ball_pair_data(const TTSystem& system, double r,
                            const Word& x_word_base, const Word& y_word_base);

// Deterministic prefactor of Remark-type degenerate scaling:
// exp(-(floor(-log r/lx) lx - floor(-log r/ly) ly) h_mu/h_nu).
double zeta_prefactor(double r, double lambda_x, double lambda_y, double h_mu,
                      double h_nu);

}  // namespace ttlab

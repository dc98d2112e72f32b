#include "ttlab/tt_system.hpp"

#include <cmath>
#include <stdexcept>

namespace ttlab {

TTSystem make_tt_system(MarkovShift x_shift, MarkovShift y_shift,
                        std::vector<int> cocycle_values) {
  if (x_shift.sided != Sided::one)
    throw std::invalid_argument("driving shift must be one-sided");
  TTSystem sys;
  sys.cocycle = make_cocycle(x_shift, std::move(cocycle_values));
  sys.x_shift = std::move(x_shift);
  sys.y_shift = std::move(y_shift);
  return sys;
}

BallPairData ball_pair_from_measures(double mu_ball, double nu_ball) {
  BallPairData d;
  d.mu_ball = mu_ball;
  d.nu_ball = nu_ball;
  d.n_r = 1.0 / std::max(mu_ball * mu_ball, mu_ball * nu_ball);
  if (mu_ball > nu_ball) {
    d.alpha_r = 1.0;
    d.beta_r = nu_ball / mu_ball;
  } else {
    d.alpha_r = mu_ball / nu_ball;
    d.beta_r = 1.0;
  }
  return d;
}

BallPairData ball_pair_data(const TTSystem& system, double r,
                            const Word& x_word_base, const Word& y_word_base) {
  const int mx = ball_generation(r, system.x_shift.lyapunov);
  const int my = ball_generation(r, system.y_shift.lyapunov);
  if (static_cast<int>(x_word_base.size()) !=
      cylinder_word_length(mx, Sided::one))
    throw std::invalid_argument("x base word length does not match generation");
  if (static_cast<int>(y_word_base.size()) !=
      cylinder_word_length(my, system.y_shift.sided))
    throw std::invalid_argument("y base word length does not match generation");
  const double mu = cylinder_measure(system.x_shift, x_word_base);
  const double nu = cylinder_measure(system.y_shift, y_word_base);
  return ball_pair_from_measures(mu, nu);
}

double zeta_prefactor(double r, double lambda_x, double lambda_y, double h_mu,
                      double h_nu) {
  const double mx = std::floor(-std::log(r) / lambda_x + 1e-9);
  const double my = std::floor(-std::log(r) / lambda_y + 1e-9);
  return std::exp(-(mx * lambda_x - my * lambda_y) * h_mu / h_nu);
}

}  // namespace ttlab

#pragma once

#include <Eigen/Eigenvalues>

#include <cstdint>
#include <vector>

#include "ttlab/tt_system.hpp"

namespace ttlab::testing {

// Independent Perron data from Eigen's dense eigensolver; the production
// path uses power iteration, so this is a genuinely separate route.
struct PerronOracle {
  double eigenvalue = 0.0;
  std::vector<double> left;   // u with u.v = 1
  std::vector<double> right;  // v
};

inline PerronOracle eigen_perron(const std::vector<std::uint8_t>& transitions,
                                 int n) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = transitions[static_cast<std::size_t>(i) * n + j];
  Eigen::EigenSolver<Eigen::MatrixXd> right_solver(m);
  Eigen::EigenSolver<Eigen::MatrixXd> left_solver(m.transpose());
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (right_solver.eigenvalues()(i).real() >
        right_solver.eigenvalues()(best).real())
      best = i;
  int best_l = 0;
  for (int i = 1; i < n; ++i)
    if (left_solver.eigenvalues()(i).real() >
        left_solver.eigenvalues()(best_l).real())
      best_l = i;

  PerronOracle out;
  out.eigenvalue = right_solver.eigenvalues()(best).real();
  Eigen::VectorXd v = right_solver.eigenvectors().col(best).real();
  Eigen::VectorXd u = left_solver.eigenvectors().col(best_l).real();
  if (v(0) < 0) v = -v;
  if (u(0) < 0) u = -u;
  const double uv = u.dot(v);
  out.left.resize(n);
  out.right.resize(n);
  for (int i = 0; i < n; ++i) {
    out.left[i] = u(i) / uv;
    out.right[i] = v(i);
  }
  return out;
}

}  // namespace ttlab::testing

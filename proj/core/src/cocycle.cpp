#include "ttlab/cocycle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ttlab {

namespace {

// Recognize x as p/q with q <= max_den via continued fractions.
bool approx_rational(double x, long long max_den, long long& num,
                     long long& den) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(frac);
    if (std::abs(fl) > 9e17) return false;
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) return false;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / q1) < 1e-14 * std::max(1.0, std::abs(x))) {
      num = p1;
      den = q1;
      return true;
    }
    const double rem = frac - fl;
    if (rem < 1e-15) return false;
    frac = 1.0 / rem;
  }
  return false;
}

}  // namespace

int Cocycle::max_abs() const {
  int m = 0;
  for (int v : values) m = std::max(m, std::abs(v));
  return m;
}

Cocycle make_cocycle(const MarkovShift& shift, std::vector<int> values) {
  if (static_cast<int>(values.size()) != shift.alphabet)
    throw std::invalid_argument("cocycle needs one value per symbol");

  // Centering: exact rational arithmetic when the stationary vector is
  // recognizably rational, numeric tolerance otherwise.
  bool rational = true;
  long long common_den = 1;
  std::vector<long long> nums(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) {
    long long num, den;
    if (!approx_rational(shift.measure.initial[a], 1000000, num, den)) {
      rational = false;
      break;
    }
    common_den = std::lcm(common_den, den);
    if (common_den > (1LL << 50)) {
      rational = false;
      break;
    }
    nums[a] = num;
  }
  double center = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a)
    center += shift.measure.initial[a] * values[a];
  bool centered;
  if (rational) {
    long long exact_sum = 0;
    for (std::size_t a = 0; a < values.size(); ++a) {
      long long num, den;
      approx_rational(shift.measure.initial[a], 1000000, num, den);
      exact_sum += num * (common_den / den) * values[a];
    }
    centered = exact_sum == 0;
  } else {
    double scale = 0.0;
    for (std::size_t a = 0; a < values.size(); ++a)
      scale += std::abs(shift.measure.initial[a] * values[a]);
    centered = std::abs(center) <= 1e-12 * std::max(1.0, scale);
  }
  if (!centered) {
    std::ostringstream msg;
    msg << "cocycle not centered: sum p_a h(a) = " << center;
    throw std::invalid_argument(msg.str());
  }

  Cocycle c;
  c.values = std::move(values);

  // Lattice span: for 0-cylinder cocycles the walk is d-arithmetic exactly
  // when all per-symbol values are congruent mod d, so the span is the gcd
  // of pairwise value differences.
  int span = 0;
  for (std::size_t a = 1; a < c.values.size(); ++a)
    span = std::gcd(span, std::abs(c.values[a] - c.values[0]));
  if (span == 0) {
    // Constant cocycle; centered implies identically zero.
    c.lattice_span = 0;
    c.sigma2 = 0.0;
    return c;
  }
  c.lattice_span = span;
  c.sigma2 = sigma2_green_kubo(shift, c);
  return c;
}

std::vector<long long> birkhoff_sums(const Word& word, const Cocycle& c) {
  std::vector<long long> sums(word.size() + 1, 0);
  for (std::size_t i = 0; i < word.size(); ++i)
    sums[i + 1] = sums[i] + c.values[word[i]];
  return sums;
}

double WalkDistribution::prob(int level, Symbol state) const {
  if (level < level_min || level >= level_min + levels) return 0.0;
  return table[static_cast<std::size_t>(level - level_min) * alphabet + state];
}

double WalkDistribution::level_prob(int level) const {
  if (level < level_min || level >= level_min + levels) return 0.0;
  const double* row = table.data() + static_cast<std::size_t>(level - level_min) * alphabet;
  double s = 0.0;
  for (int a = 0; a < alphabet; ++a) s += row[a];
  return s;
}

double WalkDistribution::mean() const {
  double m = 0.0;
  for (int l = 0; l < levels; ++l)
    m += (level_min + l) * level_prob(level_min + l);
  return m;
}

double WalkDistribution::second_moment() const {
  double m = 0.0;
  for (int l = 0; l < levels; ++l) {
    const double x = level_min + l;
    m += x * x * level_prob(level_min + l);
  }
  return m;
}

double WalkDistribution::total_mass() const {
  return std::accumulate(table.begin(), table.end(), 0.0);
}

WalkDistribution exact_walk_distribution(const MarkovShift& shift,
                                         const Cocycle& c, int n) {
  const int A = shift.alphabet;
  const int maxh = c.max_abs();
  const long long width = 2LL * n * std::max(maxh, 1) + 1;
  const long long cells = static_cast<long long>(n) * A * width;
  if (cells > 100000000LL)
    throw std::length_error(
        "exact_walk_distribution: n*A*(2n*max|h|+1) = " + std::to_string(cells) +
        " exceeds the 1e8 cell budget");

  const int off = n * std::max(maxh, 1);
  const std::size_t row = static_cast<std::size_t>(width) * A;
  std::vector<double> cur(row, 0.0), nxt(row, 0.0);
  for (int a = 0; a < A; ++a)
    cur[static_cast<std::size_t>(off) * A + a] = shift.measure.initial[a];

  for (int t = 0; t < n; ++t) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    const long long lo = off - static_cast<long long>(t) * maxh;
    const long long hi = off + static_cast<long long>(t) * maxh;
    for (long long l = std::max(lo, 0LL); l <= std::min(hi, width - 1); ++l) {
      for (int a = 0; a < A; ++a) {
        const double mass = cur[static_cast<std::size_t>(l) * A + a];
        if (mass == 0.0) continue;
        const long long l2 = l + c.values[a];
        for (int b = 0; b < A; ++b) {
          const double k = shift.measure.k(static_cast<Symbol>(a),
                                           static_cast<Symbol>(b), A);
          if (k > 0.0)
            nxt[static_cast<std::size_t>(l2) * A + b] += mass * k;
        }
      }
    }
    cur.swap(nxt);
  }

  WalkDistribution dist;
  dist.horizon = n;
  dist.level_min = -off;
  dist.levels = static_cast<int>(width);
  dist.alphabet = A;
  dist.table = std::move(cur);
  return dist;
}

double sigma2_green_kubo(const MarkovShift& shift, const Cocycle& c) {
  const int A = shift.alphabet;
  const auto& p = shift.measure.initial;

  double var = 0.0;
  for (int a = 0; a < A; ++a) var += p[a] * c.values[a] * c.values[a];

  // w_k(a) = E[h(x_k) | x_0 = a]; Cov_k = sum_a p_a h(a) w_k(a).
  std::vector<double> w(A), w2(A);
  for (int a = 0; a < A; ++a) w[a] = c.values[a];
  double sigma2 = var;
  int quiet = 0;
  for (int k = 1; k <= 1000000; ++k) {
    for (int a = 0; a < A; ++a) {
      double s = 0.0;
      for (int b = 0; b < A; ++b)
        s += shift.measure.k(static_cast<Symbol>(a), static_cast<Symbol>(b), A) * w[b];
      w2[a] = s;
    }
    w.swap(w2);
    double cov = 0.0;
    for (int a = 0; a < A; ++a) cov += p[a] * c.values[a] * w[a];
    sigma2 += 2.0 * cov;
    if (std::abs(cov) < 1e-17 * std::max(1.0, std::abs(sigma2))) {
      if (++quiet >= 50) break;
    } else {
      quiet = 0;
    }
  }
  return std::max(sigma2, 0.0);
}

std::complex<double> fourier_eigenvalue(const MarkovShift& shift,
                                        const Cocycle& c, double u) {
  const int A = shift.alphabet;
  Eigen::MatrixXcd m(A, A);
  for (int a = 0; a < A; ++a)
    for (int b = 0; b < A; ++b) {
      const double k = shift.measure.k(static_cast<Symbol>(a),
                                       static_cast<Symbol>(b), A);
      m(a, b) = k * std::exp(std::complex<double>(0.0, u * c.values[b]));
    }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  const auto& ev = solver.eigenvalues();
  std::complex<double> lead = ev(0);
  for (int i = 1; i < A; ++i)
    if (std::abs(ev(i)) > std::abs(lead)) lead = ev(i);
  return lead;
}

LltResult llt_check(const MarkovShift& shift, const Cocycle& c,
                    const Word& a_word, const Word& b_word, int n,
                    long long k) {
  const int A = shift.alphabet;
  if (!is_admissible(shift, a_word) || !is_admissible(shift, b_word))
    throw std::invalid_argument("llt_check: words must be admissible");
  if (static_cast<int>(a_word.size()) > n)
    throw std::invalid_argument("llt_check: |A_word| must be <= n");

  const int total_steps = n + static_cast<int>(b_word.size());
  const int maxh = std::max(c.max_abs(), 1);
  const long long width = 2LL * n * maxh + 1;
  const long long cells = static_cast<long long>(total_steps) * A * width;
  if (cells > 100000000LL)
    throw std::length_error("llt_check: DP budget exceeded");

  const long long off = static_cast<long long>(n) * maxh;
  const std::size_t row = static_cast<std::size_t>(width) * A;
  std::vector<double> cur(row, 0.0), nxt(row, 0.0);

  auto symbol_ok = [&](int pos, int a) {
    if (pos < static_cast<int>(a_word.size())) return a_word[pos] == a;
    if (pos >= n && pos - n < static_cast<int>(b_word.size()))
      return b_word[pos - n] == a;
    return true;
  };

  for (int a = 0; a < A; ++a)
    if (symbol_ok(0, a))
      cur[static_cast<std::size_t>(off) * A + a] = shift.measure.initial[a];

  for (int t = 0; t + 1 < total_steps; ++t) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (long long l = 0; l < width; ++l) {
      for (int a = 0; a < A; ++a) {
        const double mass = cur[static_cast<std::size_t>(l) * A + a];
        if (mass == 0.0) continue;
        // Level accumulates h over positions 0..n-1 only.
        const long long l2 = (t < n) ? l + c.values[a] : l;
        for (int b = 0; b < A; ++b) {
          if (!symbol_ok(t + 1, b)) continue;
          const double kk = shift.measure.k(static_cast<Symbol>(a),
                                            static_cast<Symbol>(b), A);
          if (kk > 0.0) nxt[static_cast<std::size_t>(l2) * A + b] += mass * kk;
        }
      }
    }
    cur.swap(nxt);
  }

  // After total_steps-1 transitions the level still excludes the value of the
  // last processed symbol when total_steps == n; add it via a final fold.
  double exact = 0.0;
  const long long target = off + k;
  if (total_steps == n) {
    // h_n includes all processed symbols 0..n-1: fold the last value in.
    for (long long l = 0; l < width; ++l)
      for (int a = 0; a < A; ++a) {
        const double mass = cur[static_cast<std::size_t>(l) * A + a];
        if (mass != 0.0 && l + c.values[a] == target) exact += mass;
      }
  } else if (target >= 0 && target < width) {
    for (int a = 0; a < A; ++a)
      exact += cur[static_cast<std::size_t>(target) * A + a];
  }

  const double mu_a = a_word.empty() ? 1.0 : cylinder_measure(shift, a_word);
  const double mu_b = b_word.empty() ? 1.0 : cylinder_measure(shift, b_word);
  const double s2 = c.sigma2;
  const double sigma = std::sqrt(s2);
  const double kk = static_cast<double>(k);
  const double prediction =
      mu_a * mu_b * std::exp(-kk * kk / (2.0 * s2 * n)) /
      (sigma * std::sqrt(2.0 * M_PI * n));

  LltResult res;
  res.exact = exact;
  res.prediction = prediction;
  const double m_len = std::max<double>(
      1.0, std::max(a_word.size(), b_word.size()));
  res.normalized_error =
      std::abs(exact - prediction) * n / (mu_a * mu_b * m_len);
  res.arithmetic_warning = c.lattice_span != 1;
  return res;
}

}  // namespace ttlab

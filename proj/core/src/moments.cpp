#include "ttlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ttlab/parallel.hpp"

namespace ttlab {

u128 stirling2(int m, int q) {
  if (m < 0 || q < 0 || q > m || m > 30)
    throw std::domain_error("stirling2: need 0 <= q <= m <= 30");
  // Row-by-row recurrence S(m,q) = q S(m-1,q) + S(m-1,q-1).
  std::vector<u128> row(m + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j >= 1; --j)
      row[j] = static_cast<u128>(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[q];
}

std::vector<std::vector<int>> enumerate_surjections(int q, int q0) {
  std::vector<std::vector<int>> out;
  if (q0 < 0 || q < 1 || q0 + 1 > q) return out;
  std::vector<int> map(q, 0);
  const int base = q0 + 1;
  for (;;) {
    std::vector<char> hit(base, 0);
    for (int v : map) hit[v] = 1;
    if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }))
      out.push_back(map);
    int i = q - 1;
    while (i >= 0 && map[i] == base - 1) map[i--] = 0;
    if (i < 0) break;
    ++map[i];
  }
  return out;
}

double poisson_moment(double lambda, int m) {
  if (lambda < 0.0) throw std::domain_error("poisson_moment: lambda >= 0");
  double total = 0.0;
  double lp = 1.0;
  for (int q = 0; q <= m; ++q) {
    total += static_cast<double>(stirling2(m, q)) * lp;
    lp *= lambda;
  }
  return total;
}

double poisson_integral_moment(const std::vector<StepFunction>& gs,
                               const StepFunction& intensity) {
  const int m = static_cast<int>(gs.size());
  if (m == 0) return 1.0;
  if (m > 6) throw std::domain_error("poisson_integral_moment: m <= 6");

  double total = 0.0;
  std::vector<double> factorial{1, 1, 2, 6, 24, 120, 720};
  for (int q = 1; q <= m; ++q) {
    // Sum over maps chi: {1..m} -> {1..q} with every fibre nonempty; the
    // integral factorizes over the fibres.
    std::vector<int> chi(m, 0);
    double sum_chi = 0.0;
    for (;;) {
      std::vector<char> hit(q, 0);
      for (int v : chi) hit[v] = 1;
      if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) {
        double prod = 1.0;
        for (int u = 0; u < q && prod != 0.0; ++u) {
          std::vector<const StepFunction*> fibre;
          for (int j = 0; j < m; ++j)
            if (chi[j] == u) fibre.push_back(&gs[j]);
          prod *= product_integral(fibre, intensity);
        }
        sum_chi += prod;
      }
      int i = m - 1;
      while (i >= 0 && chi[i] == q - 1) chi[i--] = 0;
      if (i < 0) break;
      ++chi[i];
    }
    total += sum_chi / factorial[q];
  }
  return total;
}

int MomentSpec::total() const {
  int t = 0;
  for (int e : exponents) t += e;
  return t;
}

void MomentSpec::validate(int max_total) const {
  if (times.empty() || times.size() != exponents.size())
    throw std::invalid_argument("MomentSpec: times/exponents mismatch");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev)) throw std::invalid_argument(
        "MomentSpec: times must be strictly increasing and positive");
    prev = t;
  }
  for (int e : exponents)
    if (e < 1) throw std::invalid_argument("MomentSpec: exponents >= 1");
  if (total() > max_total)
    throw std::invalid_argument("MomentSpec: total order exceeds budget");
}

void ColoringMatrix::validate() const {
  if (q0 < 0 || blocks < 1 ||
      z.size() != static_cast<std::size_t>(q0 + 1) * blocks)
    throw std::invalid_argument("ColoringMatrix: bad shape");
  for (int u = 1; u <= q0; ++u) {
    int row = 0;
    for (int w = 0; w < blocks; ++w) row += at(u, w);
    if (row <= 0)
      throw std::invalid_argument(
          "ColoringMatrix: interior rows need positive sum");
  }
  for (int v : z)
    if (v < 0) throw std::invalid_argument("ColoringMatrix: entries >= 0");
}

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  while (n-- > 0) r *= x;
  return r;
}

// Per-path local-time increment data at the spec checkpoints.
struct PathIncrements {
  double eps = 0.0;
  std::size_t num_levels = 0;
  std::size_t zero_bin = 0;
  int blocks = 0;
  std::vector<double> delta;  // [block][level]

  double at(int w, std::size_t j) const {
    return delta[static_cast<std::size_t>(w) * num_levels + j];
  }
  double at_zero(int w) const { return at(w, zero_bin); }

  // eps * sum_j prod_w dL_w(x_j)^{exps[w]}
  double row_integral(const std::vector<int>& exps) const {
    double total = 0.0;
    for (std::size_t j = 0; j < num_levels; ++j) {
      double prod = 1.0;
      for (int w = 0; w < blocks && prod != 0.0; ++w) {
        const int e = exps[w];
        if (e > 0) prod *= ipow(at(w, j), e);
      }
      total += prod;
    }
    return total * eps;
  }
};

PathIncrements path_increments(const MomentSpec& spec, double sigma,
                               std::size_t steps_per_unit, Rng& rng) {
  const double T = spec.times.back();
  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(steps_per_unit * T));
  BrownianPath path = sample_brownian(sigma, T, steps, rng);
  const double eps = default_band_eps(sigma, path.dt);
  LocalTimeField field = local_time(path, eps, spec.times);

  PathIncrements inc;
  inc.eps = eps;
  inc.num_levels = field.num_levels;
  inc.blocks = static_cast<int>(spec.times.size());
  inc.zero_bin = static_cast<std::size_t>(
      std::llround((0.0 - field.x_min) / eps));
  inc.delta.resize(static_cast<std::size_t>(inc.blocks) * field.num_levels);
  for (int w = 0; w < inc.blocks; ++w) {
    for (std::size_t j = 0; j < field.num_levels; ++j) {
      const double hi = field.at(static_cast<std::size_t>(w), j);
      const double lo = w == 0 ? 0.0 : field.at(static_cast<std::size_t>(w) - 1, j);
      inc.delta[static_cast<std::size_t>(w) * field.num_levels + j] = hi - lo;
    }
  }
  return inc;
}

double h_of_path(const PathIncrements& inc, const ColoringMatrix& zm) {
  double value = 1.0;
  for (int w = 0; w < zm.blocks; ++w) {
    const int e = zm.at(0, w);
    if (e > 0) value *= ipow(inc.at_zero(w), e);
  }
  std::vector<int> exps(zm.blocks);
  for (int u = 1; u <= zm.q0 && value != 0.0; ++u) {
    for (int w = 0; w < zm.blocks; ++w) exps[w] = zm.at(u, w);
    value *= inc.row_integral(exps);
  }
  return value;
}

McEstimate mean_se(const std::vector<double>& xs) {
  McEstimate est;
  const std::size_t n = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= n > 1 ? static_cast<double>(n - 1) : 1.0;
  est.value = mean;
  est.std_error = std::sqrt(var / static_cast<double>(n));
  return est;
}

}  // namespace

McEstimate H_integral(const ColoringMatrix& z, const MomentSpec& spec,
                      double sigma, const McParams& mc) {
  z.validate();
  spec.validate(8);
  if (z.blocks != static_cast<int>(spec.times.size()))
    throw std::invalid_argument("H_integral: matrix blocks != spec length");
  bool all_zero = true;
  for (int v : z.z) all_zero &= v == 0;
  if (all_zero) return {1.0, 0.0};

  auto values = parallel_map<double>(mc.paths, mc.workers, [&](std::size_t i) {
    Rng rng = Rng::derive(mc.seed, 10, i);
    const PathIncrements inc =
        path_increments(spec, sigma, mc.steps_per_unit, rng);
    return h_of_path(inc, z);
  });
  return mean_se(values);
}

namespace {

struct ColoringKey {
  int q0;
  std::vector<int> flat;
  bool operator<(const ColoringKey& o) const {
    if (q0 != o.q0) return q0 < o.q0;
    return flat < o.flat;
  }
};

// Canonical form: interior rows are symmetric integration dummies, so sort
// them; row 0 (the pinned atom) stays first.
ColoringKey canonical(const ColoringMatrix& zm) {
  ColoringKey key;
  key.q0 = zm.q0;
  std::vector<std::vector<int>> rows;
  for (int u = 1; u <= zm.q0; ++u) {
    std::vector<int> row(zm.blocks);
    for (int w = 0; w < zm.blocks; ++w) row[w] = zm.at(u, w);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  key.flat.reserve(static_cast<std::size_t>(zm.q0 + 1) * zm.blocks);
  for (int w = 0; w < zm.blocks; ++w) key.flat.push_back(zm.at(0, w));
  for (const auto& row : rows)
    key.flat.insert(key.flat.end(), row.begin(), row.end());
  return key;
}

}  // namespace

LimitMomentResult limit_moment(const ZParams& params, const MomentSpec& spec,
                               const McParams& mc) {
  validate_z_params(params);
  spec.validate(6);
  const int K = static_cast<int>(spec.times.size());
  const int m = spec.total();

  LimitMomentResult res;
  if (params.alpha == 0.0) {
    // Standard Poisson: independent increments, exact product.
    res.exact = true;
    res.value = 1.0;
    double prev = 0.0;
    for (int v = 0; v < K; ++v) {
      res.value *= poisson_moment(spec.times[v] - prev, spec.exponents[v]);
      prev = spec.times[v];
    }
    return res;
  }

  // Collect coefficients per canonical coloring matrix. A coloring assigns
  // each of the q refined atoms a value in {0..q0}; every value in {1..q0}
  // must be used (the pinned value 0 is optional).
  std::map<ColoringKey, double> coeffs;
  std::map<int, std::map<ColoringKey, double>> coeffs_by_q0;
  std::vector<double> factorial{1, 1, 2, 6, 24, 120, 720};

  std::vector<int> qv(K, 1);
  for (;;) {
    int q = 0;
    double stir = 1.0;
    for (int v = 0; v < K; ++v) {
      q += qv[v];
      stir *= static_cast<double>(stirling2(spec.exponents[v], qv[v]));
    }
    // Block index of each refined atom j = 1..q.
    std::vector<int> block(q);
    {
      int j = 0;
      for (int v = 0; v < K; ++v)
        for (int c = 0; c < qv[v]; ++c) block[j++] = v;
    }
    for (int q0 = 0; q0 <= q; ++q0) {
      if (params.beta == 0.0 && q0 > 0) break;
      const double weight = stir / factorial[q0] *
                            std::pow(params.alpha, 0.5 * (q - q0)) *
                            ipow(params.beta, q0);
      std::vector<int> psi(q, 0);
      const int base = q0 + 1;
      for (;;) {
        bool ok = true;
        if (q0 > 0) {
          std::vector<char> hit(base, 0);
          for (int v : psi) hit[v] = 1;
          for (int u = 1; u <= q0; ++u) ok &= hit[u] != 0;
        }
        if (ok) {
          ColoringMatrix zm;
          zm.q0 = q0;
          zm.blocks = K;
          zm.z.assign(static_cast<std::size_t>(q0 + 1) * K, 0);
          for (int j = 0; j < q; ++j)
            ++zm.z[static_cast<std::size_t>(psi[j]) * K + block[j]];
          const ColoringKey key = canonical(zm);
          coeffs[key] += weight;
          coeffs_by_q0[q0][key] += weight;
        }
        int i = q - 1;
        while (i >= 0 && psi[i] == base - 1) psi[i--] = 0;
        if (i < 0) break;
        ++psi[i];
      }
    }
    int v = K - 1;
    while (v >= 0 && qv[v] == spec.exponents[v]) qv[v--] = 1;
    if (v < 0) break;
    ++qv[v];
  }

  // Shared-path evaluation: one ensemble serves every coloring, and the
  // per-path combined value carries the term covariances into the SE.
  std::vector<std::pair<ColoringKey, double>> terms(coeffs.begin(),
                                                    coeffs.end());
  std::vector<ColoringMatrix> mats;
  mats.reserve(terms.size());
  for (const auto& term : terms) {
    ColoringMatrix zm;
    zm.q0 = term.first.q0;
    zm.blocks = K;
    zm.z = term.first.flat;
    mats.push_back(std::move(zm));
  }
  const int max_q0 = m;

  struct PathValue {
    double total = 0.0;
    std::vector<double> by_q0;
  };
  auto values = parallel_map<PathValue>(
      mc.paths, mc.workers, [&](std::size_t i) {
        Rng rng = Rng::derive(mc.seed, 10, i);
        const PathIncrements inc =
            path_increments(spec, params.sigma, mc.steps_per_unit, rng);
        PathValue pv;
        pv.by_q0.assign(max_q0 + 1, 0.0);
        for (std::size_t t = 0; t < terms.size(); ++t) {
          const double h = h_of_path(inc, mats[t]);
          pv.total += terms[t].second * h;
          pv.by_q0[static_cast<std::size_t>(mats[t].q0)] += terms[t].second * h;
        }
        return pv;
      });

  std::vector<double> totals(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) totals[i] = values[i].total;
  const McEstimate est = mean_se(totals);
  res.value = est.value;
  res.std_error = est.std_error;
  for (int q0 = 0; q0 <= max_q0; ++q0) {
    if (coeffs_by_q0.find(q0) == coeffs_by_q0.end()) continue;
    std::vector<double> part(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      part[i] = values[i].by_q0[static_cast<std::size_t>(q0)];
    const McEstimate pe = mean_se(part);
    res.breakdown.push_back({q0, pe.value, pe.std_error});
  }
  return res;
}

McEstimate simulate_limit_moment(const ZParams& params, const MomentSpec& spec,
                                 std::size_t samples,
                                 std::size_t steps_per_unit,
                                 std::uint64_t seed, int workers) {
  validate_z_params(params);
  spec.validate(8);
  const double T = spec.times.back();
  auto values =
      parallel_map<double>(samples, workers, [&](std::size_t i) {
        Rng rng = Rng::derive(seed, 20, i);
        const EventSeries z = sample_Z(params, T, steps_per_unit, rng);
        double prod = 1.0;
        double prev = 0.0;
        for (std::size_t v = 0; v < spec.times.size(); ++v) {
          const double c =
              static_cast<double>(z.count_in(prev, spec.times[v]));
          prod *= ipow(c, spec.exponents[v]);
          prev = spec.times[v];
        }
        return prod;
      });
  return mean_se(values);
}

McEstimate empirical_joint_moment(const std::vector<EventSeries>& series,
                                  const MomentSpec& spec) {
  if (series.empty())
    throw std::invalid_argument("empirical_joint_moment: empty sample");
  std::vector<double> xs(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    double prod = 1.0;
    double prev = 0.0;
    for (std::size_t v = 0; v < spec.times.size(); ++v) {
      prod *= std::pow(
          static_cast<double>(series[i].count_in(prev, spec.times[v])),
          spec.exponents[v]);
      prev = spec.times[v];
    }
    xs[i] = prod;
  }
  // Jackknife standard error of the mean.
  const std::size_t n = xs.size();
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(n);
  double jk = 0.0;
  for (double x : xs) {
    const double loo = (sum - x) / static_cast<double>(n - 1);
    jk += (loo - mean) * (loo - mean);
  }
  jk *= static_cast<double>(n - 1) / static_cast<double>(n);
  return {mean, std::sqrt(jk)};
}

}  // namespace ttlab

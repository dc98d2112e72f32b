#include "ttlab/markov_shift.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ttlab {

namespace {

constexpr double kPowerIterTol = 1e-13;
constexpr int kPowerIterMax = 100000;

std::vector<double> power_iterate(const std::vector<std::uint8_t>& m, int n,
                                  bool transpose) {
  std::vector<double> v(n, 1.0), w(n, 0.0);
  for (int iter = 0; iter < kPowerIterMax; ++iter) {
    std::fill(w.begin(), w.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (m[static_cast<std::size_t>(i) * n + j]) {
          if (transpose)
            w[j] += v[i];
          else
            w[i] += v[j];
        }
      }
    }
    const double norm = std::accumulate(w.begin(), w.end(), 0.0);
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] /= norm;
      delta = std::max(delta, std::abs(w[i] - v[i]));
    }
    v.swap(w);
    if (delta < kPowerIterTol) break;
  }
  return v;
}

}  // namespace

bool MarkovShift::is_full_uniform() const {
  const double q = 1.0 / alphabet;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (!transitions[i]) return false;
    if (std::abs(measure.kernel[i] - q) > 1e-15) return false;
  }
  for (int a = 0; a < alphabet; ++a)
    if (std::abs(measure.initial[a] - q) > 1e-15) return false;
  return true;
}

std::string primitivity_witness(const std::vector<std::uint8_t>& transitions,
                                int alphabet) {
  const int n = alphabet;
  if (n <= 0) return "empty alphabet";
  for (int i = 0; i < n; ++i) {
    bool has_out = false;
    for (int j = 0; j < n; ++j)
      has_out |= transitions[static_cast<std::size_t>(i) * n + j] != 0;
    if (!has_out) return "symbol " + std::to_string(i) + " has no successor";
  }
  // Boolean powers up to n^2: primitive iff some power is strictly positive.
  std::vector<std::uint8_t> pw(transitions.begin(), transitions.end());
  std::vector<std::uint8_t> nx(static_cast<std::size_t>(n) * n);
  for (int step = 1; step <= n * n; ++step) {
    bool all = true;
    for (std::size_t i = 0; i < pw.size(); ++i) all &= pw[i] != 0;
    if (all) return "";
    if (step == n * n) break;
    std::fill(nx.begin(), nx.end(), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (pw[static_cast<std::size_t>(i) * n + k])
          for (int j = 0; j < n; ++j)
            nx[static_cast<std::size_t>(i) * n + j] |=
                transitions[static_cast<std::size_t>(k) * n + j];
    pw.swap(nx);
  }
  // Not primitive: distinguish reducibility from periodicity.
  for (int s = 0; s < n; ++s) {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (transitions[static_cast<std::size_t>(v) * n + j] && !seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      if (!seen[j])
        return "reducible: no path from symbol " + std::to_string(s) +
               " to symbol " + std::to_string(j);
    }
  }
  // Strongly connected but periodic: period = gcd over edges of
  // level(u) + 1 - level(v) for a BFS labelling.
  std::vector<int> level(n, -1);
  level[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int j = 0; j < n; ++j) {
      if (transitions[static_cast<std::size_t>(v) * n + j] && level[j] < 0) {
        level[j] = level[v] + 1;
        queue.push_back(j);
      }
    }
  }
  int period = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (transitions[static_cast<std::size_t>(i) * n + j])
        period = std::gcd(period, std::abs(level[i] + 1 - level[j]));
  return "periodic with period " + std::to_string(period);
}

MarkovMeasure parry_measure(const std::vector<std::uint8_t>& transitions,
                            int alphabet) {
  const std::string witness = primitivity_witness(transitions, alphabet);
  if (!witness.empty())
    throw NonPrimitiveError("transition matrix not primitive: " + witness);

  const int n = alphabet;
  std::vector<double> v = power_iterate(transitions, n, false);
  std::vector<double> u = power_iterate(transitions, n, true);

  // Rayleigh quotient for the Perron eigenvalue.
  double uMv = 0.0, uv = 0.0;
  for (int i = 0; i < n; ++i) {
    uv += u[i] * v[i];
    for (int j = 0; j < n; ++j)
      if (transitions[static_cast<std::size_t>(i) * n + j]) uMv += u[i] * v[j];
  }
  const double perron = uMv / uv;

  // Normalize u.v = 1 (split the factor into u).
  for (int i = 0; i < n; ++i) u[i] /= uv;

  MarkovMeasure mu;
  mu.is_parry = true;
  mu.entropy = std::log(perron);
  mu.perron_left = u;
  mu.perron_right = v;
  mu.initial.resize(n);
  mu.kernel.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a) {
    mu.initial[a] = u[a] * v[a];
    for (int b = 0; b < n; ++b)
      if (transitions[static_cast<std::size_t>(a) * n + b])
        mu.kernel[static_cast<std::size_t>(a) * n + b] =
            v[b] / (perron * v[a]);
  }
  return mu;
}

MarkovMeasure markov_measure(const std::vector<std::uint8_t>& transitions,
                             int alphabet, const std::vector<double>& kernel,
                             const std::vector<double>& initial) {
  const int n = alphabet;
  if (kernel.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("kernel has wrong size");
  for (int a = 0; a < n; ++a) {
    double row = 0.0;
    for (int b = 0; b < n; ++b) {
      const double p = kernel[static_cast<std::size_t>(a) * n + b];
      if (p < 0.0) throw std::invalid_argument("kernel entry negative");
      if (p > 0.0 && !transitions[static_cast<std::size_t>(a) * n + b])
        throw std::invalid_argument(
            "kernel puts mass on a forbidden transition");
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-10)
      throw std::invalid_argument("kernel row " + std::to_string(a) +
                                  " does not sum to 1");
  }

  MarkovMeasure mu;
  mu.kernel = kernel;
  if (!initial.empty()) {
    if (initial.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("initial vector has wrong size");
    mu.initial = initial;
  } else {
    // Stationary vector by power iteration on the transpose.
    std::vector<double> p(n, 1.0 / n), q(n, 0.0);
    for (int iter = 0; iter < kPowerIterMax; ++iter) {
      std::fill(q.begin(), q.end(), 0.0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          q[b] += p[a] * kernel[static_cast<std::size_t>(a) * n + b];
      double delta = 0.0;
      for (int i = 0; i < n; ++i) delta = std::max(delta, std::abs(q[i] - p[i]));
      p.swap(q);
      if (delta < kPowerIterTol) break;
    }
    mu.initial = p;
  }
  // Stationarity and normalization checks.
  double total = std::accumulate(mu.initial.begin(), mu.initial.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("initial vector does not sum to 1");
  for (int b = 0; b < n; ++b) {
    double pb = 0.0;
    for (int a = 0; a < n; ++a)
      pb += mu.initial[a] * kernel[static_cast<std::size_t>(a) * n + b];
    if (std::abs(pb - mu.initial[b]) > 1e-9)
      throw std::invalid_argument("initial vector is not stationary");
  }
  double h = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double p = kernel[static_cast<std::size_t>(a) * n + b];
      if (p > 0.0) h -= mu.initial[a] * p * std::log(p);
    }
  mu.entropy = h;
  return mu;
}

bool is_admissible(const MarkovShift& shift, const Word& word) {
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (!shift.allowed(word[i], word[i + 1])) return false;
  for (Symbol s : word)
    if (s >= shift.alphabet) return false;
  return true;
}

double cylinder_measure(const MarkovShift& shift, const Word& word) {
  if (word.empty()) return 1.0;
  if (!is_admissible(shift, word)) return 0.0;
  double m = shift.measure.p(word[0]);
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    m *= shift.measure.k(word[i], word[i + 1], shift.alphabet);
  return m;
}

int ball_generation(double r, double lambda) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::domain_error("ball_generation requires r in (0,1)");
  if (!(lambda > 0.0))
    throw std::domain_error("ball_generation requires lambda > 0");
  // Radii sit on exact cylinder boundaries r = e^{-lambda m}; the nudge keeps
  // the floor stable when -log(r)/lambda lands on an integer up to rounding.
  return static_cast<int>(std::floor(-std::log(r) / lambda + 1e-9));
}

std::pair<int, int> cylinder_window(int generation, Sided sided) {
  return sided == Sided::two ? std::pair{-generation, generation}
                             : std::pair{0, generation};
}

double dimension(const MarkovShift& shift) {
  const double d = shift.measure.entropy / shift.lyapunov;
  return shift.sided == Sided::two ? 2.0 * d : d;
}

Symbol sample_step(const MarkovShift& shift, Symbol a, Rng& rng) {
  const int n = shift.alphabet;
  const double* row = shift.measure.kernel.data() + static_cast<std::size_t>(a) * n;
  double u = rng.uniform();
  for (int b = 0; b + 1 < n; ++b) {
    u -= row[b];
    if (u < 0.0) return static_cast<Symbol>(b);
  }
  return static_cast<Symbol>(n - 1);
}

Symbol sample_step_backward(const MarkovShift& shift, Symbol a, Rng& rng) {
  const int n = shift.alphabet;
  const double pa = shift.measure.initial[a];
  double u = rng.uniform() * pa;
  for (int b = 0; b + 1 < n; ++b) {
    u -= shift.measure.initial[b] * shift.measure.k(static_cast<Symbol>(b), a, n);
    if (u < 0.0) return static_cast<Symbol>(b);
  }
  return static_cast<Symbol>(n - 1);
}

Word sample_path(const MarkovShift& shift, std::size_t length, Rng& rng) {
  if (length == 0) throw std::invalid_argument("sample_path: length >= 1");
  Word w(length);
  double u = rng.uniform();
  Symbol cur = static_cast<Symbol>(shift.alphabet - 1);
  for (int a = 0; a + 1 < shift.alphabet; ++a) {
    u -= shift.measure.initial[a];
    if (u < 0.0) {
      cur = static_cast<Symbol>(a);
      break;
    }
  }
  w[0] = cur;
  for (std::size_t i = 1; i < length; ++i) {
    cur = sample_step(shift, cur, rng);
    w[i] = cur;
  }
  return w;
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back(tok);
  }
  return out;
}

}  // namespace

MarkovShift parse_shift(const std::string& text) {
  const auto toks = tokenize(text);
  std::size_t i = 0;
  auto need = [&](const char* what) -> const std::string& {
    if (i >= toks.size())
      throw std::invalid_argument(std::string("shift file: missing ") + what);
    return toks[i++];
  };
  auto need_num = [&](const char* what) {
    return std::stod(need(what));
  };

  MarkovShift shift;
  if (need("'alphabet' keyword") != "alphabet")
    throw std::invalid_argument("shift file: expected 'alphabet'");
  shift.alphabet = static_cast<int>(need_num("alphabet size"));
  if (shift.alphabet < 1 || shift.alphabet > 255)
    throw std::invalid_argument("shift file: alphabet size out of range");
  const int n = shift.alphabet;

  if (need("'transitions' keyword") != "transitions")
    throw std::invalid_argument("shift file: expected 'transitions'");
  shift.transitions.resize(static_cast<std::size_t>(n) * n);
  for (auto& t : shift.transitions) {
    const double x = need_num("transition entry");
    if (x != 0.0 && x != 1.0)
      throw std::invalid_argument("shift file: transitions must be 0/1");
    t = static_cast<std::uint8_t>(x);
  }

  if (need("'measure' keyword") != "measure")
    throw std::invalid_argument("shift file: expected 'measure'");
  const std::string kind = need("measure kind");
  if (kind == "parry") {
    shift.measure = parry_measure(shift.transitions, n);
  } else if (kind == "markov") {
    std::vector<double> kernel(static_cast<std::size_t>(n) * n);
    for (auto& x : kernel) x = need_num("kernel entry");
    std::vector<double> initial(n);
    for (auto& x : initial) x = need_num("initial entry");
    shift.measure = markov_measure(shift.transitions, n, kernel, initial);
  } else {
    throw std::invalid_argument("shift file: measure must be parry|markov");
  }

  if (need("'lyapunov' keyword") != "lyapunov")
    throw std::invalid_argument("shift file: expected 'lyapunov'");
  shift.lyapunov = need_num("lyapunov value");
  if (!(shift.lyapunov > 0.0))
    throw std::invalid_argument("shift file: lyapunov must be positive");

  if (need("'sided' keyword") != "sided")
    throw std::invalid_argument("shift file: expected 'sided'");
  const std::string sided = need("sided value");
  if (sided == "one")
    shift.sided = Sided::one;
  else if (sided == "two")
    shift.sided = Sided::two;
  else
    throw std::invalid_argument("shift file: sided must be one|two");

  return shift;
}

MarkovShift load_shift(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open shift file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_shift(ss.str());
}

}  // namespace ttlab

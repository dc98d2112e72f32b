#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttlab/markov_shift.hpp"

namespace ttlab {

enum class Scenario {
  recurrence_rate,
  first_return,
  point_process,
  z_extension,
  llt,
  limit_moments,
  corollary_case,
};

std::string scenario_name(Scenario s);

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::vector<std::string>& problems);
  std::vector<std::string> problems;
};

struct McConfig {
  std::size_t paths = 20000;
  std::size_t steps_per_unit = 100000;  // limit-process default grid
  std::size_t samples = 30000;
  std::size_t reference_samples = 1000000;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::llt;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = TTLAB_WORKERS env or hardware count

  std::optional<MarkovShift> x_shift;
  std::optional<MarkovShift> y_shift;
  std::vector<int> cocycle;

  std::vector<int> radii_generations;
  std::size_t trials = 0;
  double horizon_T = 1.0;
  double cap_multiplier = 1000.0;
  std::uint64_t y_guard = 1ull << 28;
  std::optional<Word> base_x;  // fixed-ball (conditional) sampling mode
  std::optional<Word> base_y;

  std::vector<int> llt_ns{250, 500, 1000, 2000};
  Word llt_a_word;
  Word llt_b_word;
  long long llt_k = 0;

  std::vector<double> times;
  std::vector<int> exponents;
  double alpha = 1.0;
  double beta = 0.0;
  std::optional<double> sigma;

  McConfig mc;

  int full_shift_l = 2;
  int full_shift_d = 2;

  std::map<std::string, double> tolerances;  // shipped defaults per scenario

  std::string raw;  // original bytes, hashed into the report provenance

  double tolerance(const std::string& key, double fallback) const {
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

// Parses and validates; throws SchemaError listing every offending key.
// `base_dir` resolves relative shift-file references.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& base_dir);

ExperimentConfig load_config(const std::string& path);

}  // namespace ttlab

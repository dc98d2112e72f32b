#include "ttlab/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ttlab {

using nlohmann::json;

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::recurrence_rate: return "recurrence-rate";
    case Scenario::first_return: return "first-return";
    case Scenario::point_process: return "point-process";
    case Scenario::z_extension: return "z-extension";
    case Scenario::llt: return "llt";
    case Scenario::limit_moments: return "limit-moments";
    case Scenario::corollary_case: return "corollary-case";
  }
  return "?";
}

SchemaError::SchemaError(const std::vector<std::string>& problems_in)
    : std::runtime_error([&] {
        std::string msg = "config schema error:";
        for (const auto& p : problems_in) msg += "\n  - " + p;
        return msg;
      }()),
      problems(problems_in) {}

namespace {

std::optional<Scenario> scenario_from_name(const std::string& name) {
  for (Scenario s :
       {Scenario::recurrence_rate, Scenario::first_return,
        Scenario::point_process, Scenario::z_extension, Scenario::llt,
        Scenario::limit_moments, Scenario::corollary_case})
    if (scenario_name(s) == name) return s;
  return std::nullopt;
}

MarkovShift shift_from_json(const json& j, const std::string& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative() && !base_dir.empty())
      p = std::filesystem::path(base_dir) / p;
    return load_shift(p.string());
  }
  // Inline object mirrors the shift file schema.
  MarkovShift shift;
  shift.alphabet = j.at("alphabet").get<int>();
  const int n = shift.alphabet;
  shift.transitions.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : j.at("transitions"))
    for (const auto& cell : row)
      shift.transitions.push_back(cell.get<int>() ? 1 : 0);
  if (shift.transitions.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("transitions must be an AxA matrix");
  const auto& measure = j.at("measure");
  if (measure.is_string() && measure.get<std::string>() == "parry") {
    shift.measure = parry_measure(shift.transitions, n);
  } else {
    std::vector<double> kernel;
    for (const auto& row : measure.at("kernel"))
      for (const auto& cell : row) kernel.push_back(cell.get<double>());
    std::vector<double> initial;
    if (measure.contains("initial"))
      for (const auto& cell : measure.at("initial"))
        initial.push_back(cell.get<double>());
    shift.measure = markov_measure(shift.transitions, n, kernel, initial);
  }
  shift.lyapunov = j.at("lyapunov").get<double>();
  const std::string sided = j.at("sided").get<std::string>();
  if (sided == "one")
    shift.sided = Sided::one;
  else if (sided == "two")
    shift.sided = Sided::two;
  else
    throw std::invalid_argument("sided must be one|two");
  return shift;
}

Word word_from_json(const json& j) {
  Word w;
  for (const auto& cell : j) w.push_back(static_cast<Symbol>(cell.get<int>()));
  return w;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& base_dir) {
  std::vector<std::string> problems;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw SchemaError({std::string("invalid JSON: ") + e.what()});
  }

  ExperimentConfig cfg;
  cfg.raw = json_text;

  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    problems.push_back("scenario: required string");
  } else if (auto s = scenario_from_name(j["scenario"].get<std::string>())) {
    cfg.scenario = *s;
  } else {
    problems.push_back("scenario: unknown value '" +
                       j["scenario"].get<std::string>() + "'");
  }

  if (!j.contains("seed") || !j["seed"].is_number_unsigned())
    problems.push_back("seed: required nonnegative integer");
  else
    cfg.seed = j["seed"].get<std::uint64_t>();

  auto get_shift = [&](const char* key) -> std::optional<MarkovShift> {
    if (!j.contains(key)) return std::nullopt;
    try {
      return shift_from_json(j[key], base_dir);
    } catch (const std::exception& e) {
      problems.push_back(std::string(key) + ": " + e.what());
      return std::nullopt;
    }
  };
  cfg.x_shift = get_shift("x_shift");
  cfg.y_shift = get_shift("y_shift");

  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
  if (j.contains("cocycle"))
    for (const auto& v : j["cocycle"]) cfg.cocycle.push_back(v.get<int>());
  if (j.contains("radii_generations"))
    for (const auto& v : j["radii_generations"])
      cfg.radii_generations.push_back(v.get<int>());
  if (j.contains("trials")) cfg.trials = j["trials"].get<std::size_t>();
  if (j.contains("horizon_T")) cfg.horizon_T = j["horizon_T"].get<double>();
  if (j.contains("cap_multiplier"))
    cfg.cap_multiplier = j["cap_multiplier"].get<double>();
  if (j.contains("y_guard")) cfg.y_guard = j["y_guard"].get<std::uint64_t>();
  if (j.contains("base_x")) cfg.base_x = word_from_json(j["base_x"]);
  if (j.contains("base_y")) cfg.base_y = word_from_json(j["base_y"]);

  if (j.contains("llt_ns")) {
    cfg.llt_ns.clear();
    for (const auto& v : j["llt_ns"]) cfg.llt_ns.push_back(v.get<int>());
  }
  if (j.contains("llt_a_word")) cfg.llt_a_word = word_from_json(j["llt_a_word"]);
  if (j.contains("llt_b_word")) cfg.llt_b_word = word_from_json(j["llt_b_word"]);
  if (j.contains("llt_k")) cfg.llt_k = j["llt_k"].get<long long>();

  if (j.contains("times"))
    for (const auto& v : j["times"]) cfg.times.push_back(v.get<double>());
  if (j.contains("exponents"))
    for (const auto& v : j["exponents"]) cfg.exponents.push_back(v.get<int>());
  if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
  if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
  if (j.contains("sigma")) cfg.sigma = j["sigma"].get<double>();

  if (j.contains("mc")) {
    const auto& mc = j["mc"];
    if (mc.contains("paths")) cfg.mc.paths = mc["paths"].get<std::size_t>();
    if (mc.contains("steps_per_unit"))
      cfg.mc.steps_per_unit = mc["steps_per_unit"].get<std::size_t>();
    if (mc.contains("samples"))
      cfg.mc.samples = mc["samples"].get<std::size_t>();
    if (mc.contains("reference_samples"))
      cfg.mc.reference_samples = mc["reference_samples"].get<std::size_t>();
  }

  if (j.contains("full_shift_L")) cfg.full_shift_l = j["full_shift_L"].get<int>();
  if (j.contains("full_shift_d")) cfg.full_shift_d = j["full_shift_d"].get<int>();

  if (j.contains("tolerances"))
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
      cfg.tolerances[it.key()] = it.value().get<double>();

  // Scenario-specific requirements.
  const bool needs_system =
      cfg.scenario == Scenario::recurrence_rate ||
      cfg.scenario == Scenario::first_return ||
      cfg.scenario == Scenario::point_process;
  if (needs_system) {
    if (!cfg.x_shift) problems.push_back("x_shift: required for this scenario");
    if (!cfg.y_shift) problems.push_back("y_shift: required for this scenario");
    if (cfg.cocycle.empty()) problems.push_back("cocycle: required");
    if (cfg.trials == 0) problems.push_back("trials: required positive count");
    if (cfg.radii_generations.empty())
      problems.push_back("radii_generations: required");
  }
  if (cfg.scenario == Scenario::z_extension || cfg.scenario == Scenario::llt) {
    if (!cfg.x_shift) problems.push_back("x_shift: required for this scenario");
    if (cfg.cocycle.empty()) problems.push_back("cocycle: required");
  }
  if (cfg.scenario == Scenario::z_extension) {
    if (cfg.trials == 0) problems.push_back("trials: required positive count");
    if (cfg.radii_generations.empty())
      problems.push_back("radii_generations: required");
  }
  if (cfg.scenario == Scenario::recurrence_rate &&
      cfg.radii_generations.size() < 4)
    problems.push_back("radii_generations: need >= 4 radii");
  if (cfg.scenario == Scenario::limit_moments) {
    if (cfg.times.empty()) problems.push_back("times: required");
    if (cfg.times.size() != cfg.exponents.size())
      problems.push_back("exponents: must match times length");
  }
  if (cfg.scenario == Scenario::corollary_case) {
    if (cfg.full_shift_l < 2) problems.push_back("full_shift_L: need >= 2");
    if (cfg.full_shift_d != 1 && cfg.full_shift_d != 2)
      problems.push_back("full_shift_d: must be 1 or 2");
    if (cfg.radii_generations.empty())
      problems.push_back("radii_generations: required");
  }
  if (cfg.x_shift && !cfg.cocycle.empty() &&
      static_cast<int>(cfg.cocycle.size()) != cfg.x_shift->alphabet)
    problems.push_back("cocycle: needs one value per x_shift symbol");

  if (!problems.empty()) throw SchemaError(problems);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(),
                      std::filesystem::path(path).parent_path().string());
}

}  // namespace ttlab

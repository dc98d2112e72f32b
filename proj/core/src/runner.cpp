#include "ttlab/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ttlab/parallel.hpp"
#include "ttlab/version.hpp"

namespace ttlab {

int effective_workers(const ExperimentConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  if (const char* env = std::getenv("TTLAB_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return resolve_workers(0);
}

RunOutputs run_experiment(const ExperimentConfig& cfg) {
  RunOutputs out;
  try {
    switch (cfg.scenario) {
      case Scenario::llt:
        out.report = scenario_llt(cfg, out.csv);
        break;
      case Scenario::first_return:
        out.report = scenario_first_return(cfg, out.csv);
        break;
      case Scenario::point_process:
        out.report = scenario_point_process(cfg, out.csv);
        break;
      case Scenario::z_extension:
        out.report = scenario_z_extension(cfg, out.csv);
        break;
      case Scenario::recurrence_rate:
        out.report = scenario_recurrence(cfg, out.csv);
        break;
      case Scenario::limit_moments:
        out.report = scenario_limit_moments(cfg, out.csv);
        break;
      case Scenario::corollary_case:
        out.report = scenario_corollary_case(cfg, out.csv);
        break;
    }
  } catch (const std::length_error& e) {
    // Resource guard breach: emit whatever was produced, flagged INCOMPLETE.
    out.report.incomplete = true;
    ComparisonRow row;
    row.name = "INCOMPLETE";
    row.pass = false;
    row.target_formula = std::string("resource guard: ") + e.what();
    out.report.add(std::move(row));
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).find("guard") == std::string::npos) throw;
    out.report.incomplete = true;
    ComparisonRow row;
    row.name = "INCOMPLETE";
    row.pass = false;
    row.target_formula = std::string("resource guard: ") + e.what();
    out.report.add(std::move(row));
  }
  out.report.scenario = scenario_name(cfg.scenario);
  out.report.seed = cfg.seed;
  out.report.config_hash = config_hash_hex(cfg.raw);
  out.report.version = kVersion;
  return out;
}

void write_outputs(const RunOutputs& outputs, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  outputs.csv.write_file(
      (std::filesystem::path(out_dir) / "results.csv").string());
  std::ofstream rep(std::filesystem::path(out_dir) / "report.json",
                    std::ios::binary);
  if (!rep) throw std::runtime_error("cannot write report.json");
  rep << report_to_json(outputs.report);
}

}  // namespace ttlab

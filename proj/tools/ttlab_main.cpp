#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ttlab/config.hpp"
#include "ttlab/runner.hpp"
#include "ttlab/version.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int workers) {
  ttlab::ExperimentConfig cfg = ttlab::load_config(config_path);
  if (workers > 0) cfg.workers = workers;
  const ttlab::RunOutputs outputs = ttlab::run_experiment(cfg);
  ttlab::write_outputs(outputs, out_dir);
  for (const auto& row : outputs.report.rows) {
    std::cout << (row.pass ? "[PASS] " : "[FAIL] ") << row.name
              << ": empirical=" << ttlab::format_g17(row.empirical)
              << " target=" << ttlab::format_g17(row.theoretical) << "\n";
  }
  std::cout << (outputs.report.all_pass() ? "OK" : "FAILED") << " ("
            << out_dir << ")\n";
  return outputs.report.all_pass() ? 0 : 1;
}

int cmd_validate(const std::string& config_path) {
  try {
    ttlab::load_config(config_path);
  } catch (const ttlab::SchemaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  std::cout << "config OK\n";
  return 0;
}

int cmd_report(const std::string& results_dir) {
  const auto path = std::filesystem::path(results_dir) / "report.json";
  std::ifstream in(path);
  if (!in) {
    std::cerr << "no report.json under " << results_dir << "\n";
    return 2;
  }
  nlohmann::json j;
  in >> j;
  bool all_pass = j.value("all_pass", false);
  std::cout << "scenario: " << j.value("scenario", "?") << "\n";
  for (const auto& row : j["rows"]) {
    std::cout << (row.value("pass", false) ? "[PASS] " : "[FAIL] ")
              << row.value("name", "?")
              << ": empirical=" << row.value("empirical", "?")
              << " target=" << row.value("theoretical", "?") << "\n";
  }
  std::cout << (all_pass ? "OK" : "FAILED") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ttlab: return-time statistics laboratory for T,T^{-1} skew "
               "products over subshifts"};
  app.set_version_flag("--version", ttlab::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir = "results", results_dir;
  int workers = 0;

  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "config JSON path")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", workers,
                  "worker threads (default: TTLAB_WORKERS or hardware)");

  auto* validate = app.add_subcommand("validate", "validate a config");
  validate->add_option("config", config_path, "config JSON path")->required();

  auto* report = app.add_subcommand("report", "print a results directory");
  report->add_option("dir", results_dir, "results directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, workers);
    if (validate->parsed()) return cmd_validate(config_path);
    if (report->parsed()) return cmd_report(results_dir);
  } catch (const ttlab::SchemaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

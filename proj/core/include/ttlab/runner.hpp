#pragma once

#include "ttlab/config.hpp"
#include "ttlab/event_series.hpp"
#include "ttlab/moments.hpp"
#include "ttlab/report.hpp"

namespace ttlab {

// Empirical joint interval-count moments (jackknife errors) against
// limit-process targets, verdicts at `sigmas` combined standard errors.
// Zero-length intervals degenerate to all-zero counts and a zero target.
std::vector<ComparisonRow> moment_compare(
    const std::vector<EventSeries>& samples, const std::vector<double>& times,
    const std::vector<int>& exponents, const ZParams& params,
    const McParams& mc, double sigmas);

struct RunOutputs {
  ComparisonReport report;
  CsvSink csv;
};

// Dispatches the configured scenario; the returned outputs are byte-stable
// functions of (config, seed) regardless of the worker count.
RunOutputs run_experiment(const ExperimentConfig& cfg);

// Writes results.csv and report.json under out_dir (created if missing).
void write_outputs(const RunOutputs& outputs, const std::string& out_dir);

// config.workers, else TTLAB_WORKERS, else hardware concurrency.
int effective_workers(const ExperimentConfig& cfg);

ComparisonReport scenario_llt(const ExperimentConfig& cfg, CsvSink& csv);
ComparisonReport scenario_first_return(const ExperimentConfig& cfg,
                                       CsvSink& csv);
ComparisonReport scenario_point_process(const ExperimentConfig& cfg,
                                        CsvSink& csv);
ComparisonReport scenario_z_extension(const ExperimentConfig& cfg,
                                      CsvSink& csv);
ComparisonReport scenario_recurrence(const ExperimentConfig& cfg,
                                     CsvSink& csv);
ComparisonReport scenario_limit_moments(const ExperimentConfig& cfg,
                                        CsvSink& csv);
ComparisonReport scenario_corollary_case(const ExperimentConfig& cfg,
                                         CsvSink& csv);

}  // namespace ttlab

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "codemix/config.hpp"
#include "codemix/harness.hpp"

namespace codemix {

struct SignificanceResult {
  Metric metric = Metric::Accuracy;
  std::optional<FriedmanReport> report;
  std::string error;  // why the test could not run
};

/// Friedman for accuracy and MCC with the config's orientation; an
/// incomplete or too small grid yields an error entry instead of throwing.
std::vector<SignificanceResult> significance_all(const GridResult& grid,
                                                 const ExperimentConfig& config);

/// Cells sorted by accuracy descending (grid order among ties), failed
/// cells last.
std::vector<const CellResult*> ranked_cells(const GridResult& grid);

/// `<vectorizer>_<classifier>_<class>.csv` with forest size / kernel folded
/// into the classifier part and the class name reduced to [A-Za-z0-9_-].
std::string roc_file_name(const CellResult& cell, const std::string& class_name);

void write_results_csv(std::ostream& out, const GridResult& grid, bool with_seconds);
void write_timings_csv(std::ostream& out, const GridResult& grid);
void write_report_md(std::ostream& out, const GridResult& grid,
                     const std::vector<SignificanceResult>& significance,
                     const BaselineRegistry& registry, const ExperimentConfig& config);
void write_run_json(std::ostream& out, const GridResult& grid,
                    const std::vector<SignificanceResult>& significance,
                    const ExperimentConfig& config, const std::string& timestamp);

/// Writes results.csv, report.md, roc/, run.json and timings.csv under
/// out_dir, creating it. Throws Error when a file cannot be written.
void emit_report(const GridResult& grid, const std::vector<SignificanceResult>& significance,
                 const BaselineRegistry& registry, const ExperimentConfig& config,
                 const std::filesystem::path& out_dir);

}  // namespace codemix

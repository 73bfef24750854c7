#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "codemix/config.hpp"
#include "codemix/corpus.hpp"
#include "codemix/error.hpp"
#include "codemix/format.hpp"
#include "codemix/harness.hpp"
#include "codemix/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCell = 3;

int run_command(const std::string& config_path, const std::optional<std::string>& data,
                const std::optional<std::string>& out, const std::optional<std::uint64_t>& seed) {
  auto config = codemix::load_config(config_path);
  if (data) config.data = *data;
  if (out) config.output = *out;
  if (seed) config.seed = *seed;
  codemix::apply_environment(config);

  const auto grid = codemix::run_grid(config);
  const auto significance = codemix::significance_all(grid, config);
  codemix::emit_report(grid, significance, codemix::BaselineRegistry::published(), config,
                       config.output);

  std::cout << grid.cells.size() << " cells, " << grid.failed() << " failed; train "
            << grid.train_size << ", test " << grid.test_size << "\n";
  const auto ranked = codemix::ranked_cells(grid);
  if (!ranked.empty() && ranked.front()->ok) {
    const auto* best = ranked.front();
    std::cout << "best: " << best->name() << " accuracy "
              << codemix::format_number(best->accuracy) << " mcc "
              << codemix::format_number(best->mcc) << "\n";
  }
  for (const auto& s : significance) {
    std::cout << "friedman " << codemix::to_string(s.metric) << ": ";
    if (s.report) {
      std::cout << "statistic " << codemix::format_number(s.report->statistic) << ", p "
                << codemix::format_number(s.report->p_value) << "\n";
    } else {
      std::cout << "not computed (" << s.error << ")\n";
    }
  }
  std::cout << "wrote " << config.output.string() << "\n";
  for (const auto& cell : grid.cells) {
    if (!cell.ok) std::cerr << "cell " << cell.name() << " failed: " << cell.error << "\n";
  }
  return grid.failed() > 0 ? kExitCell : kExitOk;
}

int inspect_command(const std::string& data, const codemix::CsvColumns& columns) {
  const auto corpus = codemix::load_csv(data, columns);
  std::cout << "rows: " << corpus.size() << "\n";
  std::cout << "labels: " << corpus.num_classes() << "\n";
  const auto& labels = *corpus.labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto id = static_cast<codemix::LabelId>(i);
    std::cout << "  " << labels.name(id) << "\t" << labels.frequency(id) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Code-mixed comment sentiment grid runner"};
  app.set_version_flag("--version", "codemix " + std::string(codemix::toolkit_version()));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the vectorizer x classifier grid and write reports");
  std::string config_path;
  std::optional<std::string> data;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--data", data, "Dataset CSV (overrides the config)");
  run->add_option("--out", out, "Output directory (overrides the config)");
  run->add_option("--seed", seed, "Master seed (overrides the config)");

  auto* inspect = app.add_subcommand("inspect", "Print row count and label frequencies");
  std::string inspect_data;
  codemix::CsvColumns columns;
  inspect->add_option("--data", inspect_data, "Dataset CSV")->required();
  inspect->add_option("--text-column", columns.text, "Text column name");
  inspect->add_option("--label-column", columns.label, "Label column name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return run_command(config_path, data, out, seed);
    return inspect_command(inspect_data, columns);
  } catch (const codemix::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const codemix::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const codemix::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}

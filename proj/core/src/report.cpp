#include "codemix/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "codemix/csv.hpp"
#include "codemix/error.hpp"
#include "codemix/format.hpp"
#include "codemix/hash.hpp"
#include "codemix/rng.hpp"
#include "codemix/stopwords.hpp"

namespace codemix {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string seconds_field(const CellResult& cell, bool with_seconds) {
  return with_seconds ? format_number(cell.seconds) : "NA";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + p.string());
  }
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& p) {
  out.close();
  if (!out) {
    throw Error("failed writing " + p.string());
  }
}

}  // namespace

std::vector<SignificanceResult> significance_all(const GridResult& grid,
                                                 const ExperimentConfig& config) {
  std::vector<SignificanceResult> out;
  for (const auto metric : {Metric::Accuracy, Metric::Mcc}) {
    SignificanceResult r;
    r.metric = metric;
    try {
      r.report = significance(grid, metric, config.friedman_orientation,
                              config.friedman_tie_correction);
    } catch (const ArgumentError& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<const CellResult*> ranked_cells(const GridResult& grid) {
  std::vector<const CellResult*> rows;
  for (const auto& c : grid.cells) rows.push_back(&c);
  std::stable_sort(rows.begin(), rows.end(), [](const CellResult* a, const CellResult* b) {
    if (a->ok != b->ok) return a->ok;
    return a->ok && a->accuracy > b->accuracy;
  });
  return rows;
}

std::string roc_file_name(const CellResult& cell, const std::string& class_name) {
  std::string clf(cell.classifier());
  if (cell.spec.kind == ClassifierKind::RandomForest) {
    clf += "-" + std::to_string(cell.spec.n_estimators);
  } else if (cell.spec.kind == ClassifierKind::SVM) {
    clf += "-" + std::string(to_string(cell.spec.kernel));
  }
  std::string cls;
  for (const char ch : class_name) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
    cls += keep ? ch : '_';
  }
  return std::string(to_string(cell.vectorizer)) + "_" + clf + "_" + cls + ".csv";
}

void write_results_csv(std::ostream& out, const GridResult& grid, bool with_seconds) {
  out << "vectorizer,classifier,params,accuracy,mcc,seconds\n";
  for (const auto* cell : ranked_cells(grid)) {
    out << to_string(cell->vectorizer) << ',' << cell->classifier() << ','
        << csv::escape(cell->params) << ',';
    if (cell->ok) {
      out << format_number(cell->accuracy) << ',' << format_number(cell->mcc);
    } else {
      out << "failed,failed";
    }
    out << ',' << seconds_field(*cell, with_seconds) << '\n';
  }
}

void write_timings_csv(std::ostream& out, const GridResult& grid) {
  out << "vectorizer,classifier,params,seconds\n";
  for (const auto& cell : grid.cells) {
    out << to_string(cell.vectorizer) << ',' << cell.classifier() << ','
        << csv::escape(cell.params) << ',' << format_number(cell.seconds) << '\n';
  }
}

void write_report_md(std::ostream& out, const GridResult& grid,
                     const std::vector<SignificanceResult>& significance,
                     const BaselineRegistry& registry, const ExperimentConfig& config) {
  out << "# Sentiment grid results\n\n";
  out << "Train rows: " << grid.train_size << ". Test rows: " << grid.test_size
      << ". Seed: " << config.seed << ". Partition digest: `" << hex64(grid.partition_digest)
      << "`.\n\n";

  out << "## Grid\n\n";
  out << "Sorted by accuracy. Rows marked `*` represent their classifier in the significance "
         "test.\n\n";
  out << "| vectorizer | classifier | params | accuracy | mcc | seconds | |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto* cell : ranked_cells(grid)) {
    out << "| " << to_string(cell->vectorizer) << " | " << cell->classifier() << " | "
        << cell->params << " | ";
    if (cell->ok) {
      out << format_number(cell->accuracy) << " | " << format_number(cell->mcc);
    } else {
      out << "failed | failed";
    }
    out << " | " << seconds_field(*cell, config.timings) << " | "
        << (cell->friedman_pick ? "*" : "") << " |\n";
  }
  if (!config.timings) {
    out << "\nPer-cell wall-clock seconds are in `timings.csv`.\n";
  }

  out << "\n## Significance\n\n";
  const bool by_clf = config.friedman_orientation == FriedmanOrientation::ClassifiersAsTreatments;
  out << "Friedman test with " << (by_clf ? "classifiers" : "vectorizers")
      << " as treatments and " << (by_clf ? "vectorizers" : "classifiers")
      << " as blocks; tie correction " << (config.friedman_tie_correction ? "on" : "off")
      << ".\n\n";
  out << "| metric | blocks | treatments | statistic | df | p-value |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& s : significance) {
    out << "| " << to_string(s.metric) << " | ";
    if (s.report) {
      out << s.report->blocks << " | " << s.report->treatments << " | "
          << format_number(s.report->statistic) << " | " << s.report->df << " | "
          << format_number(s.report->p_value) << " |\n";
    } else {
      out << "- | - | not computed | - | " << s.error << " |\n";
    }
  }
  for (const auto& s : significance) {
    if (!s.report) continue;
    out << "\nMean ranks (" << to_string(s.metric) << "):";
    const std::size_t k = s.report->treatments;
    for (std::size_t t = 0; t < k; ++t) {
      const std::string label = by_clf ? std::string(to_string(grid.classifiers[t]))
                                       : std::string(to_string(grid.vectorizers[t]));
      out << (t == 0 ? " " : ", ") << label << " " << format_number(s.report->mean_ranks[t]);
    }
    out << "\n";
  }

  out << "\n## Published baselines\n\n";
  out << "| model | published accuracy | published mcc | grid accuracy | grid mcc | "
         "accuracy delta | mcc delta |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& b : registry.records()) {
    out << "| " << b.name << " | " << format_number(b.accuracy) << " | " << format_number(b.mcc)
        << " | ";
    const CellResult* cell = nullptr;
    if (b.vectorizer && b.classifier) cell = grid.pick(*b.vectorizer, *b.classifier);
    if (cell != nullptr && cell->ok) {
      out << format_number(cell->accuracy) << " | " << format_number(cell->mcc) << " | "
          << format_number(cell->accuracy - b.accuracy) << " | "
          << format_number(cell->mcc - b.mcc) << " |\n";
    } else {
      out << "- | - | - | - |\n";
    }
  }

  if (grid.failed() > 0) {
    out << "\n## Failed cells\n\n";
    for (const auto& cell : grid.cells) {
      if (!cell.ok) out << "- `" << cell.name() << "`: " << cell.error << "\n";
    }
  }

  out << "\nROC points per class are in `roc/`.\n";
}

void write_run_json(std::ostream& out, const GridResult& grid,
                    const std::vector<SignificanceResult>& significance,
                    const ExperimentConfig& config, const std::string& timestamp) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["toolkit"] = "codemix";
  j["version"] = std::string(toolkit_version());
  j["timestamp"] = timestamp;
  ordered_json cfg = ordered_json::object();
  for (const auto& [key, value] : config.entries()) cfg[key] = value;
  j["config"] = cfg;
  j["seed"] = config.seed;
  j["prng"] = std::string(Rng::kName);
  j["stopwords"] = english_stopwords().version();
  j["hash"] = std::string(kHashName);
  j["stemmer"] = "porter-1980";

  ordered_json labels = ordered_json::array();
  if (grid.labels) {
    for (std::size_t i = 0; i < grid.labels->size(); ++i) {
      labels.push_back({{"id", i},
                        {"name", grid.labels->name(static_cast<LabelId>(i))},
                        {"frequency", grid.labels->frequency(static_cast<LabelId>(i))}});
    }
  }
  j["labels"] = labels;
  j["split"] = {{"train", grid.train_size},
                {"test", grid.test_size},
                {"partition_digest", hex64(grid.partition_digest)}};
  ordered_json dims = ordered_json::object();
  for (std::size_t v = 0; v < grid.vectorizers.size() && v < grid.dimensions.size(); ++v) {
    dims[std::string(to_string(grid.vectorizers[v]))] = grid.dimensions[v];
  }
  j["dimensions"] = dims;

  ordered_json cells = ordered_json::array();
  for (const auto& cell : grid.cells) {
    ordered_json c;
    c["vectorizer"] = std::string(to_string(cell.vectorizer));
    c["classifier"] = std::string(cell.classifier());
    c["params"] = cell.params;
    c["seed"] = cell.spec.seed;
    c["ok"] = cell.ok;
    if (cell.ok) {
      c["accuracy"] = cell.accuracy;
      c["mcc"] = cell.mcc;
    } else {
      c["error"] = cell.error;
    }
    c["seconds"] = cell.seconds;
    c["friedman_pick"] = cell.friedman_pick;
    if (cell.confusion) {
      ordered_json cm = ordered_json::array();
      for (std::size_t i = 0; i < cell.confusion->num_classes(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < cell.confusion->num_classes(); ++k) {
          row.push_back(cell.confusion->at(i, k));
        }
        cm.push_back(row);
      }
      c["confusion"] = cm;
      ordered_json auc = ordered_json::object();
      for (std::size_t k = 0; k < cell.roc.size(); ++k) {
        if (cell.roc[k]) auc[grid.labels->name(static_cast<LabelId>(k))] = cell.roc[k]->auc;
      }
      c["auc"] = auc;
    }
    cells.push_back(c);
  }
  j["cells"] = cells;

  ordered_json sig = ordered_json::array();
  for (const auto& s : significance) {
    ordered_json e;
    e["metric"] = std::string(to_string(s.metric));
    e["orientation"] = std::string(to_string(config.friedman_orientation));
    if (s.report) {
      e["blocks"] = s.report->blocks;
      e["treatments"] = s.report->treatments;
      e["statistic"] = s.report->statistic;
      e["df"] = s.report->df;
      e["p_value"] = s.report->p_value;
      e["tie_correction"] = s.report->tie_correction;
      e["mean_ranks"] = s.report->mean_ranks;
    } else {
      e["error"] = s.error;
    }
    sig.push_back(e);
  }
  j["friedman"] = sig;
  out << j.dump(2) << '\n';
}

void emit_report(const GridResult& grid, const std::vector<SignificanceResult>& significance,
                 const BaselineRegistry& registry, const ExperimentConfig& config,
                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "roc", ec);
  if (ec) {
    throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());
  }

  const auto results = out_dir / "results.csv";
  auto f = open_out(results);
  write_results_csv(f, grid, config.timings);
  close_out(f, results);

  const auto report = out_dir / "report.md";
  f = open_out(report);
  write_report_md(f, grid, significance, registry, config);
  close_out(f, report);

  const auto timings = out_dir / "timings.csv";
  f = open_out(timings);
  write_timings_csv(f, grid);
  close_out(f, timings);

  for (const auto& cell : grid.cells) {
    for (std::size_t k = 0; k < cell.roc.size(); ++k) {
      if (!cell.roc[k]) continue;
      const auto path =
          out_dir / "roc" / roc_file_name(cell, grid.labels->name(static_cast<LabelId>(k)));
      f = open_out(path);
      write_roc_csv(f, *cell.roc[k]);
      close_out(f, path);
    }
  }

  const auto run = out_dir / "run.json";
  f = open_out(run);
  write_run_json(f, grid, significance, config, utc_timestamp());
  close_out(f, run);
}

}  // namespace codemix

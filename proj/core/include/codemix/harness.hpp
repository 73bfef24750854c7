#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/classifier_spec.hpp"
#include "codemix/config.hpp"
#include "codemix/corpus.hpp"
#include "codemix/evaluate.hpp"
#include "codemix/stats.hpp"
#include "codemix/vectorize.hpp"

namespace codemix {

std::string_view toolkit_version();

/// One (vectorizer, classifier variant) evaluation.
struct CellResult {
  VectorizerKind vectorizer = VectorizerKind::Count;
  ClassifierSpec spec;
  std::string params;  // hyperparameters as written to results.csv

  bool ok = false;
  std::string error;   // set when !ok
  double accuracy = 0.0;
  double mcc = 0.0;
  double seconds = 0.0;
  std::optional<ConfusionMatrix> confusion;
  /// Indexed by label id; empty when the class has no positive or no
  /// negative test row.
  std::vector<std::optional<RocCurve>> roc;
  /// This row stands for its classifier family in the significance grid.
  bool friedman_pick = false;

  std::string_view classifier() const { return to_string(spec.kind); }
  /// "<vectorizer>/<classifier>/<params>"; also the sub-seed tag.
  std::string name() const;
};

struct GridResult {
  std::vector<CellResult> cells;  // vectorizer-major, in config order
  std::vector<VectorizerKind> vectorizers;
  std::vector<ClassifierKind> classifiers;
  std::shared_ptr<const LabelTable> labels;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::uint64_t partition_digest = 0;
  std::vector<std::size_t> dimensions;  // per vectorizer; 0 when fitting failed

  std::size_t failed() const;
  const CellResult* pick(VectorizerKind v, ClassifierKind c) const;
};

/// Loads config.data and runs the grid on it.
GridResult run_grid(const ExperimentConfig& config);

/// Split once, preprocess once, then fit and score every cell. Cells run on
/// up to config.workers threads with sub-seed derive_seed(seed, name()).
/// A failing cell is recorded and does not stop the others.
GridResult run_grid(const ExperimentConfig& config, const Corpus& corpus);

enum class Metric { Accuracy, Mcc };

std::string_view to_string(Metric m);

/// Friedman test over the picked cells. With classifiers as treatments the
/// blocks are vectorizers (n = vectorizers, k = classifier families).
/// Throws ArgumentError when a picked cell is missing or failed.
FriedmanReport significance(const GridResult& grid, Metric metric, FriedmanOrientation orientation,
                            bool tie_correction = true);

struct Baseline {
  std::string name;
  std::optional<VectorizerKind> vectorizer;  // both set when a grid cell corresponds
  std::optional<ClassifierKind> classifier;
  double accuracy;
  double mcc;
  std::string source;
};

/// Published reference numbers the report compares against.
class BaselineRegistry {
 public:
  static const BaselineRegistry& published();

  const std::vector<Baseline>& records() const { return records_; }
  const Baseline* find(VectorizerKind v, ClassifierKind c) const;

 private:
  explicit BaselineRegistry(std::vector<Baseline> records) : records_(std::move(records)) {}
  std::vector<Baseline> records_;
};

}  // namespace codemix

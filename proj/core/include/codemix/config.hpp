#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codemix/classifier_spec.hpp"
#include "codemix/corpus.hpp"
#include "codemix/vectorize.hpp"

namespace codemix {

/// Which grid axis is ranked. The default ranks classifiers within each
/// vectorizer block (n = vectorizers, k = classifiers).
enum class FriedmanOrientation { ClassifiersAsTreatments, VectorizersAsTreatments };

std::string_view to_string(FriedmanOrientation o);

struct ExperimentConfig {
  std::filesystem::path data;
  CsvColumns columns;
  double test_fraction = 0.2;
  std::uint64_t seed = 42;

  std::vector<VectorizerKind> vectorizers{VectorizerKind::Count, VectorizerKind::TfIdf,
                                          VectorizerKind::TermFrequency, VectorizerKind::Hashing};
  std::vector<ClassifierKind> classifiers{ClassifierKind::MultinomialNB, ClassifierKind::KNN,
                                          ClassifierKind::DecisionTree,
                                          ClassifierKind::RandomForest, ClassifierKind::SVM};

  double nb_alpha = 1.0;
  std::size_t knn_k = 5;
  std::vector<std::size_t> rf_sizes{100, 1000, 2000};
  std::optional<std::size_t> rf_max_features;
  std::vector<KernelKind> svm_kernels{KernelKind::Rbf};
  double svm_C = 1.0;
  std::optional<double> svm_gamma;
  double svm_tolerance = 1e-3;
  HashingOptions hashing;

  std::filesystem::path output = "results";
  FriedmanOrientation friedman_orientation = FriedmanOrientation::ClassifiersAsTreatments;
  bool friedman_tie_correction = true;
  std::size_t workers = 1;
  bool timings = false;  // write measured seconds into results.csv

  /// Throws ConfigError on empty lists, a fraction outside (0, 1), zero
  /// workers or an invalid classifier hyperparameter.
  void validate() const;

  /// Every key with its resolved value, in documentation order.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Flat `key = value` text. `#` and `;` start comment lines; blank lines are
/// ignored. Unknown keys, duplicates, section headers and malformed values
/// throw ConfigError naming the line. A relative `data` or `output` path is
/// resolved against base_dir.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});

/// Reads a config file; relative paths inside resolve against its directory.
/// Throws ConfigError when the file cannot be opened.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies CODEMIX_WORKERS when set. Throws ConfigError on a bad value.
void apply_environment(ExperimentConfig& config);

}  // namespace codemix

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "codemix/tree.hpp"

namespace codemix {

struct ForestOptions {
  bool bootstrap = true;
  std::optional<std::size_t> max_features;  // nullopt: ceil(sqrt(dimension))
  bool all_features = false;                // scan every candidate (overrides max_features)
  std::size_t workers = 1;
};

class RandomForestModel {
 public:
  std::size_t num_classes() const { return num_classes_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<DecisionTreeModel>& trees() const { return trees_; }

  /// Mean of the per-tree leaf distributions.
  ClassScores scores(const DocumentVector& x) const;
  LabelId predict(const DocumentVector& x) const { return argmax(scores(x)); }

 private:
  friend RandomForestModel fit_random_forest(const DocTermMatrix&, std::size_t, std::uint64_t,
                                             const ForestOptions&);

  std::size_t num_classes_ = 0;
  std::size_t dimension_ = 0;
  std::vector<DecisionTreeModel> trees_;
};

/// Tree t uses the generator seeded with derive_seed(seed, t): first N
/// bootstrap draws with replacement, then per-node feature draws. Results
/// do not depend on the worker count.
RandomForestModel fit_random_forest(const DocTermMatrix& matrix, std::size_t n_estimators,
                                    std::uint64_t seed, const ForestOptions& options = {});

}  // namespace codemix

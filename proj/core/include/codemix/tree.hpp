#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "codemix/classifier_spec.hpp"
#include "codemix/rng.hpp"
#include "codemix/vectorize.hpp"

namespace codemix {

struct TreeNode {
  static constexpr std::uint32_t kLeaf = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t feature = kLeaf;
  // Internal node: index of the left child; the right child follows it.
  // Leaf: row offset of the class distribution in the value table.
  std::uint32_t child_or_value = 0;
  double threshold = 0.0;

  bool is_leaf() const { return feature == kLeaf; }
};

/// Binary CART classification tree. Samples with x[feature] <= threshold
/// go left.
class DecisionTreeModel {
 public:
  std::size_t num_classes() const { return num_classes_; }
  std::size_t dimension() const { return dimension_; }
  std::span<const TreeNode> nodes() const { return nodes_; }
  std::size_t leaf_count() const;
  std::size_t depth() const;

  /// Class distribution (weighted training fractions) of the leaf x lands in.
  std::span<const double> leaf_distribution(const DocumentVector& x) const;

  ClassScores scores(const DocumentVector& x) const;
  LabelId predict(const DocumentVector& x) const;

 private:
  friend class TreeBuilder;

  std::size_t num_classes_ = 0;
  std::size_t dimension_ = 0;
  std::vector<TreeNode> nodes_;
  // First num_classes rows are the one-hot distributions shared by pure leaves.
  std::vector<double> values_;
};

/// One weighted training row; weights are bootstrap multiplicities.
struct TreeSample {
  std::uint32_t row = 0;
  double weight = 1.0;
};

/// Grows unpruned Gini trees on one training matrix, reusing scratch
/// buffers between trees. Not thread-safe; use one builder per thread.
///
/// At every node only features that are non-constant over the node's rows
/// are candidates. With max_features unset all candidates are scanned in
/// ascending index order; otherwise a uniform random subset of that size
/// is drawn from them. Thresholds are midpoints between consecutive
/// distinct values; the first split with the largest impurity decrease
/// wins. Nodes stop when pure or when no candidate feature remains.
class TreeBuilder {
 public:
  explicit TreeBuilder(const DocTermMatrix& matrix);

  DecisionTreeModel grow(std::vector<TreeSample> samples, std::optional<std::size_t> max_features,
                         Rng* rng);

 private:
  struct Item {
    double value;
    std::uint32_t row;
    std::uint32_t label;
    double weight;
  };
  struct Split {
    std::uint32_t feature = TreeNode::kLeaf;
    double threshold = 0.0;
    double proxy = -1.0;
  };

  void candidate_features(std::span<const TreeSample> node);
  Split best_split(std::span<const TreeSample> node, std::span<const double> class_weight,
                   std::optional<std::size_t> max_features, Rng* rng);
  void scan_feature(std::uint32_t feature, std::vector<Item>& items, std::size_t node_rows,
                    std::span<const double> class_weight, Split& best);

  const DocTermMatrix& m_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> nz_count_;
  std::vector<double> first_value_;
  std::vector<char> varies_;
  std::vector<std::uint32_t> slot_stamp_;
  std::vector<std::uint32_t> slot_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> candidates_;
  std::vector<std::vector<Item>> buckets_;
  std::vector<std::uint32_t> row_stamp_;
  std::vector<double> row_value_;
  std::vector<double> left_, right_, nz_weight_;
};

/// Single tree on all rows with every candidate feature scanned; the seed is
/// accepted for interface symmetry and does not influence the result.
DecisionTreeModel fit_decision_tree(const DocTermMatrix& matrix, std::uint64_t seed = 42);

}  // namespace codemix

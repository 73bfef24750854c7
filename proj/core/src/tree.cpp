#include "codemix/tree.hpp"

#include <algorithm>
#include <utility>

#include "codemix/error.hpp"

namespace codemix {

std::size_t DecisionTreeModel::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTreeModel::depth() const {
  if (nodes_.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [idx, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const auto& n = nodes_[idx];
    if (!n.is_leaf()) {
      stack.emplace_back(n.child_or_value, d + 1);
      stack.emplace_back(n.child_or_value + 1, d + 1);
    }
  }
  return deepest;
}

std::span<const double> DecisionTreeModel::leaf_distribution(const DocumentVector& x) const {
  if (x.dimension() != dimension_) {
    throw ArgumentError("decision tree: input dimension mismatch");
  }
  std::uint32_t idx = 0;
  while (!nodes_[idx].is_leaf()) {
    const auto& n = nodes_[idx];
    idx = x.value_at(n.feature) <= n.threshold ? n.child_or_value : n.child_or_value + 1;
  }
  return std::span<const double>(values_).subspan(
      static_cast<std::size_t>(nodes_[idx].child_or_value) * num_classes_, num_classes_);
}

ClassScores DecisionTreeModel::scores(const DocumentVector& x) const {
  const auto d = leaf_distribution(x);
  return ClassScores(d.begin(), d.end());
}

LabelId DecisionTreeModel::predict(const DocumentVector& x) const {
  return argmax(leaf_distribution(x));
}

TreeBuilder::TreeBuilder(const DocTermMatrix& matrix)
    : m_(matrix),
      stamp_(matrix.dimension, 0),
      nz_count_(matrix.dimension, 0),
      first_value_(matrix.dimension, 0.0),
      varies_(matrix.dimension, 0),
      slot_stamp_(matrix.dimension, 0),
      slot_(matrix.dimension, 0),
      row_stamp_(matrix.size(), 0),
      row_value_(matrix.size(), 0.0),
      left_(matrix.num_classes, 0.0),
      right_(matrix.num_classes, 0.0),
      nz_weight_(matrix.num_classes, 0.0) {}

void TreeBuilder::candidate_features(std::span<const TreeSample> node) {
  ++epoch_;
  touched_.clear();
  for (const auto& s : node) {
    for (const auto& e : m_.rows[s.row].entries()) {
      const auto f = e.index;
      if (stamp_[f] != epoch_) {
        stamp_[f] = epoch_;
        nz_count_[f] = 1;
        first_value_[f] = e.value;
        varies_[f] = 0;
        touched_.push_back(f);
      } else {
        ++nz_count_[f];
        if (e.value != first_value_[f]) varies_[f] = 1;
      }
    }
  }
  candidates_.clear();
  for (const auto f : touched_) {
    if (nz_count_[f] < node.size() || varies_[f]) candidates_.push_back(f);
  }
  std::sort(candidates_.begin(), candidates_.end());
}

void TreeBuilder::scan_feature(std::uint32_t feature, std::vector<Item>& items,
                               std::size_t node_rows, std::span<const double> class_weight,
                               Split& best) {
  const std::size_t L = class_weight.size();
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.value < b.value; });
  std::fill(nz_weight_.begin(), nz_weight_.end(), 0.0);
  for (const auto& it : items) nz_weight_[it.label] += it.weight;
  const bool has_zeros = items.size() < node_rows;

  double total = 0.0;
  for (std::size_t c = 0; c < L; ++c) total += class_weight[c];
  std::fill(left_.begin(), left_.end(), 0.0);
  double left_total = 0.0;

  // Walk the value groups in ascending order; the implicit zeros form one
  // group placed between the negative and positive stored values.
  const auto evaluate = [&](double lo, double hi) {
    double proxy = 0.0;
    double ls = 0.0;
    double rs = 0.0;
    for (std::size_t c = 0; c < L; ++c) {
      const double r = class_weight[c] - left_[c];
      ls += left_[c] * left_[c];
      rs += r * r;
    }
    proxy = ls / left_total + rs / (total - left_total);
    if (proxy > best.proxy) {
      double threshold = lo + (hi - lo) / 2.0;
      if (threshold >= hi) threshold = lo;
      best = Split{feature, threshold, proxy};
    }
  };
  const auto add_zero_group = [&] {
    for (std::size_t c = 0; c < L; ++c) {
      const double w = class_weight[c] - nz_weight_[c];
      left_[c] += w;
      left_total += w;
    }
  };

  bool zero_done = !has_zeros;
  bool have_prev = false;
  double prev = 0.0;
  std::size_t i = 0;
  while (i < items.size() || !zero_done) {
    double value = 0.0;
    const bool take_zero = !zero_done && (i == items.size() || items[i].value > 0.0);
    if (take_zero) {
      value = 0.0;
    } else {
      value = items[i].value;
    }
    if (have_prev && value > prev) {
      evaluate(prev, value);
    }
    if (take_zero) {
      add_zero_group();
      zero_done = true;
    } else {
      const double v = items[i].value;
      while (i < items.size() && items[i].value == v) {
        left_[items[i].label] += items[i].weight;
        left_total += items[i].weight;
        ++i;
      }
    }
    prev = value;
    have_prev = true;
  }
}

TreeBuilder::Split TreeBuilder::best_split(std::span<const TreeSample> node,
                                           std::span<const double> class_weight,
                                           std::optional<std::size_t> max_features, Rng* rng) {
  candidate_features(node);
  Split best;
  if (candidates_.empty()) return best;

  if (max_features && *max_features < candidates_.size()) {
    if (rng == nullptr) {
      throw ArgumentError("tree builder: feature subsampling needs a generator");
    }
    const std::size_t m = *max_features;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + rng->below(candidates_.size() - i);
      std::swap(candidates_[i], candidates_[j]);
    }
    candidates_.resize(m);
    std::sort(candidates_.begin(), candidates_.end());
  }

  const std::size_t m = candidates_.size();
  if (buckets_.size() < m) buckets_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    slot_stamp_[candidates_[j]] = epoch_;
    slot_[candidates_[j]] = static_cast<std::uint32_t>(j);
    buckets_[j].clear();
  }
  for (const auto& s : node) {
    const LabelId label = m_.labels[s.row];
    for (const auto& e : m_.rows[s.row].entries()) {
      if (slot_stamp_[e.index] == epoch_) {
        buckets_[slot_[e.index]].push_back(Item{e.value, s.row, label, s.weight});
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    scan_feature(candidates_[j], buckets_[j], node.size(), class_weight, best);
  }
  if (best.feature != TreeNode::kLeaf) {
    // Remember the chosen feature's values for partitioning.
    const auto& items = buckets_[slot_[best.feature]];
    for (const auto& it : items) {
      row_stamp_[it.row] = epoch_;
      row_value_[it.row] = it.value;
    }
  }
  return best;
}

DecisionTreeModel TreeBuilder::grow(std::vector<TreeSample> samples,
                                    std::optional<std::size_t> max_features, Rng* rng) {
  const std::size_t L = m_.num_classes;
  DecisionTreeModel tree;
  tree.num_classes_ = L;
  tree.dimension_ = m_.dimension;
  tree.values_.assign(L * L, 0.0);
  for (std::size_t c = 0; c < L; ++c) tree.values_[c * L + c] = 1.0;
  if (samples.empty()) {
    throw ArgumentError("tree builder: no training samples");
  }

  struct Pending {
    std::uint32_t node;
    std::size_t begin;
    std::size_t end;
  };
  tree.nodes_.emplace_back();
  std::vector<Pending> stack{{0, 0, samples.size()}};
  std::vector<double> class_weight(L);

  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const std::span<TreeSample> node(samples.data() + p.begin, p.end - p.begin);

    std::fill(class_weight.begin(), class_weight.end(), 0.0);
    for (const auto& s : node) class_weight[m_.labels[s.row]] += s.weight;
    const auto present = std::count_if(class_weight.begin(), class_weight.end(),
                                       [](double w) { return w > 0.0; });

    Split split;
    if (present > 1 && node.size() >= 2) {
      split = best_split(node, class_weight, max_features, rng);
    }

    if (split.feature == TreeNode::kLeaf) {
      auto& leaf = tree.nodes_[p.node];
      leaf.feature = TreeNode::kLeaf;
      if (present == 1) {
        const auto c = static_cast<std::size_t>(
            std::find_if(class_weight.begin(), class_weight.end(), [](double w) { return w > 0.0; }) -
            class_weight.begin());
        leaf.child_or_value = static_cast<std::uint32_t>(c);
      } else {
        double total = 0.0;
        for (const double w : class_weight) total += w;
        leaf.child_or_value = static_cast<std::uint32_t>(tree.values_.size() / L);
        for (const double w : class_weight) tree.values_.push_back(w / total);
      }
      continue;
    }

    const auto mid = std::partition(node.begin(), node.end(), [&](const TreeSample& s) {
      const double v = row_stamp_[s.row] == epoch_ ? row_value_[s.row] : 0.0;
      return v <= split.threshold;
    });
    const std::size_t split_at = p.begin + static_cast<std::size_t>(mid - node.begin());

    const auto left = static_cast<std::uint32_t>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    tree.nodes_.emplace_back();
    auto& inner = tree.nodes_[p.node];
    inner.feature = split.feature;
    inner.threshold = split.threshold;
    inner.child_or_value = left;
    stack.push_back({left + 1, split_at, p.end});
    stack.push_back({left, p.begin, split_at});
  }
  return tree;
}

DecisionTreeModel fit_decision_tree(const DocTermMatrix& matrix, std::uint64_t /*seed*/) {
  check_training_matrix(matrix);
  std::vector<TreeSample> samples(matrix.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    samples[r] = TreeSample{static_cast<std::uint32_t>(r), 1.0};
  }
  TreeBuilder builder(matrix);
  return builder.grow(std::move(samples), std::nullopt, nullptr);
}

}  // namespace codemix

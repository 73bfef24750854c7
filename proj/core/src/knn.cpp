#include "codemix/knn.hpp"

#include <algorithm>
#include <numeric>

#include "codemix/error.hpp"

namespace codemix {

KnnModel fit_knn(const DocTermMatrix& matrix, std::size_t k) {
  check_training_matrix(matrix);
  if (k < 1 || k > matrix.size()) {
    throw ArgumentError("k-NN: k must lie in [1, training size]");
  }
  KnnModel model;
  model.num_classes_ = matrix.num_classes;
  model.dimension_ = matrix.dimension;
  model.k_ = k;
  model.labels_ = matrix.labels;
  model.squared_norms_.reserve(matrix.size());

  std::vector<std::size_t> counts(matrix.dimension + 1, 0);
  for (const auto& row : matrix.rows) {
    model.squared_norms_.push_back(row.squared_norm());
    for (const auto& e : row.entries()) ++counts[e.index + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  model.posting_offsets_ = counts;
  model.postings_.resize(counts.back());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    for (const auto& e : matrix.rows[r].entries()) {
      model.postings_[cursor[e.index]++] = {static_cast<std::uint32_t>(r), e.value};
    }
  }
  return model;
}

std::vector<double> KnnModel::squared_distances(const DocumentVector& x) const {
  if (x.dimension() != dimension_) {
    throw ArgumentError("k-NN: input dimension mismatch");
  }
  std::vector<double> dots(labels_.size(), 0.0);
  for (const auto& e : x.entries()) {
    for (std::size_t p = posting_offsets_[e.index]; p < posting_offsets_[e.index + 1]; ++p) {
      dots[postings_[p].row] += e.value * postings_[p].value;
    }
  }
  const double xx = x.squared_norm();
  for (std::size_t r = 0; r < dots.size(); ++r) {
    dots[r] = std::max(0.0, xx + squared_norms_[r] - 2.0 * dots[r]);
  }
  return dots;
}

std::vector<std::size_t> KnnModel::neighbours(const DocumentVector& x, std::size_t k) const {
  if (k < 1 || k > labels_.size()) {
    throw ArgumentError("k-NN: k must lie in [1, training size]");
  }
  const auto dist = squared_distances(x);
  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto closer = [&](std::size_t a, std::size_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);
  order.resize(k);
  return order;
}

ClassScores KnnModel::scores(const DocumentVector& x, std::size_t k) const {
  ClassScores s(num_classes_, 0.0);
  for (const auto r : neighbours(x, k)) s[labels_[r]] += 1.0;
  for (auto& v : s) v /= static_cast<double>(k);
  return s;
}

ClassScores predict_knn(const KnnModel& model, const DocumentVector& x, std::size_t k) {
  return model.scores(x, k);
}

}  // namespace codemix

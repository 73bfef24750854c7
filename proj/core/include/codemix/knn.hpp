#pragma once

#include <cstddef>
#include <vector>

#include "codemix/classifier_spec.hpp"
#include "codemix/vectorize.hpp"

namespace codemix {

/// Brute-force k-nearest-neighbour classifier over Euclidean distance.
///
/// Distances use ||x||^2 + ||z||^2 - 2<x, z> with sparse dot products taken
/// through an inverted index of the training rows.
class KnnModel {
 public:
  std::size_t num_classes() const { return num_classes_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t default_k() const { return k_; }

  /// Squared distance from x to every training row, in row order.
  std::vector<double> squared_distances(const DocumentVector& x) const;

  /// Training-row indices of the k nearest rows, nearest first; equal
  /// distances are ordered by row index.
  std::vector<std::size_t> neighbours(const DocumentVector& x, std::size_t k) const;

  ClassScores scores(const DocumentVector& x) const { return scores(x, k_); }
  ClassScores scores(const DocumentVector& x, std::size_t k) const;
  LabelId predict(const DocumentVector& x) const { return argmax(scores(x)); }

 private:
  friend KnnModel fit_knn(const DocTermMatrix& matrix, std::size_t k);

  struct Posting {
    std::uint32_t row;
    double value;
  };

  std::size_t num_classes_ = 0;
  std::size_t dimension_ = 0;
  std::size_t k_ = 5;
  std::vector<LabelId> labels_;
  std::vector<double> squared_norms_;
  std::vector<std::size_t> posting_offsets_;  // dimension + 1 entries
  std::vector<Posting> postings_;
};

/// Stores the training rows. Throws ArgumentError when k exceeds the row count.
KnnModel fit_knn(const DocTermMatrix& matrix, std::size_t k = 5);

/// Class frequencies among the k nearest neighbours, divided by k.
ClassScores predict_knn(const KnnModel& model, const DocumentVector& x, std::size_t k);

}  // namespace codemix

#include "codemix/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "codemix/error.hpp"

namespace codemix {

NaiveBayesModel fit_multinomial_nb(const DocTermMatrix& matrix, double alpha) {
  check_training_matrix(matrix);
  if (!(alpha > 0.0)) {
    throw ArgumentError("naive Bayes alpha must be positive");
  }
  const std::size_t L = matrix.num_classes;
  const std::size_t V = matrix.dimension;

  std::vector<double> class_count(L, 0.0);
  std::vector<double> feature_count(L * V, 0.0);
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    const LabelId c = matrix.labels[r];
    class_count[c] += 1.0;
    for (const auto& e : matrix.rows[r].entries()) {
      if (e.value < 0.0) {
        throw ArgumentError("multinomial naive Bayes requires non-negative features (row " +
                            std::to_string(r) + ")");
      }
      feature_count[c * V + e.index] += e.value;
    }
  }

  NaiveBayesModel model;
  model.dimension_ = V;
  model.log_prior_.assign(L, -std::numeric_limits<double>::infinity());
  model.feature_log_prob_.assign(L * V, 0.0);
  const double n = static_cast<double>(matrix.size());
  for (std::size_t c = 0; c < L; ++c) {
    if (class_count[c] > 0.0) {
      model.log_prior_[c] = std::log(class_count[c] / n);
    }
    double total = 0.0;
    for (std::size_t t = 0; t < V; ++t) total += feature_count[c * V + t];
    const double log_denominator = std::log(total + alpha * static_cast<double>(V));
    for (std::size_t t = 0; t < V; ++t) {
      model.feature_log_prob_[c * V + t] = std::log(feature_count[c * V + t] + alpha) - log_denominator;
    }
  }
  return model;
}

std::vector<double> NaiveBayesModel::joint_log_likelihood(const DocumentVector& x) const {
  if (x.dimension() != dimension_) {
    throw ArgumentError("naive Bayes: input dimension mismatch");
  }
  std::vector<double> jll(log_prior_);
  for (std::size_t c = 0; c < jll.size(); ++c) {
    if (std::isinf(jll[c])) continue;
    const double* row = feature_log_prob_.data() + c * dimension_;
    for (const auto& e : x.entries()) jll[c] += e.value * row[e.index];
  }
  return jll;
}

ClassScores NaiveBayesModel::scores(const DocumentVector& x) const {
  auto jll = joint_log_likelihood(x);
  const double top = *std::max_element(jll.begin(), jll.end());
  double z = 0.0;
  for (auto& v : jll) {
    v = std::exp(v - top);
    z += v;
  }
  for (auto& v : jll) v /= z;
  return jll;
}

LabelId NaiveBayesModel::predict(const DocumentVector& x) const {
  return argmax(joint_log_likelihood(x));
}

}  // namespace codemix

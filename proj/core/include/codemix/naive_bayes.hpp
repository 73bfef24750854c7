#pragma once

#include <cstddef>
#include <vector>

#include "codemix/classifier_spec.hpp"
#include "codemix/vectorize.hpp"

namespace codemix {

/// Multinomial naive Bayes with additive smoothing.
class NaiveBayesModel {
 public:
  std::size_t num_classes() const { return log_prior_.size(); }
  std::size_t dimension() const { return dimension_; }

  double log_prior(LabelId c) const { return log_prior_.at(c); }
  double feature_log_prob(LabelId c, std::uint32_t feature) const {
    return feature_log_prob_.at(static_cast<std::size_t>(c) * dimension_ + feature);
  }

  /// log P(c) + sum_t x_t log P(t | c) for every class. Classes absent from
  /// training get -infinity.
  std::vector<double> joint_log_likelihood(const DocumentVector& x) const;

  /// Posterior probabilities (softmax of the joint log-likelihood).
  ClassScores scores(const DocumentVector& x) const;
  LabelId predict(const DocumentVector& x) const;

 private:
  friend NaiveBayesModel fit_multinomial_nb(const DocTermMatrix& matrix, double alpha);

  std::size_t dimension_ = 0;
  std::vector<double> log_prior_;
  std::vector<double> feature_log_prob_;  // class-major, num_classes x dimension
};

/// Throws ArgumentError on alpha <= 0 or a negative feature value.
NaiveBayesModel fit_multinomial_nb(const DocTermMatrix& matrix, double alpha = 1.0);

}  // namespace codemix

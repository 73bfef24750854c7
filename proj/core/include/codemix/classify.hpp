#pragma once

#include <variant>

#include "codemix/classifier_spec.hpp"
#include "codemix/forest.hpp"
#include "codemix/knn.hpp"
#include "codemix/naive_bayes.hpp"
#include "codemix/svm.hpp"
#include "codemix/tree.hpp"
#include "codemix/vectorize.hpp"

namespace codemix {

/// A fitted classifier of any kind behind one score/predict surface.
class TrainedModel {
 public:
  using State =
      std::variant<NaiveBayesModel, KnnModel, DecisionTreeModel, RandomForestModel, SvmModel>;

  TrainedModel(ClassifierSpec spec, State state) : spec_(spec), state_(std::move(state)) {}

  const ClassifierSpec& spec() const { return spec_; }
  std::size_t num_classes() const;
  std::size_t dimension() const;

  ClassScores scores(const DocumentVector& x) const;
  LabelId predict(const DocumentVector& x) const;

  template <typename Model>
  const Model* as() const {
    return std::get_if<Model>(&state_);
  }

 private:
  ClassifierSpec spec_;
  State state_;
};

/// Dispatches to the per-kind trainer. Throws ArgumentError on an invalid
/// spec, single-class labels, mismatched row dimensions or (naive Bayes) a
/// negative feature; ConvergenceError when SMO hits its cap.
TrainedModel fit(const DocTermMatrix& matrix, const ClassifierSpec& spec);

}  // namespace codemix

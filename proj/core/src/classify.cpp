#include "codemix/classify.hpp"

#include <sstream>

#include "codemix/error.hpp"
#include "codemix/format.hpp"

namespace codemix {

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::MultinomialNB:
      return "nb";
    case ClassifierKind::KNN:
      return "knn";
    case ClassifierKind::DecisionTree:
      return "dt";
    case ClassifierKind::RandomForest:
      return "rf";
    case ClassifierKind::SVM:
      return "svm";
  }
  return "nb";
}

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::Linear ? "linear" : "rbf";
}

std::optional<ClassifierKind> parse_classifier_kind(std::string_view name) {
  for (const auto k : {ClassifierKind::MultinomialNB, ClassifierKind::KNN,
                       ClassifierKind::DecisionTree, ClassifierKind::RandomForest,
                       ClassifierKind::SVM}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<KernelKind> parse_kernel_kind(std::string_view name) {
  if (name == "linear") return KernelKind::Linear;
  if (name == "rbf") return KernelKind::Rbf;
  return std::nullopt;
}

void ClassifierSpec::validate() const {
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (n_estimators < 1) throw ArgumentError("n_estimators must be at least 1");
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  if (!(C > 0.0)) throw ArgumentError("C must be positive");
  if (gamma && !(*gamma > 0.0)) throw ArgumentError("gamma must be positive");
  if (!(tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
  if (max_features && *max_features < 1) throw ArgumentError("max_features must be positive");
}

std::string ClassifierSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case ClassifierKind::MultinomialNB:
      out << "alpha=" << format_number(alpha);
      break;
    case ClassifierKind::KNN:
      out << "k=" << k;
      break;
    case ClassifierKind::DecisionTree:
      out << "criterion=gini";
      break;
    case ClassifierKind::RandomForest:
      out << "n_estimators=" << n_estimators << ";max_features=";
      if (max_features) out << *max_features; else out << "sqrt";
      if (!bootstrap) out << ";bootstrap=false";
      break;
    case ClassifierKind::SVM:
      out << "kernel=" << to_string(kernel) << ";C=" << format_number(C) << ";gamma=";
      if (gamma) out << format_number(*gamma); else out << "scale";
      break;
  }
  return out.str();
}

LabelId argmax(std::span<const double> scores) {
  if (scores.empty()) {
    throw ArgumentError("argmax of an empty score vector");
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return static_cast<LabelId>(best);
}

void check_training_matrix(const DocTermMatrix& matrix) {
  if (matrix.size() == 0) {
    throw ArgumentError("training matrix is empty");
  }
  matrix.validate();
  std::vector<bool> seen(matrix.num_classes, false);
  std::size_t distinct = 0;
  for (const auto l : matrix.labels) {
    if (!seen[l]) {
      seen[l] = true;
      ++distinct;
    }
  }
  if (distinct < 2) {
    throw ArgumentError("training data must contain at least two classes");
  }
}

std::size_t TrainedModel::num_classes() const {
  return std::visit([](const auto& m) { return m.num_classes(); }, state_);
}

std::size_t TrainedModel::dimension() const {
  return std::visit([](const auto& m) { return m.dimension(); }, state_);
}

ClassScores TrainedModel::scores(const DocumentVector& x) const {
  return std::visit([&](const auto& m) { return m.scores(x); }, state_);
}

LabelId TrainedModel::predict(const DocumentVector& x) const {
  return std::visit([&](const auto& m) { return m.predict(x); }, state_);
}

TrainedModel fit(const DocTermMatrix& matrix, const ClassifierSpec& spec) {
  spec.validate();
  check_training_matrix(matrix);
  switch (spec.kind) {
    case ClassifierKind::MultinomialNB:
      return TrainedModel(spec, fit_multinomial_nb(matrix, spec.alpha));
    case ClassifierKind::KNN:
      return TrainedModel(spec, fit_knn(matrix, spec.k));
    case ClassifierKind::DecisionTree:
      return TrainedModel(spec, fit_decision_tree(matrix, spec.seed));
    case ClassifierKind::RandomForest: {
      ForestOptions opts;
      opts.bootstrap = spec.bootstrap;
      opts.max_features = spec.max_features;
      opts.workers = spec.workers;
      return TrainedModel(spec, fit_random_forest(matrix, spec.n_estimators, spec.seed, opts));
    }
    case ClassifierKind::SVM:
      return TrainedModel(spec, fit_svm(matrix, spec));
  }
  throw ArgumentError("unknown classifier kind");
}

}  // namespace codemix

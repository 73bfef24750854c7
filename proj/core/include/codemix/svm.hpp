#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "codemix/classifier_spec.hpp"
#include "codemix/vectorize.hpp"

namespace codemix {

struct SmoOptions {
  double C = 1.0;
  double tolerance = 1e-3;
  std::size_t max_iter = 0;  // 0: max(10'000'000, 100 * n)
};

struct SmoSolution {
  std::vector<double> alpha;
  double rho = 0.0;
  std::size_t iterations = 0;
};

/// Solves the C-SVC dual  min 1/2 a'Qa - e'a  s.t. y'a = 0, 0 <= a_i <= C
/// with Q_ij = y_i y_j K_ij, by SMO with second-order working-set selection.
/// kernel is the dense row-major n x n Gram matrix, y holds +1/-1. Stops
/// when the maximal KKT violation gap drops below tolerance; throws
/// ConvergenceError when the iteration cap is reached first. The decision
/// function is sum_i y_i a_i K(x_i, x) - rho.
SmoSolution solve_smo(std::span<const double> kernel, std::span<const std::int8_t> y,
                      const SmoOptions& options);

/// One pairwise machine: class `positive` (the lower id) against `negative`.
struct BinarySvm {
  LabelId positive = 0;
  LabelId negative = 0;
  std::vector<std::uint32_t> rows;  // training rows of the two classes
  std::vector<std::int8_t> y;       // +1 for positive, -1 for negative, aligned with rows
  std::vector<double> alpha;        // dual solution aligned with rows
  double rho = 0.0;
  std::size_t iterations = 0;
  // Support vectors: indices into SvmModel::support_vectors() with y_i * alpha_i.
  std::vector<std::uint32_t> support;
  std::vector<double> coef;
};

/// One-vs-one SVM; prediction by pairwise voting, ties to the lowest id.
class SvmModel {
 public:
  std::size_t num_classes() const { return num_classes_; }
  std::size_t dimension() const { return dimension_; }
  KernelKind kernel() const { return kernel_; }
  double gamma() const { return gamma_; }
  const std::vector<BinarySvm>& machines() const { return machines_; }
  const std::vector<DocumentVector>& support_vectors() const { return support_vectors_; }

  double kernel_value(const DocumentVector& a, double a_sq, const DocumentVector& b,
                      double b_sq) const;

  /// Decision value of every machine, in machines() order.
  std::vector<double> decision_values(const DocumentVector& x) const;

  /// Pairwise vote counts divided by the number of machines.
  ClassScores scores(const DocumentVector& x) const;
  LabelId predict(const DocumentVector& x) const { return argmax(scores(x)); }

 private:
  friend SvmModel fit_svm(const DocTermMatrix&, const ClassifierSpec&);

  std::size_t num_classes_ = 0;
  std::size_t dimension_ = 0;
  KernelKind kernel_ = KernelKind::Rbf;
  double gamma_ = 1.0;
  std::vector<BinarySvm> machines_;
  std::vector<DocumentVector> support_vectors_;
  std::vector<double> support_sq_norms_;
};

/// gamma = 1 / (dimension * variance of all matrix entries, zeros included);
/// 1.0 when the variance is zero.
double scale_gamma(const DocTermMatrix& matrix);

/// Reads kernel, C, gamma, tolerance, max_iter and workers from spec.
SvmModel fit_svm(const DocTermMatrix& matrix, const ClassifierSpec& spec);

}  // namespace codemix

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "codemix/classifier_spec.hpp"

namespace codemix {

/// L x L counts; entry (i, j) is rows of true class i predicted as j.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes)
      : n_(num_classes), counts_(num_classes * num_classes, 0) {}

  std::size_t num_classes() const { return n_; }
  std::uint64_t at(std::size_t truth, std::size_t predicted) const {
    return counts_.at(truth * n_ + predicted);
  }
  void add(std::size_t truth, std::size_t predicted, std::uint64_t count = 1) {
    counts_.at(truth * n_ + predicted) += count;
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(std::size_t truth) const;
  std::uint64_t column_sum(std::size_t predicted) const;
  ConfusionMatrix transposed() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> counts_;
};

/// Throws ArgumentError on a length mismatch or a label >= num_classes.
ConfusionMatrix confusion(std::span<const LabelId> truth, std::span<const LabelId> predicted,
                          std::size_t num_classes);

/// trace / total; throws ArgumentError on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

/// Multi-class Matthews correlation (Gorodkin's R_K):
///   (c s - sum_k p_k t_k) / sqrt((s^2 - sum p_k^2)(s^2 - sum t_k^2))
/// with c the trace, s the total, t_k row sums and p_k column sums.
/// Returns 0 when either variance factor is zero.
double mcc(const ConfusionMatrix& cm);

struct RocPoint {
  double threshold;  // +infinity for the leading (0, 0) point
  double fpr;
  double tpr;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// One-vs-rest ROC for class_id from per-row scores. Points start at (0, 0)
/// and step once per distinct score (descending); AUC by the trapezoid rule.
/// Throws ArgumentError when the class has no positive or no negative rows.
RocCurve roc_one_vs_rest(std::span<const ClassScores> scores, std::span<const LabelId> truth,
                         LabelId class_id);

/// Header `threshold,fpr,tpr`, one line per point, then `auc,<value>,`.
void write_roc_csv(std::ostream& out, const RocCurve& curve);

}  // namespace codemix

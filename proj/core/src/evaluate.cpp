#include "codemix/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "codemix/error.hpp"
#include "codemix/format.hpp"

namespace codemix {

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < n_; ++j) s += at(truth, j);
  return s;
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += at(i, predicted);
  return s;
}

ConfusionMatrix ConfusionMatrix::transposed() const {
  ConfusionMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t.add(j, i, at(i, j));
  }
  return t;
}

ConfusionMatrix confusion(std::span<const LabelId> truth, std::span<const LabelId> predicted,
                          std::size_t num_classes) {
  if (truth.size() != predicted.size()) {
    throw ArgumentError("confusion: label lists differ in length");
  }
  ConfusionMatrix cm(num_classes);
  for (std::size_t r = 0; r < truth.size(); ++r) {
    if (truth[r] >= num_classes || predicted[r] >= num_classes) {
      throw ArgumentError("confusion: label out of range");
    }
    cm.add(truth[r], predicted[r]);
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) {
    throw ArgumentError("accuracy of an empty confusion matrix");
  }
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

double mcc(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) {
    throw ArgumentError("MCC of an empty confusion matrix");
  }
  const double s = static_cast<double>(total);
  const double c = static_cast<double>(cm.trace());
  double pt = 0.0;
  double pp = 0.0;
  double tt = 0.0;
  for (std::size_t k = 0; k < cm.num_classes(); ++k) {
    const double t = static_cast<double>(cm.row_sum(k));
    const double p = static_cast<double>(cm.column_sum(k));
    pt += p * t;
    pp += p * p;
    tt += t * t;
  }
  const double var_pred = s * s - pp;
  const double var_true = s * s - tt;
  if (var_pred == 0.0 || var_true == 0.0) return 0.0;
  return (c * s - pt) / std::sqrt(var_pred * var_true);
}

RocCurve roc_one_vs_rest(std::span<const ClassScores> scores, std::span<const LabelId> truth,
                         LabelId class_id) {
  if (scores.size() != truth.size()) {
    throw ArgumentError("roc: scores and labels differ in length");
  }
  std::vector<std::pair<double, bool>> rows;
  rows.reserve(scores.size());
  std::size_t positives = 0;
  for (std::size_t r = 0; r < scores.size(); ++r) {
    if (class_id >= scores[r].size()) {
      throw ArgumentError("roc: class id out of range for the score vector");
    }
    const bool pos = truth[r] == class_id;
    positives += pos ? 1 : 0;
    rows.emplace_back(scores[r][class_id], pos);
  }
  const std::size_t negatives = rows.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw ArgumentError("roc: class " + std::to_string(class_id) +
                        " needs at least one positive and one negative row");
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < rows.size()) {
    const double threshold = rows[i].first;
    while (i < rows.size() && rows[i].first == threshold) {
      (rows[i].second ? tp : fp) += 1;
      ++i;
    }
    curve.points.push_back({threshold, static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)});
  }
  double area = 0.0;
  for (std::size_t p = 1; p < curve.points.size(); ++p) {
    const auto& a = curve.points[p - 1];
    const auto& b = curve.points[p];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  curve.auc = area;
  return curve;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "threshold,fpr,tpr\n";
  for (const auto& p : curve.points) {
    out << format_number(p.threshold) << ',' << format_number(p.fpr) << ','
        << format_number(p.tpr) << '\n';
  }
  out << "auc," << format_number(curve.auc) << ",\n";
}

}  // namespace codemix

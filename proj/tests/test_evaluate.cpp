#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "codemix/error.hpp"
#include "codemix/evaluate.hpp"
#include "codemix/stats.hpp"

using namespace codemix;

namespace {

ConfusionMatrix binary(std::uint64_t tp, std::uint64_t fn, std::uint64_t fp, std::uint64_t tn) {
  // Class 0 is "positive": row = truth, column = prediction.
  ConfusionMatrix cm(2);
  cm.add(0, 0, tp);
  cm.add(0, 1, fn);
  cm.add(1, 0, fp);
  cm.add(1, 1, tn);
  return cm;
}

std::vector<ClassScores> one_column(const std::vector<double>& s) {
  std::vector<ClassScores> out;
  for (const double v : s) out.push_back({v, 1.0 - v});
  return out;
}

}  // namespace

TEST(Confusion, DiagonalAndSingleColumn) {
  const std::vector<LabelId> y{0, 1, 2, 1};
  const auto perfect = confusion(y, y, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(perfect.at(i, j), i == j ? perfect.row_sum(i) : 0u);
  }
  const std::vector<LabelId> zeros(4, 0);
  const auto col = confusion(y, zeros, 3);
  EXPECT_EQ(col.column_sum(0), 4u);
  EXPECT_EQ(col.column_sum(1) + col.column_sum(2), 0u);
  EXPECT_EQ(col.total(), 4u);
}

TEST(Confusion, Errors) {
  const std::vector<LabelId> a{0, 1};
  const std::vector<LabelId> b{0};
  const std::vector<LabelId> c{0, 3};
  EXPECT_THROW(confusion(a, b, 2), ArgumentError);
  EXPECT_THROW(confusion(a, c, 2), ArgumentError);
}

TEST(Confusion, MatchesTallyOnRandomRows) {
  std::mt19937_64 gen(1);
  std::vector<LabelId> t(50);
  std::vector<LabelId> p(50);
  for (std::size_t i = 0; i < 50; ++i) {
    t[i] = gen() % 4;
    p[i] = gen() % 4;
  }
  const auto cm = confusion(t, p, 4);
  for (LabelId i = 0; i < 4; ++i) {
    for (LabelId j = 0; j < 4; ++j) {
      std::uint64_t n = 0;
      for (std::size_t r = 0; r < 50; ++r) n += t[r] == i && p[r] == j;
      EXPECT_EQ(cm.at(i, j), n);
    }
  }
}

TEST(Accuracy, Examples) {
  const std::vector<LabelId> y{0, 1, 1, 0};
  EXPECT_DOUBLE_EQ(accuracy(confusion(y, y, 2)), 1.0);
  const std::vector<LabelId> half{0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(accuracy(confusion(y, half, 2)), 0.5);
  EXPECT_THROW(accuracy(ConfusionMatrix(2)), ArgumentError);
}

TEST(Mcc, PerfectAndDegenerate) {
  const std::vector<LabelId> y{0, 1, 2, 2, 1};
  EXPECT_DOUBLE_EQ(mcc(confusion(y, y, 3)), 1.0);
  const std::vector<LabelId> zeros(5, 0);
  EXPECT_EQ(mcc(confusion(y, zeros, 3)), 0.0);
  EXPECT_THROW(mcc(ConfusionMatrix(3)), ArgumentError);
}

TEST(Mcc, BinaryClosedForm) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t tp = gen() % 50 + 1;
    const std::uint64_t fn = gen() % 50;
    const std::uint64_t fp = gen() % 50;
    const std::uint64_t tn = gen() % 50 + 1;
    const double num = double(tp) * tn - double(fp) * fn;
    const double den = std::sqrt(double(tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
    const double expect = den == 0 ? 0.0 : num / den;
    EXPECT_NEAR(mcc(binary(tp, fn, fp, tn)), expect, 1e-12);
  }
}

TEST(Roc, SeparatingScores) {
  const auto s = one_column({0.9, 0.8, 0.3, 0.1});
  const std::vector<LabelId> y{0, 0, 1, 1};
  const auto c = roc_one_vs_rest(s, y, 0);
  EXPECT_DOUBLE_EQ(c.auc, 1.0);
  EXPECT_EQ(c.points.front().fpr, 0.0);
  EXPECT_EQ(c.points.front().tpr, 0.0);
  EXPECT_EQ(c.points.back().fpr, 1.0);
  EXPECT_EQ(c.points.back().tpr, 1.0);
}

TEST(Roc, IdenticalScoresGiveOneDiagonalStep) {
  const auto s = one_column({0.5, 0.5, 0.5, 0.5, 0.5});
  const std::vector<LabelId> y{0, 1, 1, 0, 1};
  const auto c = roc_one_vs_rest(s, y, 0);
  EXPECT_EQ(c.points.size(), 2u);
  EXPECT_DOUBLE_EQ(c.auc, 0.5);
}

TEST(Roc, DegenerateClassRejected) {
  const auto s = one_column({0.1, 0.2});
  const std::vector<LabelId> y{1, 1};
  EXPECT_THROW(roc_one_vs_rest(s, y, 0), ArgumentError);
}

TEST(Roc, AucEqualsPairCount) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> raw(200);
    std::vector<LabelId> y(200);
    for (std::size_t i = 0; i < 200; ++i) {
      raw[i] = static_cast<double>(gen() % 30) / 30.0;  // plenty of ties
      y[i] = i < 2 ? static_cast<LabelId>(i) : static_cast<LabelId>(gen() % 2);
    }
    double wins = 0;
    double pairs = 0;
    for (std::size_t i = 0; i < 200; ++i) {
      for (std::size_t j = 0; j < 200; ++j) {
        if (y[i] != 0 || y[j] == 0) continue;
        pairs += 1;
        wins += raw[i] > raw[j] ? 1.0 : raw[i] == raw[j] ? 0.5 : 0.0;
      }
    }
    EXPECT_NEAR(roc_one_vs_rest(one_column(raw), y, 0).auc, wins / pairs, 1e-12);
  }
}

TEST(Roc, CsvLayout) {
  const auto s = one_column({0.9, 0.1});
  const std::vector<LabelId> y{0, 1};
  std::ostringstream out;
  write_roc_csv(out, roc_one_vs_rest(s, y, 0));
  EXPECT_EQ(out.str(), "threshold,fpr,tpr\ninf,0,0\n0.9,0,1\n0.1,1,1\nauc,1,\n");
}

TEST(ChiSquare, ClosedForms) {
  for (const unsigned df : {1u, 2u, 5u}) EXPECT_EQ(chi_square_upper_tail(0.0, df), 1.0);
  for (const double x : {0.5, 1.0, 2.0, 5.0, 10.0, 40.0}) {
    EXPECT_NEAR(chi_square_upper_tail(x, 2), std::exp(-x / 2), 1e-12) << x;
    EXPECT_NEAR(chi_square_upper_tail(x, 4), std::exp(-x / 2) * (1 + x / 2), 1e-12) << x;
    EXPECT_NEAR(chi_square_upper_tail(x, 1), std::erfc(std::sqrt(x / 2)), 1e-12) << x;
    EXPECT_NEAR(chi_square_upper_tail(x, 3),
                std::erfc(std::sqrt(x / 2)) + std::sqrt(2 * x / M_PI) * std::exp(-x / 2), 1e-12)
        << x;
  }
}

TEST(ChiSquare, FivePercentCriticalValue) {
  EXPECT_NEAR(chi_square_upper_tail(3.841459, 1), std::erfc(std::sqrt(3.841459 / 2)), 1e-12);
  EXPECT_NEAR(chi_square_upper_tail(3.841459, 1), 0.05, 1e-6);
}

TEST(ChiSquare, Errors) {
  EXPECT_THROW(chi_square_upper_tail(-1.0, 2), ArgumentError);
  EXPECT_THROW(chi_square_upper_tail(1.0, 0), ArgumentError);
}

TEST(Friedman, IdenticalTreatments) {
  const std::vector<std::vector<double>> v(4, std::vector<double>(3, 0.7));
  const auto r = friedman(v);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  const auto strict = friedman(v, false);
  EXPECT_NEAR(strict.statistic, 0.0, 1e-12);
  EXPECT_NEAR(strict.p_value, 1.0, 1e-12);
}

TEST(Friedman, HandRankedToyGrid) {
  // Ranks per block: (1,2,3) (1,3,2) (1,2,3) (2,1,3); sums 5, 8, 11.
  // chi2 = 12/(4*3*4) * 210 - 3*4*4 = 4.5, p = exp(-2.25).
  const std::vector<std::vector<double>> v{
      {0.1, 0.2, 0.3}, {0.1, 0.3, 0.2}, {0.4, 0.5, 0.6}, {0.5, 0.4, 0.6}};
  const auto r = friedman(v);
  EXPECT_EQ(r.rank_sums, (std::vector<double>{5, 8, 11}));
  EXPECT_EQ(r.df, 2u);
  EXPECT_NEAR(r.statistic, 4.5, 1e-9);
  EXPECT_NEAR(r.p_value, std::exp(-2.25), 1e-9);
}

TEST(Friedman, TieCorrection) {
  // First block ties two treatments: ranks 1.5, 1.5, 3. Sums 5.5, 7.5, 11;
  // raw chi2 = 207.5/4 - 48 = 3.875; divisor 1 - 6/96.
  const std::vector<std::vector<double>> v{
      {5, 5, 9}, {0.1, 0.3, 0.2}, {0.4, 0.5, 0.6}, {0.5, 0.4, 0.6}};
  const auto plain = friedman(v, false);
  EXPECT_NEAR(plain.statistic, 3.875, 1e-12);
  const auto corrected = friedman(v, true);
  EXPECT_NEAR(corrected.tie_correction, 0.9375, 1e-15);
  EXPECT_NEAR(corrected.statistic, 3.875 / 0.9375, 1e-12);
  EXPECT_NEAR(corrected.p_value, std::exp(-3.875 / 0.9375 / 2), 1e-12);
}

TEST(Friedman, StrictDominance) {
  std::vector<std::vector<double>> v(4);
  for (auto& row : v) row = {0.50, 0.55, 0.58, 0.60, 0.64};
  const auto r = friedman(v);
  EXPECT_DOUBLE_EQ(r.statistic, 16.0);
  EXPECT_EQ(r.df, 4u);
  EXPECT_NEAR(r.p_value, 9.0 * std::exp(-8.0), 1e-12);
  EXPECT_NEAR(r.p_value, 0.003, 5e-5);
}

TEST(Friedman, RanksSumPerBlock) {
  std::mt19937_64 gen(4);
  std::vector<std::vector<double>> v(6, std::vector<double>(5));
  for (auto& row : v) {
    for (auto& x : row) x = static_cast<double>(gen() % 4);
  }
  const auto r = friedman(v);
  for (const auto& ranks : r.ranks) {
    double s = 0;
    for (const double x : ranks) s += x;
    EXPECT_DOUBLE_EQ(s, 15.0);
  }
}

TEST(Friedman, Errors) {
  EXPECT_THROW(friedman({{1, 2}}), ArgumentError);
  EXPECT_THROW(friedman({{1}, {2}}), ArgumentError);
  EXPECT_THROW(friedman({{1, 2}, {1}}), ArgumentError);
}

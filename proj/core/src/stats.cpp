#include "codemix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "codemix/error.hpp"

namespace codemix {

namespace {

constexpr double kRelTol = 1e-15;
constexpr int kMaxTerms = 100000;

double gamma_p_series(double a, double x) {
  // P(a, x) = x^a e^-x / Gamma(a + 1) * sum_n x^n / ((a+1)...(a+n)).
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxTerms; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kRelTol) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
  // Modified Lentz evaluation of the continued fraction for Gamma(a, x).
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kRelTol) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw ArgumentError("regularized_gamma_q: need a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double chi_square_upper_tail(double x, unsigned df) {
  if (df == 0) {
    throw ArgumentError("chi-square needs a positive number of degrees of freedom");
  }
  if (!(x >= 0.0)) {
    throw ArgumentError("chi-square statistic must be non-negative");
  }
  return regularized_gamma_q(df / 2.0, x / 2.0);
}

FriedmanReport friedman(const std::vector<std::vector<double>>& values, bool tie_correction) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw ArgumentError("friedman: need at least two blocks");
  }
  const std::size_t k = values.front().size();
  if (k < 2) {
    throw ArgumentError("friedman: need at least two treatments");
  }
  FriedmanReport rep;
  rep.blocks = n;
  rep.treatments = k;
  rep.df = static_cast<unsigned>(k - 1);
  rep.rank_sums.assign(k, 0.0);
  double tie_sum = 0.0;

  for (const auto& row : values) {
    if (row.size() != k) {
      throw ArgumentError("friedman: ragged value grid");
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    std::vector<double> ranks(k, 0.0);
    std::size_t i = 0;
    while (i < k) {
      std::size_t j = i;
      while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
      const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
      for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
      const double group = static_cast<double>(j - i + 1);
      tie_sum += group * group * group - group;
      i = j + 1;
    }
    for (std::size_t t = 0; t < k; ++t) rep.rank_sums[t] += ranks[t];
    rep.ranks.push_back(std::move(ranks));
  }

  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  for (const double r : rep.rank_sums) rep.mean_ranks.push_back(r / nd);
  double sum_sq = 0.0;
  for (const double r : rep.rank_sums) sum_sq += r * r;
  double stat = 12.0 / (nd * kd * (kd + 1.0)) * sum_sq - 3.0 * nd * (kd + 1.0);
  if (tie_correction) {
    rep.tie_correction = 1.0 - tie_sum / (nd * kd * (kd * kd - 1.0));
    if (rep.tie_correction <= 0.0) {
      rep.statistic = 0.0;
      rep.p_value = 1.0;
      return rep;
    }
    stat /= rep.tie_correction;
  }
  // Rounding can leave a tiny negative value for an all-average grid.
  rep.statistic = std::max(0.0, stat);
  rep.p_value = chi_square_upper_tail(rep.statistic, rep.df);
  return rep;
}

}  // namespace codemix

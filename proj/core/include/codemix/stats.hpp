#pragma once

#include <cstddef>
#include <vector>

namespace codemix {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a):
/// power series for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);

/// P(X >= x) for X ~ chi-square(df). Throws ArgumentError for x < 0 or df == 0.
double chi_square_upper_tail(double x, unsigned df);

/// Treatment rankings across blocks.
struct FriedmanReport {
  std::size_t blocks = 0;
  std::size_t treatments = 0;
  std::vector<std::vector<double>> ranks;  // blocks x treatments, rank 1 = smallest value
  std::vector<double> rank_sums;           // per treatment
  std::vector<double> mean_ranks;
  double statistic = 0.0;
  unsigned df = 0;
  double p_value = 1.0;
  double tie_correction = 1.0;             // divisor applied to the statistic
};

/// Friedman test over values[block][treatment]. Ranks within each block
/// with average ranks for ties, then
///   chi2 = 12 / (n k (k + 1)) * sum_j R_j^2 - 3 n (k + 1),
/// divided by 1 - sum(t^3 - t) / (n k (k^2 - 1)) when tie_correction is set.
/// A zero divisor (every block fully tied) yields statistic 0 and p = 1.
/// Throws ArgumentError for n < 2, k < 2 or ragged rows.
FriedmanReport friedman(const std::vector<std::vector<double>>& values, bool tie_correction = true);

}  // namespace codemix

#include "exchstruct/stats.hpp"

#include "exchstruct/measures.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace exchstruct {

double chi2_critical(int df, double alpha) {
  if (df < 1) throw std::invalid_argument("chi2_critical: df must be >= 1");
  double z = normal_quantile(1.0 - alpha);
  double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
  return df * t * t * t;
}

double chi2_pvalue(double statistic, int df) {
  if (df < 1) throw std::invalid_argument("chi2_pvalue: df must be >= 1");
  if (statistic <= 0.0) return 1.0;
  double z = (std::cbrt(statistic / df) - (1.0 - 2.0 / (9.0 * df))) /
             std::sqrt(2.0 / (9.0 * df));
  return 1.0 - normal_cdf(z);
}

double exact_multinomial_pvalue(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& probs) {
  const size_t k = observed.size();
  if (k != probs.size()) throw std::invalid_argument("observed/probs length mismatch");
  const std::uint64_t n = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
  if (n > 200 || k > 4) throw std::invalid_argument("exact multinomial limited to n<=200, k<=4");
  std::vector<double> log_fact(n + 1, 0.0);
  for (std::uint64_t i = 1; i <= n; ++i) log_fact[i] = log_fact[i - 1] + std::log(double(i));
  std::vector<double> log_p(k);
  for (size_t i = 0; i < k; ++i) {
    if (probs[i] <= 0.0) {
      if (observed[i] > 0) return 0.0;
      log_p[i] = -1e300;
    } else {
      log_p[i] = std::log(probs[i]);
    }
  }
  auto log_prob = [&](const std::vector<std::uint64_t>& counts) {
    double lp = log_fact[n];
    for (size_t i = 0; i < k; ++i) {
      if (counts[i] > 0 && probs[i] <= 0.0) return -1e300;
      lp += counts[i] * log_p[i] - log_fact[counts[i]];
    }
    return lp;
  };
  const double lp_obs = log_prob(observed) + 1e-9;  // slack against float ties
  double p_value = 0.0;
  std::vector<std::uint64_t> counts(k, 0);
  auto rec = [&](auto&& self, size_t cell, std::uint64_t remaining) -> void {
    if (cell + 1 == k) {
      counts[cell] = remaining;
      double lp = log_prob(counts);
      if (lp <= lp_obs) p_value += std::exp(lp);
      return;
    }
    for (std::uint64_t c = 0; c <= remaining; ++c) {
      counts[cell] = c;
      self(self, cell + 1, remaining - c);
    }
  };
  rec(rec, 0, n);
  return std::min(p_value, 1.0);
}

GofResult goodness_of_fit(const std::vector<std::uint64_t>& observed,
                          const std::vector<double>& probs, double significance) {
  const size_t k = observed.size();
  if (k != probs.size()) throw std::invalid_argument("observed/probs length mismatch");
  if (k == 0) throw std::invalid_argument("empty table");
  const std::uint64_t n = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
  if (n == 0) throw std::invalid_argument("empty sample");
  GofResult out;
  if (k == 1) {
    out.pass = true;
    out.p_value = 1.0;
    out.threshold = 0.0;
    return out;
  }
  double stat = 0.0;
  for (size_t i = 0; i < k; ++i) {
    double expected = probs[i] * double(n);
    if (expected <= 0.0) {
      if (observed[i] > 0) stat = std::numeric_limits<double>::infinity();
      continue;
    }
    double d = double(observed[i]) - expected;
    stat += d * d / expected;
  }
  out.statistic = stat;
  out.threshold = chi2_critical(int(k) - 1, significance);
  if (n <= 200 && k <= 4) {
    out.exact = true;
    out.p_value = exact_multinomial_pvalue(observed, probs);
    out.pass = out.p_value >= significance;
  } else {
    out.p_value = chi2_pvalue(stat, int(k) - 1);
    out.pass = stat <= out.threshold;
  }
  return out;
}

GofResult homogeneity_test(const std::vector<std::vector<std::uint64_t>>& table,
                           double significance) {
  const size_t rows = table.size();
  if (rows == 0) throw std::invalid_argument("empty contingency table");
  const size_t raw_cols = table[0].size();
  for (const auto& row : table)
    if (row.size() != raw_cols) throw std::invalid_argument("ragged contingency table");
  std::vector<double> col_sum(raw_cols, 0.0);
  std::vector<double> row_sum(rows, 0.0);
  double total = 0.0;
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < raw_cols; ++c) {
      col_sum[c] += double(table[r][c]);
      row_sum[r] += double(table[r][c]);
      total += double(table[r][c]);
    }
  }
  if (total == 0.0) throw std::invalid_argument("empty contingency table");
  size_t cols = 0;
  for (double s : col_sum)
    if (s > 0.0) ++cols;
  GofResult out;
  if (rows < 2 || cols < 2) {
    out.pass = true;  // vacuous: nothing to compare
    out.p_value = 1.0;
    return out;
  }
  double stat = 0.0;
  for (size_t r = 0; r < rows; ++r) {
    if (row_sum[r] == 0.0) continue;
    for (size_t c = 0; c < raw_cols; ++c) {
      if (col_sum[c] == 0.0) continue;
      double expected = row_sum[r] * col_sum[c] / total;
      double d = double(table[r][c]) - expected;
      stat += d * d / expected;
    }
  }
  int nonzero_rows = 0;
  for (double s : row_sum)
    if (s > 0.0) ++nonzero_rows;
  int df = (std::max(nonzero_rows, 2) - 1) * (int(cols) - 1);
  out.statistic = stat;
  out.threshold = chi2_critical(df, significance);
  out.p_value = chi2_pvalue(stat, df);
  out.pass = stat <= out.threshold;
  return out;
}

}  // namespace exchstruct

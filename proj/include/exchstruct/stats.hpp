#pragma once

#include <cstdint>
#include <vector>

namespace exchstruct {

// Wilson-Hilferty approximations; good to a few 1e-3 in the tail, which is
// all the 0.001-significance decisions here need.
double chi2_critical(int df, double alpha);
double chi2_pvalue(double statistic, int df);

struct GofResult {
  double statistic = 0.0;
  double threshold = 0.0;
  double p_value = 1.0;
  bool pass = true;
  bool exact = false;  // exact multinomial p-value was used
};

// Goodness of fit of observed counts against the given probabilities.
// Tables with total <= 200 and at most 4 cells take the exact multinomial
// path; larger tables use the chi-square statistic.
GofResult goodness_of_fit(const std::vector<std::uint64_t>& observed,
                          const std::vector<double>& probs, double significance);

// Chi-square homogeneity test on an r x c contingency table (rows =
// samples, columns = categories). Columns with zero margin are dropped.
GofResult homogeneity_test(const std::vector<std::vector<std::uint64_t>>& table,
                           double significance);

// Exact multinomial goodness-of-fit p-value: probability of an outcome at
// most as likely as the observed one. Enumeration; small tables only.
double exact_multinomial_pvalue(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& probs);

}  // namespace exchstruct

#pragma once

#include "exchstruct/measures.hpp"
#include "exchstruct/rational.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace exchstruct {

// Symmetric coefficient table: a map s in {0..l}^n -> a_s >= 0 with
// a_{s o sigma} = a_s for every permutation sigma.
struct SymCoeffTable {
  int n = 0;
  int l = 0;  // alphabet {0..l}
  std::map<std::vector<int>, Rational> a;

  void validate() const;  // completeness + symmetry + nonnegativity
  const Rational& at(const std::vector<int>& s) const;
  // a* = entry at the constant-l sequence.
  const Rational& a_star() const;
  bool is_constant() const;
  static SymCoeffTable constant(int n, int l, const Rational& value);
};

// Strictly positive rationals summing exactly to 1.
struct LambdaPoint {
  std::vector<Rational> lambda;
  void validate() const;
};

// Exponents k_0..k_{l-1} with sum <= n.
struct ExponentVector {
  std::vector<int> k;
  int n = 0;
  int total() const;
  void validate() const;
};

// Sum over s of a_s * lambda_{s(0)} * ... * lambda_{s(n-1)}, exact.
Rational eval_spade(const SymCoeffTable& table, const LambdaPoint& point);

// Number of distinct values the polynomial takes on the grid of lambda
// points with coordinates c_i/resolution, c_i >= 1. At least 2 whenever
// the table is non-constant and the resolution is large enough.
int spread_check(const SymCoeffTable& table, int grid_resolution);

// Coefficient of the monomial prod lambda_i^{k_i} after substituting
// lambda_l = 1 - sum of the others, via the closed-form alternating sum
// (carries the multinomial factor C).
Rational beta_formula(const SymCoeffTable& table, const ExponentVector& e);
// The same value divided by C = n!/(k_0!...k_{l-1}!(n-k)!).
Rational beta_normalized(const SymCoeffTable& table, const ExponentVector& e);
// Independent route: full symbolic expansion of the substituted
// polynomial; n <= 4, l <= 3.
Rational beta_expand(const SymCoeffTable& table, const ExponentVector& e);

// Alternating sum of products of binomials; identically 0 for k >= 1.
BigInt binomial_cancellation(const ExponentVector& e);

enum class EventKind { SameSignPairs, SameCell };
EventKind event_from_name(const std::string& name);  // same-sign-pairs | same-cell
std::string event_name(EventKind kind);

// a_s = m^n(A & box_s) / m^n(box_s) for box_s = prod of parts Y_{s(i)}.
// The v1 event catalog is box-decomposable by construction; parts that
// straddle an event boundary are rejected.
SymCoeffTable cmeas_table(const Measure& m, const std::vector<IntervalUnion>& parts,
                          EventKind event, int n);

// Analytic (m^W)^n(A) via the spade polynomial at the weight's masses.
Rational reweighted_event_prob(const SymCoeffTable& table, const LambdaPoint& point);
// Monte Carlo counterpart: sample n-tuples from reweight(m, w) and count
// event membership.
double mc_event_prob(MeasurePtr m, const Weight& w, EventKind event, int n,
                     std::uint64_t samples, std::uint64_t seed);

bool event_member(EventKind event, const std::vector<IntervalUnion>& parts,
                  const std::vector<double>& x);

SymCoeffTable table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const SymCoeffTable& table);

// Runs the whole exact suite and returns a machine-readable report with
// one entry per identity; "all_pass" summarizes.
nlohmann::json verify_lemmas(int max_n, int max_l, int random_tables, std::uint64_t seed);

}  // namespace exchstruct

// End-to-end acceptance checks. Each numbered check prints one pass/fail
// line; the exit code is nonzero if any check fails.

#include "exchstruct/borel.hpp"
#include "exchstruct/lemmas.hpp"
#include "exchstruct/typestats.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

using namespace exchstruct;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok) {
  std::printf("[%s] %d. %s\n", ok ? "pass" : "FAIL", id, what.c_str());
  if (!ok) ++failures;
}

// 1. exact type counts for the catalog structures
void check_type_counts() {
  bool ok = true;
  std::uint64_t fact = 1;
  for (int n = 1; n <= 6; ++n) {
    fact *= std::uint64_t(n);
    ok = ok && enumerate_types(ReductKind::PureSet, n).second == 1;
    ok = ok && enumerate_types(ReductKind::Order, n).second == fact;
  }
  ok = ok && enumerate_types(ReductKind::Betweenness, 2).second == 1;
  ok = ok && enumerate_types(ReductKind::Betweenness, 3).second == 3;
  ok = ok && enumerate_types(ReductKind::Betweenness, 4).second == 12;
  ok = ok && enumerate_types(ReductKind::CircularOrder, 3).second == 2;
  ok = ok && enumerate_types(ReductKind::CircularOrder, 4).second == 6;
  ok = ok && enumerate_types(ReductKind::Separation, 4).second == 3;
  ok = ok && enumerate_types(ReductKind::Separation, 5).second == 12;
  report(1, "exact type counts (pure-set, order, betweenness, circular, separation)", ok);
}

// 2. type frequencies are uniform over the enumerated types
void check_uniformity() {
  bool ok = true;
  for (ReductKind kind : kAllReducts) {
    for (int n = 2; n <= 4; ++n) {
      auto [types, alpha] = enumerate_types(kind, n);
      auto table = estimate_frequencies(builtin(reduct_name(kind)), *std_normal(), n, 100000,
                                        9000 + 10 * int(kind) + n);
      if (!test_uniformity(table, types, 0.001).pass) ok = false;
    }
  }
  report(2, "uniform type frequencies for the five reducts, n <= 4, 1e5 samples", ok);
}

// 3. reweighting does not move the order-type frequency
void check_reweight_invariance() {
  bool ok = true;
  Weight weights[] = {Weight::two_sided(0.0, Rational(1, 4)),
                      Weight::two_sided(-1.0, Rational(3, 5)),
                      Weight::two_sided(0.5, Rational(9, 10))};
  auto p = builtin("order");
  for (int wi = 0; wi < 3; ++wi) {
    auto m = reweight(std_normal(), weights[wi]);
    int asc = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
      Rng rng = Rng::substream(1000 + std::uint64_t(wi), std::uint64_t(i));
      if (sample_prefix(p, *m, 2, rng).has_tuple(0, {0, 1})) ++asc;
    }
    double freq = double(asc) / samples;
    if (std::abs(freq - 0.5) > 0.005) ok = false;
  }
  report(3, "order-type frequency 0.5 +/- 0.005 under three reweightings", ok);
}

// 4. reweighting moves the unary-split marginal and the moves are detectable
void check_unary_split_multiplicity() {
  bool ok = true;
  auto p = builtin("unary-split");
  double masses[] = {0.3, 0.5, 0.7};
  Weight weights[] = {Weight::two_sided(0.0, Rational(7, 10)),
                      Weight::two_sided(0.0, Rational(1, 2)),
                      Weight::two_sided(0.0, Rational(3, 10))};
  for (int wi = 0; wi < 3; ++wi) {
    auto m = reweight(std_normal(), weights[wi]);
    int hits = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
      Rng rng = Rng::substream(2000 + std::uint64_t(wi), std::uint64_t(i));
      if (sample_prefix(p, *m, 1, rng).has_tuple(0, {0})) ++hits;
    }
    if (std::abs(double(hits) / samples - masses[wi]) > 0.005) ok = false;
  }
  for (int i = 0; i < 3 && ok; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto rep = test_distinguish(p, std_normal(), weights[i], weights[j], 1, 10000,
                                  2100 + std::uint64_t(10 * i + j), 0.001);
      if (!rep.pass) ok = false;
    }
  report(4, "unary-split marginals match masses 0.3/0.5/0.7 and are pairwise distinguishable",
         ok);
}

// 5. graph edge densities track p and differ detectably
void check_graph_multiplicity() {
  bool ok = true;
  const int nv = 50, reps = 200;
  const double pairs = double(reps) * nv * (nv - 1) / 2;
  std::uint64_t edges[2] = {0, 0};
  double ps[2] = {0.3, 0.5};
  for (int c = 0; c < 2; ++c) {
    for (int rep = 0; rep < reps; ++rep) {
      Rng rng = Rng::substream(3000 + std::uint64_t(c), std::uint64_t(rep));
      edges[c] += er_sample(nv, ps[c], rng).interpretation[0].size() / 2;
    }
    double density = double(edges[c]) / pairs;
    double sigma = std::sqrt(ps[c] * (1.0 - ps[c]) / pairs);
    if (std::abs(density - ps[c]) > 3.0 * sigma) ok = false;
  }
  std::vector<std::vector<std::uint64_t>> table{
      {edges[0], std::uint64_t(pairs) - edges[0]},
      {edges[1], std::uint64_t(pairs) - edges[1]}};
  auto gof = homogeneity_test(table, 0.001);
  if (gof.statistic <= gof.threshold) ok = false;  // must be distinguishable
  report(5, "graph densities within 3 sigma of p = 0.3 / 0.5 and distinguishable", ok);
}

// 6. high homogeneity holds for the reducts and fails for the counterexamples
void check_high_homogeneity() {
  bool ok = true;
  for (ReductKind kind : kAllReducts)
    for (int k : {2, 3, 4}) {
      auto rep = check_high_homogeneity_sampled(builtin(reduct_name(kind)), *std_normal(), 8, k,
                                                100, 4000 + k);
      if (!rep.pass) ok = false;
    }
  auto er = check_high_homogeneity_sampler(
      [](Rng& rng) { return er_sample(10, 0.5, rng); }, "er", 10, 2, 100, 4100);
  if (er.pass) ok = false;
  auto split =
      check_high_homogeneity_sampled(builtin("unary-split"), *std_normal(), 8, 1, 100, 4200);
  if (split.pass) ok = false;
  report(6, "high homogeneity: five reducts pass; random graph and unary-split fail", ok);
}

// 7. exact polynomial identities
void check_identities() {
  auto rep = verify_lemmas(4, 3, 200, 5000);
  report(7, "exact identity suite (cancellation, coefficient formula, spread)",
         rep.at("all_pass").get<bool>());
}

// 8. analytic reweighted event probability vs Monte Carlo
void check_event_probability() {
  bool ok = true;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<IntervalUnion> signs{IntervalUnion::single(-inf, 0.0),
                                   IntervalUnion::single(0.0, inf)};
  auto table = cmeas_table(*std_normal(), signs, EventKind::SameSignPairs, 2);
  Rational lams[] = {Rational(1, 10), Rational(3, 10), Rational(1, 2)};
  for (int i = 0; i < 3; ++i) {
    const Rational& lam = lams[i];
    LambdaPoint point{{lam, 1 - lam}};
    Rational analytic = reweighted_event_prob(table, point);
    if (analytic != lam * lam + (1 - lam) * (1 - lam)) ok = false;
    Weight w = Weight::two_sided(0.0, lam);
    double a = to_double(analytic);
    double mc =
        mc_event_prob(std_normal(), w, EventKind::SameSignPairs, 2, 100000, 6000 + i);
    if (std::abs(mc - a) > 3.0 * std::sqrt(a * (1.0 - a) / 100000.0)) ok = false;
  }
  report(8, "same-sign event: analytic lambda^2 + (1-lambda)^2 matches Monte Carlo", ok);
}

// 9. the sampling map commutes with permutations
void check_equivariance() {
  bool ok = true;
  Rng rng(7000);
  const auto names = builtin_names();
  for (int rep = 0; rep < 1000; ++rep) {
    const auto& name = names[rng.next_u64() % names.size()];
    BorelStructure p = builtin(name);
    int n = 1 + int(rng.next_u64() % 6);
    std::vector<double> t(n);
    for (auto& v : t) v = rng.normal();
    auto perms = all_permutations(n);
    const auto& sigma = perms[rng.next_u64() % perms.size()];
    Permutation inv = sigma.inverse();
    std::vector<double> permuted(n);
    for (int i = 0; i < n; ++i) permuted[i] = t[inv(i)];
    if (!(induce(p, permuted) == apply_permutation(induce(p, t), sigma))) ok = false;
  }
  report(9, "equivariance of the sampling map on 1000 random triples", ok);
}

}  // namespace

int main() {
  check_type_counts();
  check_uniformity();
  check_reweight_invariance();
  check_unary_split_multiplicity();
  check_graph_multiplicity();
  check_high_homogeneity();
  check_identities();
  check_event_probability();
  check_equivariance();
  if (failures) std::printf("%d acceptance check(s) failed\n", failures);
  return failures ? 1 : 0;
}

#include "exchstruct/borel.hpp"
#include "exchstruct/typestats.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

using namespace exchstruct;

TEST_CASE("induce worked examples") {
  {
    std::vector<double> t{0.7, 0.2, 0.9};
    auto m = induce(builtin("order"), t);
    FinStructure expected(reduct_signature(ReductKind::Order), 3);
    expected.add_tuple(0, {1, 0});
    expected.add_tuple(0, {1, 2});
    expected.add_tuple(0, {0, 2});
    CHECK(m == expected);
  }
  {
    std::vector<double> t{-1.0, 2.0};
    auto m = induce(builtin("unary-split"), t);
    REQUIRE(m.interpretation.size() == 1);
    CHECK(m.interpretation[0] == std::vector<Tuple>{{1}});
  }
  {
    std::vector<double> empty;
    auto m = induce(builtin("betweenness"), empty);
    CHECK(m.size == 0);
  }
  std::vector<double> dup{1.0, 1.0};
  CHECK_THROWS_AS(induce(builtin("order"), dup), std::invalid_argument);
}

TEST_CASE("builtin catalog") {
  for (const auto& name : builtin_names()) CHECK(builtin(name).name == name);
  CHECK_THROWS_AS(builtin("rado"), std::invalid_argument);

  // order builtin matches induce_reduct
  std::vector<double> t{0.4, -1.0, 2.2, 0.9};
  CHECK(induce(builtin("order"), t) == induce_reduct(ReductKind::Order, t));

  // unary-split predicate
  std::vector<double> pm{3.2, -3.2};
  auto m = induce(builtin("unary-split"), pm);
  CHECK(m.interpretation[0] == std::vector<Tuple>{{0}});

  // separation on (1,2,3,4) contains (0,1,2,3)
  std::vector<double> s{1, 2, 3, 4};
  CHECK(induce(builtin("separation"), s).has_tuple(0, {0, 1, 2, 3}));
}

TEST_CASE("equivariance of the sampling map") {
  Rng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const auto names = builtin_names();
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
    CHECK(induce(p, permuted) == apply_permutation(induce(p, t), sigma));
  }
}

TEST_CASE("sample_prefix basics") {
  Rng rng(1);
  auto pure = builtin("pure-set");
  for (int rep = 0; rep < 20; ++rep) {
    auto m = sample_prefix(pure, *std_normal(), 5, rng);
    CHECK(m.size == 5);
    CHECK(m.sig.relations.empty());
  }
  CHECK(sample_prefix(builtin("order"), *std_normal(), 0, rng).size == 0);
  CHECK_THROWS_AS(sample_prefix(pure, *std_normal(), -1, rng), std::invalid_argument);
}

TEST_CASE("order prefix: both 2-orderings equally likely") {
  auto p = builtin("order");
  Tuple asc{0, 1};
  int count = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::substream(77, i);
    if (sample_prefix(p, *std_normal(), 2, rng).has_tuple(0, asc)) ++count;
  }
  double freq = double(count) / n;
  CHECK(std::abs(freq - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("unary-split marginal equals the reweighted part mass") {
  auto p = builtin("unary-split");
  auto m = reweight(std_normal(), Weight::two_sided(0.0, Rational(3, 10)));
  int count = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::substream(5150, i);
    if (sample_prefix(p, *m, 1, rng).has_tuple(0, {0})) ++count;
  }
  double freq = double(count) / n;
  CHECK(std::abs(freq - 0.7) < 3.0 * std::sqrt(0.7 * 0.3 / n));
}

TEST_CASE("mu-vs-m-n instance: R-frequency equals m([0,inf))") {
  auto p = builtin("unary-split");
  int count = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::substream(31337, i);
    if (sample_prefix(p, *std_normal(), 1, rng).has_tuple(0, {0})) ++count;
  }
  CHECK(std::abs(double(count) / n - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("projectivity: first-k marginal of a larger prefix") {
  // type frequencies of the first 3 indices of 5-prefixes vs direct 3-prefixes
  auto p = builtin("order");
  std::map<std::string, std::uint64_t> from_big, direct;
  const std::uint64_t samples = 30000;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng = Rng::substream(909, i);
    auto big = sample_prefix(p, *std_normal(), 5, rng);
    from_big[labeled_type(induced_substructure(big, {0, 1, 2})).encoding]++;
    Rng rng2 = Rng::substream(910, i);
    direct[labeled_type(sample_prefix(p, *std_normal(), 3, rng2)).encoding]++;
  }
  std::map<std::string, size_t> cols;
  for (const auto& [k, v] : from_big) cols.emplace(k, cols.size());
  for (const auto& [k, v] : direct) cols.emplace(k, cols.size());
  std::vector<std::vector<std::uint64_t>> table(2, std::vector<std::uint64_t>(cols.size(), 0));
  for (const auto& [k, v] : from_big) table[0][cols.at(k)] = v;
  for (const auto& [k, v] : direct) table[1][cols.at(k)] = v;
  CHECK(homogeneity_test(table, 0.001).pass);
}

TEST_CASE("er_sample") {
  Rng rng(3);
  auto empty = er_sample(6, 0.0, rng);
  CHECK(empty.interpretation[0].empty());
  auto complete = er_sample(6, 1.0, rng);
  CHECK(complete.interpretation[0].size() == 30);  // all ordered pairs, no loops
  CHECK_THROWS_AS(er_sample(5, 1.5, rng), std::invalid_argument);

  // symmetry and irreflexivity
  for (int rep = 0; rep < 20; ++rep) {
    auto g = er_sample(8, 0.4, rng);
    for (const auto& t : g.interpretation[0]) {
      CHECK(t[0] != t[1]);
      CHECK(g.has_tuple(0, {t[1], t[0]}));
    }
  }

  // density at p = 0.3 over 100 samples of G(100, p)
  std::uint64_t edges = 0;
  const int reps = 100, nv = 100;
  for (int rep = 0; rep < reps; ++rep) {
    Rng r = Rng::substream(404, rep);
    edges += er_sample(nv, 0.3, r).interpretation[0].size() / 2;
  }
  double trials = double(reps) * nv * (nv - 1) / 2;
  double density = double(edges) / trials;
  CHECK(std::abs(density - 0.3) < 0.02);
}

TEST_CASE("tie resampling rejects an atomic measure") {
  // a degenerate "measure" that always returns the same point
  struct Dirac final : Measure {
    double cdf(double x) const override { return x > 0 ? 1.0 : 0.0; }
    double sample(Rng&) const override { return 0.5; }
    std::string describe() const override { return "dirac"; }
  } dirac;
  Rng rng(8);
  CHECK_THROWS_AS(sample_distinct_reals(dirac, 2, rng), std::runtime_error);
}

#include "exchstruct/typestats.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace exchstruct;

TEST_CASE("enumerate_types catalog values") {
  CHECK(enumerate_types(ReductKind::PureSet, 4).second == 1);
  CHECK(enumerate_types(ReductKind::Order, 3).second == 6);
  CHECK(enumerate_types(ReductKind::Betweenness, 3).second == 3);
  CHECK(enumerate_types(ReductKind::CircularOrder, 3).second == 2);
  CHECK(enumerate_types(ReductKind::Separation, 4).second == 3);
  CHECK_THROWS_AS(enumerate_types(ReductKind::Order, 8), std::invalid_argument);
}

TEST_CASE("alpha_n <= n!, equality exactly for order (n <= 6)") {
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (ReductKind kind : kAllReducts) {
      auto alpha = enumerate_types(kind, n).second;
      CHECK(alpha <= fact);
      if (kind == ReductKind::Order) CHECK(alpha == fact);
      if (n >= 3 && kind != ReductKind::Order) CHECK(alpha < fact);
    }
  }
}

TEST_CASE("estimate_frequencies: serial and parallel kernels agree exactly") {
  auto m = std_normal();
  for (const char* name : {"order", "betweenness", "unary-split"}) {
    BorelStructure p = builtin(name);
    auto parallel = estimate_frequencies(p, *m, 3, 5000, 99);
    auto serial = estimate_frequencies_serial(p, *m, 3, 5000, 99);
    CHECK(parallel.counts == serial.counts);
    CHECK(parallel.total == serial.total);
  }
}

TEST_CASE("estimate_frequencies basics") {
  auto table = estimate_frequencies(builtin("pure-set"), *std_normal(), 3, 100, 1);
  REQUIRE(table.counts.size() == 1);
  CHECK(table.counts.begin()->second == 100);

  auto order2 = estimate_frequencies(builtin("order"), *std_normal(), 2, 100000, 2);
  REQUIRE(order2.counts.size() == 2);
  for (const auto& [key, count] : order2.counts)
    CHECK(std::abs(double(count) - 50000.0) < 3.0 * std::sqrt(25000.0));

  auto unary = estimate_frequencies(builtin("unary-split"), *std_normal(), 1, 100000, 3);
  auto [types, alpha] = enumerate_types(ReductKind::Order, 1);
  std::uint64_t with_r = 0;
  for (const auto& [key, count] : unary.counts)
    if (key.find("(0)") != std::string::npos) with_r = count;
  CHECK(std::abs(double(with_r) / 100000.0 - 0.5) < 0.0047);
}

TEST_CASE("frequency table merge and CSV") {
  auto a = estimate_frequencies(builtin("order"), *std_normal(), 2, 500, 4);
  auto b = estimate_frequencies(builtin("order"), *std_normal(), 2, 700, 5);
  auto total_before = a.total;
  a.merge(b);
  CHECK(a.total == total_before + 700);
  auto csv = a.to_csv();
  CHECK(csv.rfind("type_id,count\n", 0) == 0);
}

TEST_CASE("test_uniformity") {
  auto [types, alpha] = enumerate_types(ReductKind::Order, 3);
  auto table = estimate_frequencies(builtin("order"), *std_normal(), 3, 100000, 7);
  auto report = test_uniformity(table, types, 0.001);
  CHECK(report.pass);

  // all mass on one type fails
  FrequencyTable skew;
  skew.n = 3;
  skew.total = 60000;
  skew.counts[*types.begin()] = 60000;
  CHECK_FALSE(test_uniformity(skew, types, 0.001).pass);

  // single-cell table passes vacuously
  auto [ptypes, palpha] = enumerate_types(ReductKind::PureSet, 3);
  auto ptable = estimate_frequencies(builtin("pure-set"), *std_normal(), 3, 100, 8);
  CHECK(test_uniformity(ptable, ptypes, 0.001).pass);

  // unexpected type forces failure
  FrequencyTable alien = table;
  alien.counts["bogus"] = 5;
  CHECK_FALSE(test_uniformity(alien, types, 0.001).pass);

  FrequencyTable tiny;
  tiny.n = 3;
  tiny.total = 10;
  tiny.counts[*types.begin()] = 10;
  CHECK_THROWS_AS(test_uniformity(tiny, types, 0.001), std::invalid_argument);
}

TEST_CASE("test_exchangeability") {
  std::vector<std::vector<int>> tuples{{0, 1, 2}, {2, 0, 1}, {5, 1, 3}};
  auto report =
      test_exchangeability(builtin("order"), *std_normal(), tuples, 100000, 11, 0.001);
  CHECK(report.pass);

  // single tuple is vacuous
  auto single = test_exchangeability(builtin("order"), *std_normal(), {{0, 1}}, 1000, 12, 0.001);
  CHECK(single.pass);

  CHECK_THROWS_AS(
      test_exchangeability(builtin("order"), *std_normal(), {{0, 0}}, 100, 13, 0.001),
      std::invalid_argument);
}

TEST_CASE("test_exchangeability catches an index-biased sampler") {
  // fixture: index 0 is always the smallest value, others are i.i.d.
  auto biased = [](Rng& rng) {
    std::vector<double> t(4);
    for (auto& v : t) v = rng.normal();
    auto min_it = std::min_element(t.begin(), t.end());
    std::swap(*t.begin(), *min_it);
    return induce_reduct(ReductKind::Order, t);
  };
  auto report = test_exchangeability_sampler(biased, 4, {{0, 1}, {2, 3}}, 20000, 14, 0.001);
  CHECK_FALSE(report.pass);
}

TEST_CASE("test_distinguish") {
  auto w1 = Weight::two_sided(0.0, Rational(7, 10));  // [0,inf) mass 0.3
  auto w2 = Weight::two_sided(0.0, Rational(1, 2));
  auto p = builtin("unary-split");
  auto different = test_distinguish(p, std_normal(), w1, w2, 1, 10000, 15, 0.001);
  CHECK(different.pass);  // pass == distinguishable
  CHECK(different.params.at("decision") == "distinguishable");

  auto same = test_distinguish(p, std_normal(), w1, w1, 1, 10000, 16, 0.001);
  CHECK_FALSE(same.pass);

  // uniquely ergodic structure: any two weights give the same marginals
  auto order_case =
      test_distinguish(builtin("order"), std_normal(), w1, w2, 3, 100000, 17, 0.001);
  CHECK_FALSE(order_case.pass);
}

TEST_CASE("check_high_homogeneity_sampled") {
  for (const char* name : {"pure-set", "order", "betweenness", "circular", "separation"}) {
    auto report =
        check_high_homogeneity_sampled(builtin(name), *std_normal(), 8, 3, 25, 18);
    CHECK(report.pass);
  }

  // unary-split with k = 1 fails: R and not-R points coexist
  auto split = check_high_homogeneity_sampled(builtin("unary-split"), *std_normal(), 8, 1, 50, 19);
  CHECK_FALSE(split.pass);

  // er graphs fail at k = 2
  auto er = check_high_homogeneity_sampler(
      [](Rng& rng) { return er_sample(10, 0.5, rng); }, "er", 10, 2, 50, 20);
  CHECK_FALSE(er.pass);

  CHECK_THROWS_AS(
      check_high_homogeneity_sampled(builtin("order"), *std_normal(), 9, 2, 10, 21),
      std::invalid_argument);
}

TEST_CASE("uniformity holds under every reweighting (unique ergodicity)") {
  Weight weights[] = {Weight::two_sided(0.0, Rational(1, 10)),
                      Weight::two_sided(1.0, Rational(2, 3))};
  for (const auto& w : weights) {
    auto m = reweight(std_normal(), w);
    for (ReductKind kind : {ReductKind::Order, ReductKind::CircularOrder}) {
      auto [types, alpha] = enumerate_types(kind, 3);
      auto table = estimate_frequencies(builtin(reduct_name(kind)), *m, 3, 50000, 22);
      CHECK(test_uniformity(table, types, 0.001).pass);
    }
  }
}

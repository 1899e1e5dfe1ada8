#include "exchstruct/reducts.hpp"
#include "exchstruct/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace exchstruct;

TEST_CASE("betweenness") {
  CHECK(betweenness(1, 2, 3));
  CHECK_FALSE(betweenness(2, 1, 3));
  CHECK(betweenness(3, 2, 1));
  CHECK_THROWS_AS(betweenness(1, 1, 2), std::invalid_argument);
}

TEST_CASE("circular") {
  CHECK(circular(2, 3, 1));
  CHECK(circular(1, 2, 3));
  CHECK_FALSE(circular(2, 1, 3));
  CHECK_THROWS_AS(circular(2, 2, 3), std::invalid_argument);
}

TEST_CASE("separation") {
  CHECK(separation(1, 2, 3, 4));
  CHECK_FALSE(separation(1, 3, 2, 4));
  CHECK(separation(4, 3, 2, 1));
  CHECK_THROWS_AS(separation(1, 2, 3, 3), std::invalid_argument);
}

TEST_CASE("induce_reduct worked examples") {
  {
    std::vector<double> t{0.3, 0.1};
    auto m = induce_reduct(ReductKind::Order, t);
    FinStructure expected(reduct_signature(ReductKind::Order), 2);
    expected.add_tuple(0, {1, 0});
    CHECK(m == expected);
  }
  {
    std::vector<double> t{1, 2, 3};
    auto m = induce_reduct(ReductKind::Betweenness, t);
    FinStructure expected(reduct_signature(ReductKind::Betweenness), 3);
    expected.add_tuple(0, {0, 1, 2});
    expected.add_tuple(0, {2, 1, 0});
    CHECK(m == expected);
  }
  {
    std::vector<double> t{0.5, -3, 7, 2};
    auto m = induce_reduct(ReductKind::PureSet, t);
    CHECK(m.size == 4);
    CHECK(m.sig.relations.empty());
  }
  std::vector<double> dup{1.0, 1.0};
  CHECK_THROWS_AS(induce_reduct(ReductKind::Order, dup), std::invalid_argument);
}

TEST_CASE("order-isomorphism invariance: only order statistics matter") {
  Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 2 + int(rng.next_u64() % 4);
    std::vector<double> t(n), u(n);
    for (auto& v : t) v = rng.normal();
    // monotone transform keeps the index order
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t[a] < t[b]; });
    for (int rank = 0; rank < n; ++rank) u[order[rank]] = 10.0 + rank;
    for (ReductKind kind : kAllReducts)
      CHECK(induce_reduct(kind, t) == induce_reduct(kind, u));
  }
}

TEST_CASE("symmetry invariances of B, K, S") {
  for (int n = 3; n <= 5; ++n) {
    std::vector<double> t(n);
    std::iota(t.begin(), t.end(), 1.0);
    do {
      std::vector<double> reversed(t);
      for (auto& v : reversed) v = -v;  // order reversal of the line
      CHECK(induce_reduct(ReductKind::Betweenness, t) ==
            induce_reduct(ReductKind::Betweenness, reversed));
      CHECK(induce_reduct(ReductKind::Separation, t) ==
            induce_reduct(ReductKind::Separation, reversed));

      // cyclic relabeling: shift every value past the max back below the min
      std::vector<double> rotated(t);
      double maxv = *std::max_element(t.begin(), t.end());
      double minv = *std::min_element(t.begin(), t.end());
      for (auto& v : rotated)
        if (v == maxv) v = minv - 1;
      CHECK(induce_reduct(ReductKind::CircularOrder, t) ==
            induce_reduct(ReductKind::CircularOrder, rotated));
      CHECK(induce_reduct(ReductKind::Separation, t) ==
            induce_reduct(ReductKind::Separation, rotated));
    } while (std::next_permutation(t.begin(), t.end()));
  }
}

TEST_CASE("S matches its K-expansion on all permutations of (1,2,3,4)") {
  std::vector<double> t{1, 2, 3, 4};
  std::sort(t.begin(), t.end());
  do {
    double a = t[0], b = t[1], c = t[2], d = t[3];
    bool via_k = (circular(a, b, c) && circular(b, c, d) && circular(c, d, a)) ||
                 (circular(d, c, b) && circular(c, b, a) && circular(b, a, d));
    CHECK(separation(a, b, c, d) == via_k);
  } while (std::next_permutation(t.begin(), t.end()));
}

TEST_CASE("reduct names round trip") {
  for (ReductKind kind : kAllReducts) CHECK(reduct_from_name(reduct_name(kind)) == kind);
  CHECK_THROWS_AS(reduct_from_name("nope"), std::invalid_argument);
}

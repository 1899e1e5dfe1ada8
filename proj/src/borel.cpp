#include "exchstruct/borel.hpp"

#include <set>
#include <stdexcept>

namespace exchstruct {

FinStructure induce(const BorelStructure& p, std::span<const double> t) {
  {
    std::set<double> seen(t.begin(), t.end());
    if (seen.size() != t.size())
      throw std::invalid_argument("induce: entries must be pairwise distinct");
  }
  const int n = static_cast<int>(t.size());
  FinStructure out(p.sig, n);
  for (size_t r = 0; r < p.sig.relations.size(); ++r) {
    const int arity = p.sig.relations[r].arity;
    std::vector<double> args(arity);
    for (const auto& idx : all_tuples(n, arity)) {
      for (int i = 0; i < arity; ++i) args[i] = t[idx[i]];
      if (p.predicates[r](args)) out.add_tuple(static_cast<int>(r), idx);
    }
  }
  return out;
}

std::vector<double> sample_distinct_reals(const Measure& m, int n, Rng& rng) {
  std::vector<double> t;
  t.reserve(n);
  std::set<double> seen;
  for (int i = 0; i < n; ++i) {
    double x = m.sample(rng);
    int attempts = 0;
    while (seen.count(x)) {
      if (++attempts > 1000)
        throw std::runtime_error("tie resampling cap exceeded; measure looks non-continuous");
      x = m.sample(rng);
    }
    seen.insert(x);
    t.push_back(x);
  }
  return t;
}

FinStructure sample_prefix(const BorelStructure& p, const Measure& m, int n, Rng& rng) {
  if (n < 0) throw std::invalid_argument("negative prefix size");
  return induce(p, sample_distinct_reals(m, n, rng));
}

Signature graph_signature() { return {{{"edge", 2}}}; }

FinStructure er_sample(int n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability out of [0,1]");
  FinStructure out(graph_signature(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) {
        out.add_tuple(0, {i, j});
        out.add_tuple(0, {j, i});
      }
    }
  }
  return out;
}

namespace {

BorelStructure reduct_borel(ReductKind kind) {
  BorelStructure p;
  p.name = reduct_name(kind);
  p.sig = reduct_signature(kind);
  switch (kind) {
    case ReductKind::PureSet:
      break;
    case ReductKind::Order:
      p.predicates.push_back([](std::span<const double> a) { return a[0] < a[1]; });
      break;
    case ReductKind::Betweenness:
      p.predicates.push_back([](std::span<const double> a) {
        return (a[0] < a[1] && a[1] < a[2]) || (a[2] < a[1] && a[1] < a[0]);
      });
      break;
    case ReductKind::CircularOrder:
      p.predicates.push_back([](std::span<const double> a) {
        auto k = [](double x, double y, double z) {
          return (x < y && y < z) || (y < z && z < x) || (z < x && x < y);
        };
        return k(a[0], a[1], a[2]);
      });
      break;
    case ReductKind::Separation:
      p.predicates.push_back([](std::span<const double> a) {
        auto k = [](double x, double y, double z) {
          return (x < y && y < z) || (y < z && z < x) || (z < x && x < y);
        };
        return (k(a[0], a[1], a[2]) && k(a[1], a[2], a[3]) && k(a[2], a[3], a[0])) ||
               (k(a[3], a[2], a[1]) && k(a[2], a[1], a[0]) && k(a[1], a[0], a[3]));
      });
      break;
  }
  return p;
}

}  // namespace

BorelStructure builtin(const std::string& name) {
  if (name == "unary-split") {
    BorelStructure p;
    p.name = name;
    p.sig = {{{"R", 1}}};
    p.predicates.push_back([](std::span<const double> a) { return a[0] >= 0.0; });
    return p;
  }
  return reduct_borel(reduct_from_name(name));
}

std::vector<std::string> builtin_names() {
  return {"pure-set", "order", "betweenness", "circular", "separation", "unary-split"};
}

}  // namespace exchstruct

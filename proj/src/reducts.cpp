#include "exchstruct/reducts.hpp"

#include <set>
#include <stdexcept>

namespace exchstruct {

namespace {

// Formula-level evaluation; safe on repeated values (strict inequalities
// make every disjunct false), so induced structures never need a
// distinctness check per index tuple.
bool b_raw(double a, double b, double c) { return (a < b && b < c) || (c < b && b < a); }

bool k_raw(double a, double b, double c) {
  return (a < b && b < c) || (b < c && c < a) || (c < a && a < b);
}

bool s_raw(double a, double b, double c, double d) {
  return (k_raw(a, b, c) && k_raw(b, c, d) && k_raw(c, d, a)) ||
         (k_raw(d, c, b) && k_raw(c, b, a) && k_raw(b, a, d));
}

void require_distinct(std::span<const double> vals) {
  std::set<double> seen(vals.begin(), vals.end());
  if (seen.size() != vals.size()) throw std::invalid_argument("arguments must be pairwise distinct");
}

}  // namespace

ReductKind reduct_from_name(const std::string& name) {
  if (name == "pure-set") return ReductKind::PureSet;
  if (name == "order") return ReductKind::Order;
  if (name == "betweenness") return ReductKind::Betweenness;
  if (name == "circular") return ReductKind::CircularOrder;
  if (name == "separation") return ReductKind::Separation;
  throw std::invalid_argument("unknown reduct: " + name);
}

std::string reduct_name(ReductKind kind) {
  switch (kind) {
    case ReductKind::PureSet: return "pure-set";
    case ReductKind::Order: return "order";
    case ReductKind::Betweenness: return "betweenness";
    case ReductKind::CircularOrder: return "circular";
    case ReductKind::Separation: return "separation";
  }
  throw std::logic_error("bad ReductKind");
}

Signature reduct_signature(ReductKind kind) {
  switch (kind) {
    case ReductKind::PureSet: return {};
    case ReductKind::Order: return {{{"lt", 2}}};
    case ReductKind::Betweenness: return {{{"B", 3}}};
    case ReductKind::CircularOrder: return {{{"K", 3}}};
    case ReductKind::Separation: return {{{"S", 4}}};
  }
  throw std::logic_error("bad ReductKind");
}

bool betweenness(double a, double b, double c) {
  double v[] = {a, b, c};
  require_distinct(v);
  return b_raw(a, b, c);
}

bool circular(double a, double b, double c) {
  double v[] = {a, b, c};
  require_distinct(v);
  return k_raw(a, b, c);
}

bool separation(double a, double b, double c, double d) {
  double v[] = {a, b, c, d};
  require_distinct(v);
  return s_raw(a, b, c, d);
}

FinStructure induce_reduct(ReductKind kind, std::span<const double> t) {
  require_distinct(t);
  const int n = static_cast<int>(t.size());
  FinStructure out(reduct_signature(kind), n);
  switch (kind) {
    case ReductKind::PureSet:
      break;
    case ReductKind::Order:
      for (const auto& idx : all_tuples(n, 2))
        if (t[idx[0]] < t[idx[1]]) out.add_tuple(0, idx);
      break;
    case ReductKind::Betweenness:
      for (const auto& idx : all_tuples(n, 3))
        if (b_raw(t[idx[0]], t[idx[1]], t[idx[2]])) out.add_tuple(0, idx);
      break;
    case ReductKind::CircularOrder:
      for (const auto& idx : all_tuples(n, 3))
        if (k_raw(t[idx[0]], t[idx[1]], t[idx[2]])) out.add_tuple(0, idx);
      break;
    case ReductKind::Separation:
      for (const auto& idx : all_tuples(n, 4))
        if (s_raw(t[idx[0]], t[idx[1]], t[idx[2]], t[idx[3]])) out.add_tuple(0, idx);
      break;
  }
  return out;
}

}  // namespace exchstruct

#pragma once

#include "exchstruct/finstruct.hpp"

#include <span>
#include <string>
#include <vector>

namespace exchstruct {

// The five reducts of the dense linear order: pure set, linear order,
// betweenness B, circular order K, separation S.
enum class ReductKind { PureSet, Order, Betweenness, CircularOrder, Separation };

ReductKind reduct_from_name(const std::string& name);  // pure-set, order, ...
std::string reduct_name(ReductKind kind);
Signature reduct_signature(ReductKind kind);

// B(a,b,c) <=> (a < b < c) or (c < b < a). Arguments must be distinct.
bool betweenness(double a, double b, double c);

// K(a,b,c) <=> (a < b < c) or (b < c < a) or (c < a < b).
bool circular(double a, double b, double c);

// S(a,b,c,d) <=> (K(a,b,c) & K(b,c,d) & K(c,d,a))
//             or (K(d,c,b) & K(c,b,a) & K(b,a,d)).
bool separation(double a, double b, double c, double d);

// Structure on {0..|t|-1} whose relation holds on an index tuple iff the
// reduct's formula holds on the corresponding reals.
FinStructure induce_reduct(ReductKind kind, std::span<const double> t);

inline const std::vector<ReductKind> kAllReducts = {
    ReductKind::PureSet, ReductKind::Order, ReductKind::Betweenness,
    ReductKind::CircularOrder, ReductKind::Separation};

}  // namespace exchstruct

#pragma once

#include "exchstruct/finstruct.hpp"
#include "exchstruct/measures.hpp"
#include "exchstruct/reducts.hpp"
#include "exchstruct/rng.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace exchstruct {

// A relational structure on the reals given by one deterministic total
// predicate per symbol. The catalog is closed: only builtins, each of
// which is known to strongly witness its theory.
struct BorelStructure {
  Signature sig;
  std::vector<std::function<bool(std::span<const double>)>> predicates;
  std::string name;
};

// Sampling map on a finite prefix: result holds R(n1..nj) iff the
// predicate holds on (t[n1]..t[nj]). Entries of t must be distinct.
FinStructure induce(const BorelStructure& p, std::span<const double> t);

// One draw from the n-index marginal of the pushforward of the i.i.d.
// product measure: n i.i.d. reals from m (ties resampled; cap 1000),
// then induce.
FinStructure sample_prefix(const BorelStructure& p, const Measure& m, int n, Rng& rng);

// Draws the reals too, for callers that need both.
std::vector<double> sample_distinct_reals(const Measure& m, int n, Rng& rng);

// Erdos-Renyi G(n,p): each unordered pair gets an edge independently;
// stored symmetrically and irreflexively.
FinStructure er_sample(int n, double p, Rng& rng);
Signature graph_signature();

// Catalog: pure-set, order, betweenness, circular, separation, unary-split.
BorelStructure builtin(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace exchstruct

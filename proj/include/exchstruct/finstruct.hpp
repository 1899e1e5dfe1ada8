#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace exchstruct {

// Brute-force bound for automorphism / isomorphism / unlabeled-type search.
inline constexpr int kMaxBruteForceSize = 8;

struct RelationSymbol {
  std::string name;
  int arity = 0;

  bool operator==(const RelationSymbol&) const = default;
};

struct Signature {
  std::vector<RelationSymbol> relations;

  bool operator==(const Signature&) const = default;
  void validate() const;  // distinct names, arities >= 1
  int max_arity() const;
};

using Tuple = std::vector<int>;

// A finite relational structure on {0..size-1}. Tuple sets are kept sorted
// so encodings are deterministic.
struct FinStructure {
  Signature sig;
  int size = 0;
  std::vector<std::vector<Tuple>> interpretation;  // one sorted tuple set per symbol

  FinStructure() = default;
  FinStructure(Signature s, int n);

  bool operator==(const FinStructure&) const = default;

  void add_tuple(int rel, Tuple t);
  bool has_tuple(int rel, const Tuple& t) const;
  void normalize();  // sort + dedupe, range-check entries
};

struct Permutation {
  std::vector<int> map;  // i -> map[i]

  static Permutation identity(int n);
  int size() const { return static_cast<int>(map.size()); }
  int operator()(int i) const { return map[i]; }
  Permutation inverse() const;
  Permutation compose(const Permutation& inner) const;  // (*this)(inner(i))
  void validate() const;
};

struct TypeId {
  std::string encoding;
  bool labeled = true;

  bool operator==(const TypeId&) const = default;
  auto operator<=>(const TypeId&) const = default;
};

// Logic action at finite scale: the result holds R(s0..sk-1) iff
// M holds R(inv(s0)..inv(sk-1)) for inv the inverse of sigma.
FinStructure apply_permutation(const FinStructure& m, const Permutation& sigma);

FinStructure induced_substructure(const FinStructure& m, const std::vector<int>& indices);

bool are_isomorphic(const FinStructure& m, const FinStructure& n);

TypeId labeled_type(const FinStructure& m);
// Minimum labeled encoding over all size! relabelings; size <= 8.
TypeId unlabeled_type(const FinStructure& m);

std::vector<Permutation> automorphism_group(const FinStructure& m);

struct CanonicalStructure {
  int base_size = 0;
  // orbit_relations[k-1] lists the orbits of Aut(M) on k-tuples.
  std::vector<std::vector<std::vector<Tuple>>> orbit_relations;
};

CanonicalStructure canonical_structure(const FinStructure& m, int max_arity);

// True iff Aut(M) acts transitively on k-element subsets.
bool is_highly_homogeneous_finite(const FinStructure& m, int k);

// Text format: "signature name/arity ...", "size n", then per relation
// "name: (t,...) (t,...) ...".
std::string format_structure(const FinStructure& m);
FinStructure parse_structure(const std::string& text);

// All j-tuples over {0..n-1}, in lexicographic order.
std::vector<Tuple> all_tuples(int n, int j);
std::vector<Permutation> all_permutations(int n);

}  // namespace exchstruct

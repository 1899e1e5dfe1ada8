#include "exchstruct/finstruct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace exchstruct {

void Signature::validate() const {
  std::set<std::string> names;
  for (const auto& rel : relations) {
    if (rel.arity < 1) throw std::invalid_argument("relation arity must be >= 1: " + rel.name);
    if (!names.insert(rel.name).second)
      throw std::invalid_argument("duplicate relation name: " + rel.name);
  }
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& rel : relations) m = std::max(m, rel.arity);
  return m;
}

FinStructure::FinStructure(Signature s, int n) : sig(std::move(s)), size(n) {
  sig.validate();
  if (n < 0) throw std::invalid_argument("negative structure size");
  interpretation.resize(sig.relations.size());
}

void FinStructure::add_tuple(int rel, Tuple t) {
  if (static_cast<int>(t.size()) != sig.relations.at(rel).arity)
    throw std::invalid_argument("tuple arity mismatch for " + sig.relations[rel].name);
  for (int v : t)
    if (v < 0 || v >= size) throw std::invalid_argument("tuple entry out of range");
  auto& tuples = interpretation[rel];
  auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
  if (it == tuples.end() || *it != t) tuples.insert(it, std::move(t));
}

bool FinStructure::has_tuple(int rel, const Tuple& t) const {
  const auto& tuples = interpretation.at(rel);
  return std::binary_search(tuples.begin(), tuples.end(), t);
}

void FinStructure::normalize() {
  if (interpretation.size() != sig.relations.size())
    throw std::invalid_argument("interpretation/signature size mismatch");
  for (size_t r = 0; r < interpretation.size(); ++r) {
    for (const auto& t : interpretation[r]) {
      if (static_cast<int>(t.size()) != sig.relations[r].arity)
        throw std::invalid_argument("tuple arity mismatch for " + sig.relations[r].name);
      for (int v : t)
        if (v < 0 || v >= size) throw std::invalid_argument("tuple entry out of range");
    }
    std::sort(interpretation[r].begin(), interpretation[r].end());
    interpretation[r].erase(std::unique(interpretation[r].begin(), interpretation[r].end()),
                            interpretation[r].end());
  }
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.map.resize(n);
  std::iota(p.map.begin(), p.map.end(), 0);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.map.resize(map.size());
  for (size_t i = 0; i < map.size(); ++i) inv.map[map[i]] = static_cast<int>(i);
  return inv;
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (map.size() != inner.map.size()) throw std::invalid_argument("permutation size mismatch");
  Permutation out;
  out.map.resize(map.size());
  for (size_t i = 0; i < map.size(); ++i) out.map[i] = map[inner.map[i]];
  return out;
}

void Permutation::validate() const {
  std::vector<bool> seen(map.size(), false);
  for (int v : map) {
    if (v < 0 || v >= static_cast<int>(map.size()) || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
}

FinStructure apply_permutation(const FinStructure& m, const Permutation& sigma) {
  if (sigma.size() != m.size) throw std::invalid_argument("permutation/structure size mismatch");
  sigma.validate();
  FinStructure out(m.sig, m.size);
  for (size_t r = 0; r < m.interpretation.size(); ++r) {
    for (const auto& t : m.interpretation[r]) {
      Tuple image(t.size());
      for (size_t i = 0; i < t.size(); ++i) image[i] = sigma(t[i]);
      out.add_tuple(static_cast<int>(r), std::move(image));
    }
  }
  return out;
}

FinStructure induced_substructure(const FinStructure& m, const std::vector<int>& indices) {
  std::set<int> seen;
  for (int idx : indices) {
    if (idx < 0 || idx >= m.size) throw std::invalid_argument("substructure index out of range");
    if (!seen.insert(idx).second) throw std::invalid_argument("repeated substructure index");
  }
  FinStructure out(m.sig, static_cast<int>(indices.size()));
  const int k = out.size;
  for (size_t r = 0; r < m.interpretation.size(); ++r) {
    const int arity = m.sig.relations[r].arity;
    for (const auto& t : all_tuples(k, arity)) {
      Tuple mapped(arity);
      for (int i = 0; i < arity; ++i) mapped[i] = indices[t[i]];
      if (m.has_tuple(static_cast<int>(r), mapped)) out.add_tuple(static_cast<int>(r), t);
    }
  }
  return out;
}

std::vector<Tuple> all_tuples(int n, int j) {
  std::vector<Tuple> out;
  if (j == 0) {
    out.push_back({});
    return out;
  }
  if (n == 0) return out;
  Tuple cur(j, 0);
  while (true) {
    out.push_back(cur);
    int pos = j - 1;
    while (pos >= 0 && ++cur[pos] == n) cur[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation{ids});
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

namespace {

void check_brute_size(int n) {
  if (n > kMaxBruteForceSize)
    throw std::invalid_argument("structure size exceeds brute-force bound of 8");
}

// Per-element invariant: how often the element occurs in each (relation,
// position) slot. Used to prune the permutation search.
std::vector<std::vector<int>> element_profiles(const FinStructure& m) {
  std::vector<std::vector<int>> prof(m.size);
  for (auto& p : prof) p.assign(m.sig.relations.size() * (m.sig.max_arity() + 1), 0);
  for (size_t r = 0; r < m.interpretation.size(); ++r) {
    for (const auto& t : m.interpretation[r]) {
      for (size_t pos = 0; pos < t.size(); ++pos)
        prof[t[pos]][r * (m.sig.max_arity() + 1) + pos]++;
    }
  }
  return prof;
}

std::string encode(const FinStructure& m) {
  std::ostringstream os;
  for (const auto& rel : m.sig.relations) os << rel.name << '/' << rel.arity << ';';
  os << '|' << m.size << '|';
  for (const auto& tuples : m.interpretation) {
    for (const auto& t : tuples) {
      os << '(';
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ',';
        os << t[i];
      }
      os << ')';
    }
    os << ';';
  }
  return os.str();
}

}  // namespace

bool are_isomorphic(const FinStructure& m, const FinStructure& n) {
  if (m.sig != n.sig) throw std::invalid_argument("signature mismatch in isomorphism check");
  if (m.size != n.size) return false;
  check_brute_size(m.size);
  auto pm = element_profiles(m);
  auto pn = element_profiles(n);
  {
    auto sm = pm;
    auto sn = pn;
    std::sort(sm.begin(), sm.end());
    std::sort(sn.begin(), sn.end());
    if (sm != sn) return false;
  }
  for (const auto& sigma : all_permutations(m.size)) {
    bool compatible = true;
    for (int i = 0; i < m.size && compatible; ++i) compatible = pm[i] == pn[sigma(i)];
    if (!compatible) continue;
    if (apply_permutation(m, sigma) == n) return true;
  }
  return false;
}

TypeId labeled_type(const FinStructure& m) { return TypeId{encode(m), true}; }

TypeId unlabeled_type(const FinStructure& m) {
  check_brute_size(m.size);
  std::string best;
  for (const auto& sigma : all_permutations(m.size)) {
    std::string enc = encode(apply_permutation(m, sigma));
    if (best.empty() || enc < best) best = std::move(enc);
  }
  if (best.empty()) best = encode(m);  // size 0
  return TypeId{best, false};
}

std::vector<Permutation> automorphism_group(const FinStructure& m) {
  check_brute_size(m.size);
  std::vector<Permutation> group;
  auto prof = element_profiles(m);
  for (const auto& sigma : all_permutations(m.size)) {
    bool compatible = true;
    for (int i = 0; i < m.size && compatible; ++i) compatible = prof[i] == prof[sigma(i)];
    if (compatible && apply_permutation(m, sigma) == m) group.push_back(sigma);
  }
  return group;
}

CanonicalStructure canonical_structure(const FinStructure& m, int max_arity) {
  check_brute_size(m.size);
  if (max_arity < 1 || max_arity > 4)
    throw std::invalid_argument("canonical structure arity must be in 1..4");
  auto group = automorphism_group(m);
  CanonicalStructure out;
  out.base_size = m.size;
  for (int k = 1; k <= max_arity; ++k) {
    auto tuples = all_tuples(m.size, k);
    std::map<Tuple, int> index;
    for (size_t i = 0; i < tuples.size(); ++i) index[tuples[i]] = static_cast<int>(i);
    std::vector<int> orbit_of(tuples.size(), -1);
    std::vector<std::vector<Tuple>> orbits;
    for (size_t i = 0; i < tuples.size(); ++i) {
      if (orbit_of[i] >= 0) continue;
      int id = static_cast<int>(orbits.size());
      orbits.emplace_back();
      // closure of tuples[i] under the group
      std::vector<size_t> stack{i};
      orbit_of[i] = id;
      while (!stack.empty()) {
        size_t cur = stack.back();
        stack.pop_back();
        orbits[id].push_back(tuples[cur]);
        for (const auto& sigma : group) {
          Tuple image(tuples[cur].size());
          for (size_t p = 0; p < image.size(); ++p) image[p] = sigma(tuples[cur][p]);
          size_t j = index.at(image);
          if (orbit_of[j] < 0) {
            orbit_of[j] = id;
            stack.push_back(j);
          }
        }
      }
      std::sort(orbits[id].begin(), orbits[id].end());
    }
    out.orbit_relations.push_back(std::move(orbits));
  }
  return out;
}

bool is_highly_homogeneous_finite(const FinStructure& m, int k) {
  check_brute_size(m.size);
  if (k < 0 || k > m.size) throw std::invalid_argument("subset size out of range");
  if (k == 0 || k == m.size) return true;
  auto group = automorphism_group(m);
  // enumerate k-subsets
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < m.size; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < subsets.size(); ++i) index[subsets[i]] = static_cast<int>(i);
  std::vector<bool> reached(subsets.size(), false);
  std::vector<size_t> stack{0};
  reached[0] = true;
  size_t count = 1;
  while (!stack.empty()) {
    size_t cur_idx = stack.back();
    stack.pop_back();
    for (const auto& sigma : group) {
      std::vector<int> image;
      image.reserve(k);
      for (int v : subsets[cur_idx]) image.push_back(sigma(v));
      std::sort(image.begin(), image.end());
      size_t j = index.at(image);
      if (!reached[j]) {
        reached[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == subsets.size();
}

std::string format_structure(const FinStructure& m) {
  std::ostringstream os;
  os << "signature";
  for (const auto& rel : m.sig.relations) os << ' ' << rel.name << '/' << rel.arity;
  os << "\nsize " << m.size << '\n';
  for (size_t r = 0; r < m.interpretation.size(); ++r) {
    os << m.sig.relations[r].name << ':';
    for (const auto& t : m.interpretation[r]) {
      os << " (";
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ',';
        os << t[i];
      }
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

FinStructure parse_structure(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Signature sig;
  if (!std::getline(in, line)) throw std::invalid_argument("empty structure text");
  {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word != "signature") throw std::invalid_argument("expected 'signature' line");
    while (ls >> word) {
      auto slash = word.find('/');
      if (slash == std::string::npos)
        throw std::invalid_argument("expected name/arity, got: " + word);
      sig.relations.push_back({word.substr(0, slash), std::stoi(word.substr(slash + 1))});
    }
  }
  if (!std::getline(in, line)) throw std::invalid_argument("missing 'size' line");
  int n;
  {
    std::istringstream ls(line);
    std::string word;
    ls >> word >> n;
    if (word != "size") throw std::invalid_argument("expected 'size' line");
  }
  FinStructure out(sig, n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected 'name: tuples' line");
    std::string name = line.substr(0, colon);
    int rel = -1;
    for (size_t r = 0; r < sig.relations.size(); ++r)
      if (sig.relations[r].name == name) rel = static_cast<int>(r);
    if (rel < 0) throw std::invalid_argument("unknown relation: " + name);
    std::string rest = line.substr(colon + 1);
    size_t pos = 0;
    while ((pos = rest.find('(', pos)) != std::string::npos) {
      size_t close = rest.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unterminated tuple");
      std::istringstream ts(rest.substr(pos + 1, close - pos - 1));
      Tuple t;
      std::string entry;
      while (std::getline(ts, entry, ',')) t.push_back(std::stoi(entry));
      out.add_tuple(rel, std::move(t));
      pos = close + 1;
    }
  }
  return out;
}

}  // namespace exchstruct

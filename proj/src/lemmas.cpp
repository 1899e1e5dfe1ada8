#include "exchstruct/lemmas.hpp"

#include "exchstruct/rng.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exchstruct {

namespace {

std::vector<std::vector<int>> all_words(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  if (n == 0) {
    out.push_back(cur);
    return out;
  }
  while (true) {
    out.push_back(cur);
    int pos = n - 1;
    while (pos >= 0 && ++cur[pos] > l) cur[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace

void SymCoeffTable::validate() const {
  if (n < 0 || l < 0) throw std::invalid_argument("bad table dimensions");
  auto words = all_words(n, l);
  if (a.size() != words.size()) throw std::invalid_argument("coefficient table incomplete");
  for (const auto& s : words) {
    auto it = a.find(s);
    if (it == a.end()) throw std::invalid_argument("coefficient table incomplete");
    if (it->second < 0) throw std::invalid_argument("negative coefficient");
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (a.at(sorted) != it->second)
      throw std::invalid_argument("coefficient table violates the symmetry condition");
  }
}

const Rational& SymCoeffTable::at(const std::vector<int>& s) const {
  auto it = a.find(s);
  if (it == a.end()) throw std::invalid_argument("missing coefficient entry");
  return it->second;
}

const Rational& SymCoeffTable::a_star() const { return at(std::vector<int>(n, l)); }

bool SymCoeffTable::is_constant() const {
  for (const auto& [s, value] : a)
    if (value != a.begin()->second) return false;
  return true;
}

SymCoeffTable SymCoeffTable::constant(int n, int l, const Rational& value) {
  SymCoeffTable t;
  t.n = n;
  t.l = l;
  for (const auto& s : all_words(n, l)) t.a[s] = value;
  return t;
}

void LambdaPoint::validate() const {
  Rational sum = 0;
  for (const auto& v : lambda) {
    if (v <= 0) throw std::invalid_argument("lambda coordinates must be strictly positive");
    sum += v;
  }
  if (sum != 1) throw std::invalid_argument("lambda coordinates must sum exactly to 1");
}

int ExponentVector::total() const {
  int t = 0;
  for (int v : k) t += v;
  return t;
}

void ExponentVector::validate() const {
  for (int v : k)
    if (v < 0) throw std::invalid_argument("negative exponent");
  if (total() > n) throw std::invalid_argument("exponent sum exceeds n");
}

Rational eval_spade(const SymCoeffTable& table, const LambdaPoint& point) {
  table.validate();
  point.validate();
  if (static_cast<int>(point.lambda.size()) != table.l + 1)
    throw std::invalid_argument("lambda dimension does not match table alphabet");
  Rational total = 0;
  for (const auto& [s, coeff] : table.a) {
    Rational term = coeff;
    for (int v : s) term *= point.lambda[v];
    total += term;
  }
  return total;
}

int spread_check(const SymCoeffTable& table, int grid_resolution) {
  table.validate();
  if (grid_resolution < table.l + 1)
    throw std::invalid_argument("grid resolution too small for strictly positive coordinates");
  std::set<Rational> values;
  // compositions of grid_resolution into l+1 strictly positive parts
  std::vector<int> parts(table.l + 1, 1);
  parts.back() = grid_resolution - table.l;
  auto emit = [&](const std::vector<int>& c) {
    LambdaPoint point;
    for (int v : c) point.lambda.push_back(Rational(v, grid_resolution));
    values.insert(eval_spade(table, point));
  };
  std::vector<int> cur(table.l + 1, 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == table.l) {
      cur[pos] = remaining;
      emit(cur);
      return;
    }
    for (int v = 1; v <= remaining - (table.l - pos); ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, grid_resolution);
  return static_cast<int>(values.size());
}

namespace {

Rational multinomial_c(const ExponentVector& e) {
  BigInt num = factorial(unsigned(e.n));
  BigInt den = factorial(unsigned(e.n - e.total()));
  for (int v : e.k) den *= factorial(unsigned(v));
  return Rational(num, den);
}

// Gamma(t): the non-decreasing word with t_i many i's, padded with l's.
std::vector<int> gamma_word(const std::vector<int>& t, int n, int l) {
  std::vector<int> s;
  for (size_t i = 0; i < t.size(); ++i) s.insert(s.end(), t[i], static_cast<int>(i));
  s.insert(s.end(), n - s.size(), l);
  return s;
}

// Iterate t with 0 <= t_i <= k_i.
template <typename F>
void for_each_sub(const std::vector<int>& k, F&& fn) {
  std::vector<int> t(k.size(), 0);
  while (true) {
    fn(t);
    size_t pos = 0;
    while (pos < k.size() && ++t[pos] > k[pos]) t[pos++] = 0;
    if (pos == k.size()) break;
  }
}

}  // namespace

Rational beta_formula(const SymCoeffTable& table, const ExponentVector& e) {
  table.validate();
  e.validate();
  if (static_cast<int>(e.k.size()) != table.l || e.n != table.n)
    throw std::invalid_argument("exponent vector does not match table dimensions");
  const int k = e.total();
  Rational sum = 0;
  for_each_sub(e.k, [&](const std::vector<int>& t) {
    int t_total = 0;
    BigInt binoms = 1;
    for (size_t i = 0; i < t.size(); ++i) {
      t_total += t[i];
      binoms *= binomial(unsigned(e.k[i]), unsigned(t[i]));
    }
    Rational term = Rational(binoms) * table.at(gamma_word(t, table.n, table.l));
    if ((k - t_total) % 2 != 0) term = -term;
    sum += term;
  });
  return multinomial_c(e) * sum;
}

Rational beta_normalized(const SymCoeffTable& table, const ExponentVector& e) {
  return beta_formula(table, e) / multinomial_c(e);
}

Rational beta_expand(const SymCoeffTable& table, const ExponentVector& e) {
  table.validate();
  e.validate();
  if (table.n > 4 || table.l > 3)
    throw std::invalid_argument("symbolic expansion limited to n <= 4, l <= 3");
  if (static_cast<int>(e.k.size()) != table.l || e.n != table.n)
    throw std::invalid_argument("exponent vector does not match table dimensions");
  const int l = table.l;
  // polynomial in lambda_0..lambda_{l-1} as exponent-vector -> coefficient
  std::map<std::vector<int>, Rational> poly;
  for (const auto& [s, coeff] : table.a) {
    if (coeff == 0) continue;
    std::vector<int> base(l, 0);
    int count_l = 0;
    for (int v : s) {
      if (v == l)
        ++count_l;
      else
        ++base[v];
    }
    // expand (1 - lambda_0 - ... - lambda_{l-1})^count_l
    std::vector<int> exps(l, 0);
    auto rec = [&](auto&& self, int pos, int remaining, const Rational& acc) -> void {
      if (pos == l) {
        // remaining factors of 1
        std::vector<int> mono = base;
        for (int i = 0; i < l; ++i) mono[i] += exps[i];
        poly[mono] += coeff * acc;
        return;
      }
      BigInt choose = 1;
      int left = remaining;
      for (int c = 0; c <= remaining; ++c) {
        exps[pos] = c;
        Rational factor = Rational(binomial(unsigned(remaining), unsigned(c)));
        if (c % 2 != 0) factor = -factor;
        // distribute remaining-c among later variables and the constant
        self(self, pos + 1, remaining - c, acc * factor);
      }
      (void)choose;
      (void)left;
      exps[pos] = 0;
    };
    rec(rec, 0, count_l, Rational(1));
  }
  auto it = poly.find(e.k);
  return it == poly.end() ? Rational(0) : it->second;
}

BigInt binomial_cancellation(const ExponentVector& e) {
  e.validate();
  const int k = e.total();
  if (k == 0) throw std::invalid_argument("binomial cancellation needs k >= 1");
  BigInt sum = 0;
  for_each_sub(e.k, [&](const std::vector<int>& t) {
    int t_total = 0;
    BigInt binoms = 1;
    for (size_t i = 0; i < t.size(); ++i) {
      t_total += t[i];
      binoms *= binomial(unsigned(e.k[i]), unsigned(t[i]));
    }
    sum += (k - t_total) % 2 == 0 ? binoms : -binoms;
  });
  return sum;
}

EventKind event_from_name(const std::string& name) {
  if (name == "same-sign-pairs") return EventKind::SameSignPairs;
  if (name == "same-cell") return EventKind::SameCell;
  throw std::invalid_argument("unknown event: " + name);
}

std::string event_name(EventKind kind) {
  return kind == EventKind::SameSignPairs ? "same-sign-pairs" : "same-cell";
}

namespace {

// -1 for parts within (-inf,0), +1 for parts within [0,inf); straddling
// parts make the event non-box-decomposable.
int part_sign(const IntervalUnion& part) {
  bool neg = true, pos = true;
  for (const auto& iv : part.intervals) {
    if (!(iv.hi <= 0.0)) neg = false;
    if (!(iv.lo >= 0.0)) pos = false;
  }
  if (neg) return -1;
  if (pos) return +1;
  throw std::invalid_argument(
      "event not box-decomposable over the given parts: a part straddles 0");
}

}  // namespace

SymCoeffTable cmeas_table(const Measure& m, const std::vector<IntervalUnion>& parts,
                          EventKind event, int n) {
  if (parts.empty()) throw std::invalid_argument("no parts given");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  for (size_t i = 0; i < parts.size(); ++i) {
    parts[i].validate();
    if (m.interval_prob(parts[i]) <= 0.0) {
      std::ostringstream os;
      os << "part " << i << " has measure 0";
      throw std::invalid_argument(os.str());
    }
  }
  std::vector<int> signs;
  if (event == EventKind::SameSignPairs)
    for (const auto& part : parts) signs.push_back(part_sign(part));
  SymCoeffTable table;
  table.n = n;
  table.l = static_cast<int>(parts.size()) - 1;
  for (const auto& s : all_words(n, table.l)) {
    bool in_event = true;
    switch (event) {
      case EventKind::SameCell:
        for (int v : s) in_event = in_event && v == s[0];
        break;
      case EventKind::SameSignPairs:
        // a point of the box lies in the event iff all coordinates share a
        // sign; with sign-pure parts the box is entirely in or out (the
        // boundary hyperplanes are null under a continuous measure)
        for (int v : s) in_event = in_event && signs[v] == signs[s[0]];
        break;
    }
    table.a[s] = in_event ? 1 : 0;
  }
  table.validate();  // condition (a) holds by construction
  return table;
}

Rational reweighted_event_prob(const SymCoeffTable& table, const LambdaPoint& point) {
  return eval_spade(table, point);
}

bool event_member(EventKind event, const std::vector<IntervalUnion>& parts,
                  const std::vector<double>& x) {
  switch (event) {
    case EventKind::SameSignPairs: {
      for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
          if (!(x[i] * x[j] > 0.0)) return false;
      return true;
    }
    case EventKind::SameCell: {
      int first = -1;
      for (double v : x) {
        int cell = -1;
        for (size_t i = 0; i < parts.size(); ++i)
          if (parts[i].contains(v)) cell = static_cast<int>(i);
        if (cell < 0) return false;
        if (first < 0) first = cell;
        if (cell != first) return false;
      }
      return true;
    }
  }
  throw std::logic_error("bad EventKind");
}

double mc_event_prob(MeasurePtr m, const Weight& w, EventKind event, int n,
                     std::uint64_t samples, std::uint64_t seed) {
  MeasurePtr mw = reweight(std::move(m), w);
  std::uint64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (std::int64_t i = 0; i < std::int64_t(samples); ++i) {
    Rng rng = Rng::substream(seed, std::uint64_t(i));
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = mw->sample(rng);
    if (event_member(event, w.parts, x)) ++hits;
  }
  return double(hits) / double(samples);
}

SymCoeffTable table_from_json(const nlohmann::json& j) {
  SymCoeffTable table;
  table.n = j.at("n").get<int>();
  table.l = j.at("l").get<int>();
  if (table.l > 9) throw std::invalid_argument("digit-string keys support l <= 9");
  for (const auto& [key, value] : j.at("a").items()) {
    if (static_cast<int>(key.size()) != table.n)
      throw std::invalid_argument("bad coefficient key length: " + key);
    std::vector<int> s;
    for (char c : key) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad coefficient key: " + key);
      s.push_back(c - '0');
    }
    Rational r = value.is_string() ? parse_rational(value.get<std::string>())
                                   : rational_from_double(value.get<double>());
    table.a[s] = r;
  }
  table.validate();
  return table;
}

nlohmann::json table_to_json(const SymCoeffTable& table) {
  nlohmann::json a = nlohmann::json::object();
  for (const auto& [s, value] : table.a) {
    std::string key;
    for (int v : s) key += char('0' + v);
    a[key] = rational_to_string(value);
  }
  return {{"n", table.n}, {"l", table.l}, {"a", a}};
}

namespace {

// Random symmetric table: one random coefficient per multiset orbit.
SymCoeffTable random_table(int n, int l, Rng& rng, bool force_nonconstant) {
  SymCoeffTable table;
  table.n = n;
  table.l = l;
  std::map<std::vector<int>, Rational> orbit_value;
  for (const auto& s : all_words(n, l)) {
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    auto it = orbit_value.find(sorted);
    if (it == orbit_value.end()) {
      Rational v(int(rng.next_u64() % 10), int(rng.next_u64() % 4) + 1);
      it = orbit_value.emplace(sorted, v).first;
    }
    table.a[s] = it->second;
  }
  if (force_nonconstant && table.is_constant()) {
    auto first = table.a.begin()->first;
    std::vector<int> sorted = first;
    // bump one whole orbit
    Rational bumped = table.a[sorted] + 1;
    for (auto& [s, value] : table.a) {
      std::vector<int> key = s;
      std::sort(key.begin(), key.end());
      if (key == sorted) value = bumped;
    }
  }
  return table;
}

}  // namespace

nlohmann::json verify_lemmas(int max_n, int max_l, int random_tables, std::uint64_t seed) {
  nlohmann::json checks = nlohmann::json::array();
  bool all_pass = true;
  auto record = [&](const std::string& name, bool ok, const nlohmann::json& detail) {
    checks.push_back({{"identity", name}, {"status", ok ? "pass" : "fail"}, {"detail", detail}});
    all_pass = all_pass && ok;
  };

  {  // alternating binomial sums vanish: components <= 4, 1 <= k <= 16
    bool ok = true;
    int checked = 0;
    for (int dims = 1; dims <= 4 && ok; ++dims) {
      std::vector<int> k(dims, 0);
      while (true) {
        int total = 0;
        for (int v : k) total += v;
        if (total >= 1) {
          ExponentVector e{k, 16};
          if (binomial_cancellation(e) != 0) ok = false;
          ++checked;
        }
        int pos = 0;
        while (pos < dims && ++k[pos] > 4) k[pos++] = 0;
        if (pos == dims) break;
      }
    }
    record("binomial-cancellation", ok, {{"vectors_checked", checked}});
  }

  Rng rng(seed);
  {  // closed-form coefficient vs full expansion
    bool ok = true;
    int checked = 0;
    for (int i = 0; i < random_tables && ok; ++i) {
      int n = 1 + int(rng.next_u64() % unsigned(std::min(max_n, 4)));
      int l = 1 + int(rng.next_u64() % unsigned(std::min(max_l, 3)));
      SymCoeffTable table = random_table(n, l, rng, false);
      std::vector<int> k(l, 0);
      while (true) {
        int total = 0;
        for (int v : k) total += v;
        if (total <= n) {
          ExponentVector e{k, n};
          if (beta_formula(table, e) != beta_expand(table, e)) ok = false;
          ++checked;
        }
        int pos = 0;
        while (pos < l && ++k[pos] > n) k[pos++] = 0;
        if (pos == l) break;
      }
    }
    record("beta-coefficient", ok, {{"coefficients_checked", checked}});
  }

  {  // non-constant tables spread; constant tables do not
    bool ok = true;
    for (int i = 0; i < random_tables && ok; ++i) {
      int n = 1 + int(rng.next_u64() % unsigned(std::min(max_n, 4)));
      int l = 1 + int(rng.next_u64() % unsigned(std::min(max_l, 3)));
      SymCoeffTable table = random_table(n, l, rng, true);
      if (spread_check(table, 12) < 2) ok = false;
      SymCoeffTable flat = SymCoeffTable::constant(n, l, Rational(2, 3));
      if (spread_check(flat, 12) != 1) ok = false;
    }
    record("spread", ok, {{"tables_checked", random_tables}});
  }

  {  // multinomial theorem: constant table evaluates to the constant
    bool ok = true;
    for (int n = 1; n <= std::min(max_n, 4); ++n) {
      for (int l = 1; l <= std::min(max_l, 3); ++l) {
        SymCoeffTable flat = SymCoeffTable::constant(n, l, Rational(5, 7));
        LambdaPoint point;
        for (int i = 0; i <= l; ++i) point.lambda.push_back(Rational(1, l + 1));
        if (eval_spade(flat, point) != Rational(5, 7)) ok = false;
      }
    }
    record("multinomial-constant", ok, nlohmann::json::object());
  }

  return {{"max_n", max_n}, {"max_l", max_l}, {"seed", seed},
          {"checks", checks}, {"all_pass", all_pass}};
}

}  // namespace exchstruct

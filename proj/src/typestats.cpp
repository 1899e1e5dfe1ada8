#include "exchstruct/typestats.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exchstruct {

void FrequencyTable::merge(const FrequencyTable& other) {
  if (n != other.n) throw std::invalid_argument("cannot merge tables of different prefix size");
  for (const auto& [key, count] : other.counts) counts[key] += count;
  total += other.total;
}

std::string FrequencyTable::to_csv() const {
  std::ostringstream os;
  os << "type_id,count\n";
  for (const auto& [key, count] : counts) os << '"' << key << "\"," << count << '\n';
  return os.str();
}

nlohmann::json TestReport::to_json() const {
  return {{"test", test},
          {"statistic", statistic},
          {"threshold", threshold},
          {"p_value", p_value},
          {"decision", pass ? "pass" : "fail"},
          {"params", params}};
}

std::pair<std::set<std::string>, std::uint64_t> enumerate_types(ReductKind kind, int n) {
  if (n < 0 || n > 7) throw std::invalid_argument("enumerate_types: n must be in 0..7");
  std::set<std::string> types;
  std::vector<double> vals(n);
  std::iota(vals.begin(), vals.end(), 1.0);
  std::sort(vals.begin(), vals.end());
  do {
    types.insert(labeled_type(induce_reduct(kind, vals)).encoding);
  } while (std::next_permutation(vals.begin(), vals.end()));
  return {types, types.size()};
}

namespace {

FrequencyTable estimate_impl(const BorelStructure& p, const Measure& m, int n,
                             std::uint64_t samples, std::uint64_t seed, bool parallel) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  FrequencyTable table;
  table.n = n;
  table.structure = p.name;
  table.measure = m.describe();
  table.seed = seed;
  table.total = samples;
  if (parallel) {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::vector<std::map<std::string, std::uint64_t>> locals(threads);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(samples); ++i) {
#ifdef _OPENMP
      auto& local = locals[omp_get_thread_num()];
#else
      auto& local = locals[0];
#endif
      Rng rng = Rng::substream(seed, std::uint64_t(i));
      local[labeled_type(sample_prefix(p, m, n, rng)).encoding]++;
    }
    for (const auto& local : locals)
      for (const auto& [key, count] : local) table.counts[key] += count;
  } else {
    for (std::uint64_t i = 0; i < samples; ++i) {
      Rng rng = Rng::substream(seed, i);
      table.counts[labeled_type(sample_prefix(p, m, n, rng)).encoding]++;
    }
  }
  return table;
}

}  // namespace

FrequencyTable estimate_frequencies(const BorelStructure& p, const Measure& m, int n,
                                    std::uint64_t samples, std::uint64_t seed) {
  return estimate_impl(p, m, n, samples, seed, true);
}

FrequencyTable estimate_frequencies_serial(const BorelStructure& p, const Measure& m, int n,
                                           std::uint64_t samples, std::uint64_t seed) {
  return estimate_impl(p, m, n, samples, seed, false);
}

TestReport test_uniformity(const FrequencyTable& table, const std::set<std::string>& expected,
                           double significance) {
  if (expected.empty()) throw std::invalid_argument("expected type set is empty");
  if (table.total < 10 * expected.size())
    throw std::invalid_argument("undersized sample for uniformity test");
  TestReport report;
  report.test = "uniformity";
  report.params = {{"samples", table.total},
                   {"significance", significance},
                   {"alpha_n", expected.size()},
                   {"n", table.n}};
  for (const auto& [key, count] : table.counts) {
    if (!expected.count(key)) {
      report.pass = false;
      report.statistic = std::numeric_limits<double>::infinity();
      report.params["unexpected_type"] = key;
      report.p_value = 0.0;
      return report;
    }
  }
  std::vector<std::uint64_t> observed;
  for (const auto& key : expected) {
    auto it = table.counts.find(key);
    observed.push_back(it == table.counts.end() ? 0 : it->second);
  }
  std::vector<double> probs(expected.size(), 1.0 / double(expected.size()));
  GofResult gof = goodness_of_fit(observed, probs, significance);
  report.statistic = gof.statistic;
  report.threshold = gof.threshold;
  report.p_value = gof.p_value;
  report.pass = gof.pass;
  return report;
}

TestReport test_exchangeability_sampler(const PrefixSampler& sampler, int prefix_size,
                                        const std::vector<std::vector<int>>& tuples,
                                        std::uint64_t samples, std::uint64_t seed,
                                        double significance) {
  if (tuples.empty()) throw std::invalid_argument("no index tuples given");
  const size_t arity = tuples.front().size();
  for (const auto& tup : tuples) {
    if (tup.size() != arity) throw std::invalid_argument("index tuples of unequal length");
    std::set<int> seen;
    for (int idx : tup) {
      if (idx < 0 || idx >= prefix_size)
        throw std::invalid_argument("index tuple entry out of prefix range");
      if (!seen.insert(idx).second) throw std::invalid_argument("repeated index in tuple");
    }
  }
  std::map<std::string, size_t> type_col;
  std::vector<std::map<std::string, std::uint64_t>> per_tuple(tuples.size());
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng = Rng::substream(seed, i);
    FinStructure prefix = sampler(rng);
    for (size_t t = 0; t < tuples.size(); ++t) {
      std::string ty = labeled_type(induced_substructure(prefix, tuples[t])).encoding;
      type_col.emplace(ty, type_col.size());
      per_tuple[t][ty]++;
    }
  }
  std::vector<std::vector<std::uint64_t>> table(tuples.size(),
                                                std::vector<std::uint64_t>(type_col.size(), 0));
  for (size_t t = 0; t < tuples.size(); ++t)
    for (const auto& [ty, count] : per_tuple[t]) table[t][type_col.at(ty)] = count;
  TestReport report;
  report.test = "exchangeability";
  report.params = {{"samples", samples},
                   {"significance", significance},
                   {"tuples", tuples},
                   {"prefix_size", prefix_size}};
  if (tuples.size() < 2 || type_col.size() < 2) {
    report.pass = true;  // vacuous
    return report;
  }
  GofResult gof = homogeneity_test(table, significance);
  report.statistic = gof.statistic;
  report.threshold = gof.threshold;
  report.p_value = gof.p_value;
  report.pass = gof.pass;
  return report;
}

TestReport test_exchangeability(const BorelStructure& p, const Measure& m,
                                const std::vector<std::vector<int>>& tuples,
                                std::uint64_t samples, std::uint64_t seed, double significance) {
  int prefix_size = 0;
  for (const auto& tup : tuples)
    for (int idx : tup) prefix_size = std::max(prefix_size, idx + 1);
  auto sampler = [&p, &m, prefix_size](Rng& rng) { return sample_prefix(p, m, prefix_size, rng); };
  TestReport report =
      test_exchangeability_sampler(sampler, prefix_size, tuples, samples, seed, significance);
  report.params["structure"] = p.name;
  report.params["measure"] = m.describe();
  return report;
}

TestReport test_distinguish(const BorelStructure& p, MeasurePtr m, const Weight& w1,
                            const Weight& w2, int n, std::uint64_t samples, std::uint64_t seed,
                            double significance) {
  MeasurePtr m1 = reweight(m, w1);
  MeasurePtr m2 = reweight(m, w2);
  FrequencyTable t1 = estimate_frequencies(p, *m1, n, samples, seed);
  FrequencyTable t2 = estimate_frequencies(p, *m2, n, samples, splitmix64(seed + 1));
  std::map<std::string, size_t> type_col;
  for (const auto& [key, count] : t1.counts) type_col.emplace(key, type_col.size());
  for (const auto& [key, count] : t2.counts) type_col.emplace(key, type_col.size());
  std::vector<std::vector<std::uint64_t>> table(2, std::vector<std::uint64_t>(type_col.size(), 0));
  for (const auto& [key, count] : t1.counts) table[0][type_col.at(key)] = count;
  for (const auto& [key, count] : t2.counts) table[1][type_col.at(key)] = count;
  TestReport report;
  report.test = "distinguish";
  report.params = {{"samples", samples},
                   {"significance", significance},
                   {"structure", p.name},
                   {"n", n},
                   {"w1", weight_to_json(w1)},
                   {"w2", weight_to_json(w2)}};
  if (type_col.size() < 2) {
    report.pass = false;
    report.params["decision"] = "not-distinguishable";
    return report;
  }
  GofResult gof = homogeneity_test(table, significance);
  report.statistic = gof.statistic;
  report.threshold = gof.threshold;
  report.p_value = gof.p_value;
  report.pass = gof.statistic > gof.threshold;  // pass == distinguishable
  report.params["decision"] = report.pass ? "distinguishable" : "not-distinguishable";
  return report;
}

TestReport check_high_homogeneity_sampler(const PrefixSampler& sampler, const std::string& name,
                                          int n, int k, int trials, std::uint64_t seed) {
  // substructures of size k go through unlabeled_type, so k is bounded
  if (k < 0 || k > n || k > kMaxBruteForceSize)
    throw std::invalid_argument("high-homogeneity check needs k <= n and k <= 8");
  TestReport report;
  report.test = "high-homogeneity";
  report.params = {{"structure", name}, {"n", n},           {"k", k},
                   {"trials", trials},  {"seed", seed}};
  // k-subsets of {0..n-1} in lexicographic order
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  int violations = 0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::substream(seed, std::uint64_t(trial));
    FinStructure prefix = sampler(rng);
    TypeId first;
    bool have_first = false;
    for (const auto& subset : subsets) {
      TypeId ty = unlabeled_type(induced_substructure(prefix, subset));
      if (!have_first) {
        first = ty;
        have_first = true;
      } else if (!(ty == first)) {
        ++violations;
        if (!report.params.contains("counterexample")) {
          report.params["counterexample"] = {{"trial", trial}, {"subset", subset}};
        }
        break;
      }
    }
  }
  report.statistic = double(violations);
  report.threshold = 0.0;
  report.p_value = violations == 0 ? 1.0 : 0.0;
  report.pass = violations == 0;
  report.params["violations"] = violations;
  return report;
}

TestReport check_high_homogeneity_sampled(const BorelStructure& p, const Measure& m, int n,
                                          int k, int trials, std::uint64_t seed) {
  if (n > kMaxBruteForceSize)
    throw std::invalid_argument("high-homogeneity check needs n <= 8");
  auto sampler = [&p, &m, n](Rng& rng) { return sample_prefix(p, m, n, rng); };
  TestReport report = check_high_homogeneity_sampler(sampler, p.name, n, k, trials, seed);
  report.params["measure"] = m.describe();
  return report;
}

}  // namespace exchstruct

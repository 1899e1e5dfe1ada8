#pragma once

#include "exchstruct/borel.hpp"
#include "exchstruct/stats.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace exchstruct {

struct FrequencyTable {
  int n = 0;
  std::map<std::string, std::uint64_t> counts;  // labeled TypeId encoding -> count
  std::uint64_t total = 0;
  std::string structure;
  std::string measure;
  std::uint64_t seed = 0;

  void merge(const FrequencyTable& other);
  std::string to_csv() const;  // header "type_id,count"
};

struct TestReport {
  std::string test;
  double statistic = 0.0;
  double threshold = 0.0;
  double p_value = 1.0;
  bool pass = true;
  nlohmann::json params;

  nlohmann::json to_json() const;
};

// Labeled qf-types realized by a reduct on n indices, via brute force over
// all n! orderings; second component is the count alpha_n.
std::pair<std::set<std::string>, std::uint64_t> enumerate_types(ReductKind kind, int n);

// Monte Carlo type frequencies over independent sample_prefix draws. Each
// draw uses substream (seed, i), so the result is identical for the serial
// reference and the OpenMP kernel at any thread count.
FrequencyTable estimate_frequencies(const BorelStructure& p, const Measure& m, int n,
                                    std::uint64_t samples, std::uint64_t seed);
FrequencyTable estimate_frequencies_serial(const BorelStructure& p, const Measure& m, int n,
                                           std::uint64_t samples, std::uint64_t seed);

// Chi-square goodness of fit against the uniform law 1/alpha_n over the
// expected types. Types outside the expected set force a failure.
TestReport test_uniformity(const FrequencyTable& table, const std::set<std::string>& expected,
                           double significance);

using PrefixSampler = std::function<FinStructure(Rng&)>;

// Homogeneity of type frequencies read off at several index tuples of
// common samples. The sampler-injected variant exists so tests can feed a
// deliberately index-biased fixture.
TestReport test_exchangeability_sampler(const PrefixSampler& sampler, int prefix_size,
                                        const std::vector<std::vector<int>>& tuples,
                                        std::uint64_t samples, std::uint64_t seed,
                                        double significance);
TestReport test_exchangeability(const BorelStructure& p, const Measure& m,
                                const std::vector<std::vector<int>>& tuples,
                                std::uint64_t samples, std::uint64_t seed, double significance);

// Two-sample chi-square on type frequencies under reweight(m,W1) vs
// reweight(m,W2); pass means "statistically distinguishable".
TestReport test_distinguish(const BorelStructure& p, MeasurePtr m, const Weight& w1,
                            const Weight& w2, int n, std::uint64_t samples, std::uint64_t seed,
                            double significance);

// Over `trials` sampled prefixes of size n, checks that all C(n,k) induced
// k-substructures are pairwise isomorphic; reports the first counterexample.
TestReport check_high_homogeneity_sampled(const BorelStructure& p, const Measure& m, int n,
                                          int k, int trials, std::uint64_t seed);
// Sampler-injected variant; used for Erdos-Renyi prefixes.
TestReport check_high_homogeneity_sampler(const PrefixSampler& sampler, const std::string& name,
                                          int n, int k, int trials, std::uint64_t seed);

}  // namespace exchstruct

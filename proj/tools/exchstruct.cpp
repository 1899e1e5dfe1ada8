#include "exchstruct/borel.hpp"
#include "exchstruct/lemmas.hpp"
#include "exchstruct/typestats.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace exchstruct;

constexpr std::uint64_t kDefaultSeed = 1729;

std::uint64_t resolve_seed(const std::string& seed_flag) {
  if (seed_flag == "fresh") {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
  }
  if (!seed_flag.empty()) return std::stoull(seed_flag);
  if (const char* env = std::getenv("EXCHSTRUCT_SEED")) return std::stoull(env);
  return kDefaultSeed;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
  }
}

Weight load_weight(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open weight file: " + path);
  nlohmann::json j;
  f >> j;
  return weight_from_json(j);
}

nlohmann::json structure_to_json(const FinStructure& m, const std::string& name,
                                 std::uint64_t seed) {
  nlohmann::json relations = nlohmann::json::object();
  for (size_t r = 0; r < m.sig.relations.size(); ++r) {
    nlohmann::json tuples = nlohmann::json::array();
    for (const auto& t : m.interpretation[r]) tuples.push_back(t);
    relations[m.sig.relations[r].name] = tuples;
  }
  return {{"structure", name}, {"n", m.size}, {"seed", seed}, {"relations", relations}};
}

std::vector<std::vector<int>> parse_tuples(const std::string& text) {
  std::vector<std::vector<int>> tuples;
  std::istringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<int> tup;
    std::istringstream entries(group);
    std::string entry;
    while (std::getline(entries, entry, ',')) tup.push_back(std::stoi(entry));
    if (!tup.empty()) tuples.push_back(std::move(tup));
  }
  return tuples;
}

int emit_report(const TestReport& report, const std::string& out) {
  write_output(out, report.to_json().dump(2));
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-prefix sampler and verifier for exchangeable random structures"};
  app.require_subcommand(1);

  std::string structure = "order", measure_name = "normal";
  std::string weight_path, w1_path, w2_path;
  int n = 3, k = 2, trials = 100, count = 1, workers = 0;
  std::uint64_t samples = 100000;
  std::string seed_flag;
  double significance = 0.001;
  std::string format = "json", out, tuples_flag;
  double edge_p = 0.5;
  int max_n = 4, max_l = 3, tables = 200;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed_flag, "RNG seed (integer, or 'fresh')");
    cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out, "output file (default stdout)");
    cmd->add_option("--workers", workers, "OpenMP thread count for Monte Carlo");
  };

  auto* cmd_enumerate = app.add_subcommand("enumerate", "count labeled qf-types of a reduct");
  cmd_enumerate->add_option("--structure", structure)->required();
  cmd_enumerate->add_option("--n", n)->required();
  add_common(cmd_enumerate);

  auto* cmd_sample = app.add_subcommand("sample", "draw prefixes of the invariant measure");
  cmd_sample->add_option("--structure", structure)->required();
  cmd_sample->add_option("--measure", measure_name);
  cmd_sample->add_option("--weight,-w", weight_path, "weight JSON to reweight the measure");
  cmd_sample->add_option("--n", n)->required();
  cmd_sample->add_option("--count", count, "number of samples to emit");
  cmd_sample->add_option("--p", edge_p, "edge probability (er structure only)");
  add_common(cmd_sample);

  auto* cmd_uniq = app.add_subcommand("test-uniqueness",
                                      "chi-square uniformity of type frequencies vs 1/alpha_n");
  cmd_uniq->add_option("--structure", structure)->required();
  cmd_uniq->add_option("--measure", measure_name);
  cmd_uniq->add_option("--weight,-w", weight_path);
  cmd_uniq->add_option("--n", n)->required();
  cmd_uniq->add_option("--samples", samples);
  cmd_uniq->add_option("--significance", significance);
  add_common(cmd_uniq);

  auto* cmd_inv = app.add_subcommand("test-invariance",
                                     "chi-square homogeneity of type frequencies across index tuples");
  cmd_inv->add_option("--structure", structure)->required();
  cmd_inv->add_option("--measure", measure_name);
  cmd_inv->add_option("--weight,-w", weight_path);
  cmd_inv->add_option("--tuples", tuples_flag, "semicolon-separated index tuples, e.g. 0,1,2;2,0,1;5,1,3");
  cmd_inv->add_option("--samples", samples);
  cmd_inv->add_option("--significance", significance);
  add_common(cmd_inv);

  auto* cmd_dist = app.add_subcommand("distinguish",
                                      "two-sample test of reweighted measures; pass = distinguishable");
  cmd_dist->add_option("--structure", structure)->required();
  cmd_dist->add_option("--measure", measure_name);
  cmd_dist->add_option("--w1", w1_path)->required();
  cmd_dist->add_option("--w2", w2_path)->required();
  cmd_dist->add_option("--n", n);
  cmd_dist->add_option("--samples", samples);
  cmd_dist->add_option("--significance", significance);
  add_common(cmd_dist);

  auto* cmd_hh = app.add_subcommand("check-hh",
                                    "sampled high-homogeneity check on induced substructures");
  cmd_hh->add_option("--structure", structure)->required();
  cmd_hh->add_option("--measure", measure_name);
  cmd_hh->add_option("--n", n);
  cmd_hh->add_option("--k", k)->required();
  cmd_hh->add_option("--trials", trials);
  cmd_hh->add_option("--p", edge_p, "edge probability (er structure only)");
  add_common(cmd_hh);

  auto* cmd_lem = app.add_subcommand("verify-lemmas", "exact polynomial identity suite");
  cmd_lem->add_option("--max-n", max_n);
  cmd_lem->add_option("--max-l", max_l);
  cmd_lem->add_option("--tables", tables, "random tables per identity");
  add_common(cmd_lem);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#endif
    const std::uint64_t seed = resolve_seed(seed_flag);

    if (cmd_enumerate->parsed()) {
      auto [types, alpha] = enumerate_types(reduct_from_name(structure), n);
      if (format == "csv") {
        std::ostringstream os;
        os << "structure,n,alpha_n\n" << structure << ',' << n << ',' << alpha << '\n';
        write_output(out, os.str());
      } else {
        nlohmann::json j = {{"structure", structure}, {"n", n}, {"alpha_n", alpha}};
        write_output(out, j.dump(2));
      }
      return 0;
    }

    if (cmd_sample->parsed()) {
      if (structure == "er") {
        std::ostringstream os;
        for (int i = 0; i < count; ++i) {
          Rng rng = Rng::substream(seed, std::uint64_t(i));
          os << structure_to_json(er_sample(n, edge_p, rng), "er", seed).dump() << '\n';
        }
        write_output(out, os.str());
        return 0;
      }
      MeasurePtr m = measure_from_name(measure_name);
      if (!weight_path.empty()) m = reweight(m, load_weight(weight_path));
      std::ostringstream os;
      if (format == "csv") {
        // CSV of labeled TypeId counts over the batch
        BorelStructure p = builtin(structure);
        FrequencyTable table = estimate_frequencies(p, *m, n, std::uint64_t(count), seed);
        write_output(out, table.to_csv());
        return 0;
      }
      BorelStructure p = builtin(structure);
      for (int i = 0; i < count; ++i) {
        Rng rng = Rng::substream(seed, std::uint64_t(i));
        os << structure_to_json(sample_prefix(p, *m, n, rng), structure, seed).dump() << '\n';
      }
      write_output(out, os.str());
      return 0;
    }

    if (cmd_uniq->parsed()) {
      MeasurePtr m = measure_from_name(measure_name);
      if (!weight_path.empty()) m = reweight(m, load_weight(weight_path));
      auto [types, alpha] = enumerate_types(reduct_from_name(structure), n);
      BorelStructure p = builtin(structure);
      FrequencyTable table = estimate_frequencies(p, *m, n, samples, seed);
      TestReport report = test_uniformity(table, types, significance);
      report.params["structure"] = structure;
      report.params["seed"] = seed;
      return emit_report(report, out);
    }

    if (cmd_inv->parsed()) {
      MeasurePtr m = measure_from_name(measure_name);
      if (!weight_path.empty()) m = reweight(m, load_weight(weight_path));
      std::vector<std::vector<int>> tuples =
          tuples_flag.empty() ? std::vector<std::vector<int>>{{0, 1, 2}, {2, 0, 1}, {5, 1, 3}}
                              : parse_tuples(tuples_flag);
      TestReport report =
          test_exchangeability(builtin(structure), *m, tuples, samples, seed, significance);
      report.params["seed"] = seed;
      return emit_report(report, out);
    }

    if (cmd_dist->parsed()) {
      TestReport report = test_distinguish(builtin(structure), measure_from_name(measure_name),
                                           load_weight(w1_path), load_weight(w2_path), n, samples,
                                           seed, significance);
      report.params["seed"] = seed;
      return emit_report(report, out);
    }

    if (cmd_hh->parsed()) {
      TestReport report;
      if (structure == "er") {
        auto sampler = [n, edge_p](Rng& rng) { return er_sample(n, edge_p, rng); };
        report = check_high_homogeneity_sampler(sampler, "er", n, k, trials, seed);
        report.params["p"] = edge_p;
      } else {
        report = check_high_homogeneity_sampled(builtin(structure),
                                                *measure_from_name(measure_name), n, k, trials,
                                                seed);
      }
      return emit_report(report, out);
    }

    if (cmd_lem->parsed()) {
      nlohmann::json report = verify_lemmas(max_n, max_l, tables, seed);
      write_output(out, report.dump(2));
      return report.at("all_pass").get<bool>() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

/*
 * Copyright 2026 The oralarg Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance suite: one PASS/FAIL line per primary criterion. Exits non-zero
// when any criterion fails. The real-corpus check runs only when
// ORALARG_REAL_CONFIG names a run configuration for a real corpus.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "oralarg/evaluation.hpp"
#include "oralarg/insights.hpp"
#include "oralarg/parallel.hpp"
#include "oralarg/synth.hpp"
#include "test_support.hpp"

namespace oralarg {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome NGramEnumeration() {
  const auto start = Clock::now();
  const Normalizer raw({}, {}, false);
  const TokenList phrase = raw.normalize(std::string_view("a b c d e f"));
  const NGramCounts fifteen = enumerate_ngrams(phrase, 1, 3);
  bool ok = fifteen.size() == 15;
  std::string detail = "6-token phrase -> " + std::to_string(fifteen.size()) + " n-grams";

  std::mt19937_64 rng(1);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    TokenList t;
    const std::size_t len = rng() % 30;
    for (std::size_t i = 0; i < len; ++i) t.tokens.push_back(alphabet[rng() % alphabet.size()]);
    const NGramCounts got = enumerate_ngrams(t, 1, 5);
    for (int n = 1; n <= 5; ++n) {
      long windows = 0;
      for (const auto& [g, c] : got) {
        if (std::count(g.begin(), g.end(), ' ') == n - 1) windows += c;
      }
      if (windows != std::max<long>(0, static_cast<long>(len) - n + 1)) ++bad;
    }
    if (got != testing::OracleNGrams(t.tokens, 1, 5)) ++bad;
  }
  const double secs = Seconds(start);
  ok = ok && bad == 0 && secs < 1.0;
  detail += ", 1000 random lists with " + std::to_string(bad) + " mismatches, " +
            Format("%.3f s", secs);
  return {ok, detail};
}

Outcome NormalizationEquivalence() {
  const Normalizer n;
  const TokenList a = n.normalize(std::string_view("I'd like to hear the answer"));
  const TokenList b = n.normalize(std::string_view("But I would like to hear your answer"));
  // raw_word_count differs by construction (6 vs 8 words); the tokens are
  // what must coincide.
  std::string shown;
  for (const auto& t : a.tokens) shown += (shown.empty() ? "" : " ") + t;
  return {a.tokens == b.tokens && !a.tokens.empty(),
          "tokens [" + shown + "], raw word counts " + std::to_string(a.raw_word_count) + " and " +
              std::to_string(b.raw_word_count)};
}

Outcome FeatureOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(7);
  const std::vector<std::string> js = {"scalia", "breyer", "alito", "kennedy"};
  std::vector<Transcript> ts;
  std::vector<CaseOutcome> os;
  for (int i = 0; i < 500; ++i) {
    const std::string d = "t" + std::to_string(1000 + i);
    ts.push_back(testing::RandomTranscript(rng, d, js, 20));
    std::map<std::string, Side> votes;
    for (const std::string& j : js) votes[j] = rng() % 2 ? Side::kPetitioner : Side::kRespondent;
    os.push_back(testing::MakeOutcome(d, votes));
  }
  const Corpus corpus = build_corpus(ts, os);
  const Normalizer n;
  const LexiconScorer s;
  const FeatureStore store = FeatureStore::Build(corpus, n, s);
  int cells = 0;
  int bad = 0;
  std::string first_failure;
  for (const CaseRecord& c : corpus.cases()) {
    for (const std::string& j : js) {
      for (const Side side : {Side::kPetitioner, Side::kRespondent}) {
        const CellFeatures* got = store.cell(c.docket(), j, side);
        const auto want = testing::ComputeOracleCell(c.transcript, j, side, n, s, 1, kMaxNGram);
        std::string why;
        ++cells;
        if (got == nullptr) {
          // A justice who never spoke must have an all-empty oracle cell.
          if (want.num_questions != 0) {
            ++bad;
            why = "missing cell";
          }
        } else if (!testing::CellMatchesOracle(*got, want, &why)) {
          ++bad;
        }
        if (!why.empty() && first_failure.empty()) first_failure = c.docket() + " " + j + ": " + why;
      }
    }
  }
  const double secs = Seconds(start);
  std::string detail = std::to_string(cells) + " cells, " + std::to_string(bad) +
                       " mismatches, " + Format("%.2f s", secs);
  if (!first_failure.empty()) detail += " (first: " + first_failure + ")";
  return {bad == 0 && secs < 30.0, detail};
}

Outcome SolverCorrectness() {
  std::mt19937_64 rng(2026);
  constexpr int kInstances = 25;
  std::vector<testing::DenseInstance> instances;
  for (int i = 0; i < kInstances; ++i) instances.push_back(testing::RandomDenseInstance(rng, 20, 5));

  auto train_all = [&](int workers) {
    std::vector<LinearModel> models(kInstances);
    std::vector<TrainTrace> traces(kInstances);
    parallel_for(kInstances, workers, [&](std::size_t i) {
      SvmConfig cfg;
      cfg.C = instances[i].C;
      cfg.tolerance = 1e-6;
      cfg.max_epochs = 100000;
      cfg.seed = i;
      const auto rows = testing::ToRows(instances[i]);
      models[i] = train_svm(rows, cfg, 5, 0, &traces[i]);
    });
    return std::make_pair(models, traces);
  };
  const auto [models, traces] = train_all(1);
  const auto again = train_all(1).first;
  const auto pooled = train_all(4).first;

  double worst_gap = 0.0;
  int within = 0;
  int dual_monotone = 0;
  int primal_monotone = 0;
  int deterministic = 0;
  for (int i = 0; i < kInstances; ++i) {
    const auto rows = testing::ToRows(instances[i]);
    const double got = objective_value(models[i], rows);
    const auto oracle = testing::SolveQpOracle(instances[i]);
    const double gap = (got - oracle.primal) / oracle.primal;
    worst_gap = std::max(worst_gap, gap);
    within += gap <= 0.01 && got >= oracle.lower_bound - 1e-6 ? 1 : 0;

    const auto& d = traces[i].dual_objective;
    const auto& p = traces[i].primal_objective;
    bool dm = true;
    bool pm = true;
    for (std::size_t e = 1; e < d.size(); ++e) {
      dm = dm && d[e] <= d[e - 1] + 1e-9 * (1.0 + std::abs(d[e - 1]));
      pm = pm && p[e] <= p[e - 1] + 1e-9 * (1.0 + std::abs(p[e - 1]));
    }
    dual_monotone += dm ? 1 : 0;
    primal_monotone += pm ? 1 : 0;
    deterministic += models[i].weights == again[i].weights && models[i].bias == again[i].bias &&
                             models[i].weights == pooled[i].weights &&
                             models[i].bias == pooled[i].bias
                         ? 1
                         : 0;
  }
  // The optimized objective is the dual; the primal is reported alongside.
  const bool ok = within == kInstances && dual_monotone == kInstances && deterministic == kInstances;
  std::string detail = std::to_string(within) + "/25 within 1% of QP oracle (worst gap " +
                       Format("%.2e", worst_gap) + "), dual non-increasing " +
                       std::to_string(dual_monotone) + "/25, primal non-increasing " +
                       std::to_string(primal_monotone) + "/25, deterministic " +
                       std::to_string(deterministic) + "/25";
  return {ok, detail};
}

struct Pipeline {
  Corpus corpus;
  Normalizer normalizer;
  LexiconScorer scorer;
  FeatureStore store;

  explicit Pipeline(SynthCorpus s)
      : corpus(build_corpus(std::move(s.transcripts), std::move(s.outcomes))),
        store(FeatureStore::Build(corpus, normalizer, scorer)) {}
};

std::vector<std::string> AllDockets(const Corpus& c) {
  std::vector<std::string> out;
  for (const auto& cr : c.cases()) out.push_back(cr.docket());
  return out;
}

Outcome PlantedSignal() {
  const auto start = Clock::now();
  SynthOptions o;
  o.cases = 60;
  o.plant = Plant::kNegativeNGram;
  Pipeline p(generate_synthetic(o));
  const auto js = modeled_justices(p.corpus);
  const FoldPlan plan = kfold_split(AllDockets(p.corpus), 10, 0);
  const EvalReport report = cross_validate(p.store, js, plan, {});
  int ranked_first = 0;
  for (const std::string& j : js) {
    const JusticeModel m = train_justice_model(p.store, j, {});
    const auto neg = top_predictive_ngrams(m.model, m.space, 1, NGramSign::kNegative);
    ranked_first += !neg.empty() && neg[0].ngram == kPlantedToken ? 1 : 0;
  }
  const double secs = Seconds(start);
  const bool ok = report.accuracy >= 0.95 && !report.degenerate() &&
                  ranked_first == static_cast<int>(js.size()) && secs < 120.0;
  return {ok, "accuracy " + Format("%.4f", report.accuracy) + ", planted n-gram #1 negative for " +
                  std::to_string(ranked_first) + "/" + std::to_string(js.size()) +
                  " justices, " + Format("%.1f s", secs)};
}

Outcome LeakageCanary() {
  SynthOptions o;
  o.cases = 200;
  o.seed = 11;
  o.randomize_labels = true;
  Pipeline p(generate_synthetic(o));
  const auto js = modeled_justices(p.corpus);
  const FoldPlan plan = kfold_split(AllDockets(p.corpus), 10, 0);
  EvalOptions opts;
  opts.workers = 4;
  std::vector<std::pair<std::string, double>> runs;
  runs.emplace_back("full", cross_validate(p.store, js, plan, opts).accuracy);
  for (const CategorySet set : single_category_sets()) {
    opts.categories = set;
    runs.emplace_back(set.name(), cross_validate(p.store, js, plan, opts).accuracy);
  }
  bool ok = true;
  std::string detail;
  for (const auto& [name, acc] : runs) {
    ok = ok && acc >= 0.40 && acc <= 0.60;
    detail += (detail.empty() ? "" : ", ") + name + " " + Format("%.4f", acc);
  }
  return {ok, detail};
}

Outcome WeightShares() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  const FeatureSpace space({"a", "b", "c", "d"});
  double worst_sum = 0.0;
  double worst_scale = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    LinearModel m;
    for (int c = 0; c < space.total_columns(); ++c) {
      m.weights.push_back(rng() % 4 == 0 ? 0.0 : normal(rng));
    }
    m.weights[rng() % m.weights.size()] = 1.0;
    const CategoryWeights w = category_weight_shares(m, space);
    double sum = 0.0;
    for (const double s : w.share) sum += s;
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    LinearModel doubled = m;
    for (double& x : doubled.weights) x *= 2.0;
    const CategoryWeights w2 = category_weight_shares(doubled, space);
    for (int c = 0; c < kNumCategories; ++c) {
      worst_scale = std::max(worst_scale, std::abs(w.share[c] - w2.share[c]));
    }
  }
  LinearModel party;
  party.weights.assign(space.total_columns(), 0.0);
  party.weights[kPartyColumn] = 0.7;
  const double party_share = category_weight_shares(party, space)[Category::kParty];
  const bool ok = worst_sum <= 1e-9 && worst_scale <= 1e-12 && party_share == 1.0;
  return {ok, "max |sum-1| " + Format("%.1e", worst_sum) + ", max rescale drift " +
                  Format("%.1e", worst_scale) + ", party-only share " +
                  Format("%.4f", party_share)};
}

Outcome PairingBaseline() {
  const std::vector<Side> fixture = {Side::kPetitioner, Side::kRespondent, Side::kPetitioner,
                                     Side::kPetitioner, Side::kRespondent};
  const double fixture_rate = baseline_rate(fixture);
  bool ok = fixture_rate == 0.6;

  SynthOptions o;
  o.cases = 80;
  o.seed = 3;
  Pipeline p(generate_synthetic(o));
  int pairs = 0;
  int bad_pairs = 0;
  int bad_baselines = 0;
  for (const std::string& j : modeled_justices(p.corpus)) {
    const FeatureSpace space = build_feature_space(p.store, j);
    const auto rows = assemble_rows(p.store, j, space);
    if (rows.size() % 2 != 0) ++bad_pairs;
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
      ++pairs;
      const bool good = rows[i].docket == rows[i + 1].docket &&
                        rows[i].side == Side::kPetitioner &&
                        rows[i + 1].side == Side::kRespondent &&
                        rows[i].label == -rows[i + 1].label && std::abs(rows[i].label) == 1;
      bad_pairs += good ? 0 : 1;
    }
    int pet = 0;
    int total = 0;
    for (const auto& c : p.corpus.cases()) {
      const auto v = c.vote_of(j);
      if (!v || !c.usable_for_matrix) continue;
      ++total;
      pet += *v == Side::kPetitioner ? 1 : 0;
    }
    if (baseline_rate(rows) != static_cast<double>(pet) / total) ++bad_baselines;
  }
  ok = ok && bad_pairs == 0 && bad_baselines == 0 && pairs > 0;
  return {ok, "fixture 3/5 -> " + Format("%.4f", fixture_rate) + ", " + std::to_string(pairs) +
                  " mirrored pairs with " + std::to_string(bad_pairs) + " label faults, " +
                  std::to_string(bad_baselines) + " baseline mismatches"};
}

// ---------------------------------------------------------------------------
// Optional real-corpus integration check, driven through the CLI.

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Cell of the "All" row for `column` in a TSV with a header line.
double AllRowValue(const std::string& tsv, const std::string& column) {
  std::istringstream in(tsv);
  std::string line;
  std::getline(in, line);
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, '\t')) out.push_back(cell);
    return out;
  };
  const auto header = split(line);
  const auto col = std::find(header.begin(), header.end(), column) - header.begin();
  while (std::getline(in, line)) {
    const auto cells = split(line);
    if (!cells.empty() && cells[0] == "All" && col < static_cast<long>(cells.size())) {
      return std::stod(cells[col]);
    }
  }
  throw std::runtime_error("no All row for column " + column);
}

Outcome RealCorpus(const std::string& config) {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "oralarg_acceptance_real";
  fs::remove_all(out);
  std::ostringstream sink;
  std::ostringstream err;
  const std::vector<std::vector<std::string>> runs = {
      {"evaluate"}, {"ablate"}, {"train"}, {"insights", "--top-k", "50"}};
  for (auto args : runs) {
    args.insert(args.end(), {"--config", config, "--out", out.string()});
    const int code = cli::run_command(args, sink, err);
    if (code != cli::kExitOk && !(code == cli::kExitDegenerate && args[0] == "evaluate")) {
      return {false, args[0] + " exited " + std::to_string(code) + ": " + err.str()};
    }
  }
  const std::string eval = Slurp(out / "eval_report.tsv");
  const double accuracy = AllRowValue(eval, "accuracy");
  const double baseline = AllRowValue(eval, "baseline");
  const double ngrams_only =
      AllRowValue(Slurp(out / "ablation_single.tsv"), CategorySet::Of({Category::kNGrams}).name());
  const std::string shares = Slurp(out / "weight_shares.tsv");
  const std::map<std::string, double> target = {
      {"counts", 0.156}, {"chronology", 0.048}, {"sentiment", 0.073}, {"ngrams", 0.604},
      {"party", 0.118}};
  bool shares_ok = true;
  std::string share_detail;
  for (const auto& [name, want] : target) {
    const double got = AllRowValue(shares, name);
    shares_ok = shares_ok && std::abs(got - want) <= 0.10;
    share_detail += " " + name + "=" + Format("%.3f", got);
  }
  const auto insights = nlohmann::json::parse(Slurp(out / "insights.json"));
  int with_well = 0;
  int justices = 0;
  for (const auto& entry : insights.at("ngrams")) {
    ++justices;
    bool found = false;
    for (const auto& g : entry.at("to_party").at("negative")) {
      found = found || g.at("ngram") == "well";
    }
    with_well += found ? 1 : 0;
  }
  const bool ok = std::abs(accuracy - 0.732) <= 0.05 && std::abs(baseline - 0.607) <= 0.01 &&
                  std::abs(ngrams_only - 0.644) <= 0.05 && shares_ok && justices > 0 &&
                  with_well == justices;
  return {ok, "accuracy " + Format("%.4f", accuracy) + ", baseline " + Format("%.4f", baseline) +
                  ", ngrams-only " + Format("%.4f", ngrams_only) + ", shares" + share_detail +
                  ", \"well\" in top-50 negative for " + std::to_string(with_well) + "/" +
                  std::to_string(justices)};
}

}  // namespace
}  // namespace oralarg

int main() {
  using oralarg::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"ngram-enumeration", oralarg::NGramEnumeration},
      {"normalization-equivalence", oralarg::NormalizationEquivalence},
      {"feature-oracle", oralarg::FeatureOracle},
      {"solver-correctness", oralarg::SolverCorrectness},
      {"planted-signal-recovery", oralarg::PlantedSignal},
      {"leakage-canary", oralarg::LeakageCanary},
      {"weight-shares", oralarg::WeightShares},
      {"pairing-baseline", oralarg::PairingBaseline},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    Outcome r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += r.pass ? 0 : 1;
    std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  const char* real = std::getenv("ORALARG_REAL_CONFIG");
  if (real == nullptr || *real == '\0') {
    std::printf("SKIP real-corpus: set ORALARG_REAL_CONFIG to a run configuration\n");
  } else {
    Outcome r;
    try {
      r = oralarg::RealCorpus(real);
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += r.pass ? 0 : 1;
    std::printf("%s real-corpus: %s\n", r.pass ? "PASS" : "FAIL", r.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}

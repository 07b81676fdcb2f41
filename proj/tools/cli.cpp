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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "oralarg/evaluation.hpp"
#include "oralarg/features.hpp"
#include "oralarg/ingest.hpp"
#include "oralarg/matrix.hpp"
#include "oralarg/parallel.hpp"
#include "oralarg/synth.hpp"
#include "oralarg/text.hpp"

namespace oralarg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for bad configuration or unreadable inputs (exit 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed: " + path.string());
}

std::string Resolve(const std::string& base, const std::string& p) {
  if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Flag values; unset fields leave the configuration alone.
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> transcripts;
  std::optional<std::string> outcomes;
  std::optional<std::string> sentiment;
  std::optional<std::string> out;
  std::optional<int> ngram_min;
  std::optional<int> ngram_max;
  std::optional<double> C;
  std::vector<double> c_sweep;
  std::optional<double> tol;
  std::optional<int> max_epochs;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::vector<std::string> justices;
  std::optional<int> workers;
  bool global_vocab = false;
  std::optional<int> top_k;
  std::optional<std::string> rank_by;
};

void AddCommonFlags(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "Run configuration JSON");
  app.add_option("--transcripts", o.transcripts, "Directory of transcript JSON files");
  app.add_option("--outcomes", o.outcomes, "Outcomes CSV");
  app.add_option("--sentiment", o.sentiment, "Sentiment sidecar CSV");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--ngram-min", o.ngram_min, "Smallest n-gram length");
  app.add_option("--ngram-max", o.ngram_max, "Largest n-gram length");
  app.add_option("--C", o.C, "SVM regularization constant");
  app.add_option("--C-sweep", o.c_sweep, "Evaluate each listed C")->delimiter(',');
  app.add_option("--tol", o.tol, "Solver tolerance");
  app.add_option("--max-epochs", o.max_epochs, "Solver epoch limit");
  app.add_option("--seed", o.seed, "Seed for folds and solver");
  app.add_option("--k", o.k, "Number of folds");
  app.add_option("--justices", o.justices, "Justice ids to model")->delimiter(',');
  app.add_option("--workers", o.workers, "Worker threads");
  app.add_flag("--global-vocab", o.global_vocab, "Fit vocabulary on all cases");
  app.add_option("--top-k", o.top_k, "N-grams listed per sign");
  app.add_option("--rank-by", o.rank_by, "weight or impact");
}

RunConfig ResolveConfig(const Overrides& o) {
  RunConfig cfg;
  std::optional<std::string> path = o.config;
  if (!path) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') path = env;
  }
  if (path) cfg = RunConfig::Load(*path);
  if (o.transcripts) cfg.transcripts = *o.transcripts;
  if (o.outcomes) cfg.outcomes = *o.outcomes;
  if (o.sentiment) cfg.sentiment = *o.sentiment;
  if (o.out) cfg.out = *o.out;
  if (o.ngram_min) cfg.ngram_min = *o.ngram_min;
  if (o.ngram_max) cfg.ngram_max = *o.ngram_max;
  if (o.C) cfg.svm.C = *o.C;
  if (!o.c_sweep.empty()) cfg.c_sweep = o.c_sweep;
  if (o.tol) cfg.svm.tolerance = *o.tol;
  if (o.max_epochs) cfg.svm.max_epochs = *o.max_epochs;
  if (o.seed) cfg.seed = *o.seed;
  if (o.k) cfg.k = *o.k;
  if (!o.justices.empty()) cfg.justices = o.justices;
  if (o.workers) cfg.workers = *o.workers;
  if (o.global_vocab) cfg.global_vocab = true;
  if (o.top_k) cfg.top_k = *o.top_k;
  if (o.rank_by) {
    const auto r = parse_rank_by(*o.rank_by);
    if (!r) throw ConfigError("--rank-by must be weight or impact, got '" + *o.rank_by + "'");
    cfg.rank_by = *r;
  }
  cfg.svm.seed = cfg.seed;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

void RequireInputs(const RunConfig& cfg) {
  if (cfg.transcripts.empty()) throw ConfigError("no transcripts directory configured");
  if (cfg.outcomes.empty()) throw ConfigError("no outcomes file configured");
  if (!fs::is_directory(cfg.transcripts)) {
    throw ConfigError("transcripts directory not found: " + cfg.transcripts);
  }
  if (!fs::is_regular_file(cfg.outcomes)) {
    throw ConfigError("outcomes file not found: " + cfg.outcomes);
  }
  for (const std::string* p : {&cfg.sentiment, &cfg.stopwords, &cfg.valence,
                               &cfg.stem_exceptions, &cfg.aliases}) {
    if (!p->empty() && !fs::is_regular_file(*p)) throw ConfigError("file not found: " + *p);
  }
}

// Everything derived from the inputs. Heap-allocated because the feature
// store points into the corpus.
struct Pipeline {
  JusticeAliases aliases;
  Corpus corpus;
  std::vector<std::string> warnings;
  Normalizer normalizer;
  std::unique_ptr<LexiconScorer> scorer;
  std::optional<SentimentSidecar> sidecar;
  FeatureStore store;
};

std::unique_ptr<Pipeline> LoadCorpus(const RunConfig& cfg) {
  RequireInputs(cfg);
  auto p = std::make_unique<Pipeline>();
  p->aliases = default_justice_aliases();
  if (!cfg.aliases.empty()) p->aliases.add_from_text(ReadFile(cfg.aliases));

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(cfg.transcripts)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Transcript> transcripts;
  for (const fs::path& f : files) {
    try {
      transcripts.push_back(parse_transcript(ReadFile(f.string())));
    } catch (const ParseError& e) {
      throw ConfigError(f.string() + ": " + e.what());
    } catch (const SchemaError& e) {
      throw ConfigError(f.string() + ": " + e.what());
    }
  }
  OutcomeTable table;
  try {
    table = parse_outcomes(ReadFile(cfg.outcomes), p->aliases);
  } catch (const std::runtime_error& e) {
    throw ConfigError(cfg.outcomes + ": " + e.what());
  }
  p->warnings = table.warnings;
  p->corpus = build_corpus(std::move(transcripts), std::move(table.outcomes), p->aliases);
  for (const std::string& w : p->corpus.report().warnings) p->warnings.push_back(w);
  return p;
}

void BuildFeatures(Pipeline& p, const RunConfig& cfg) {
  std::vector<std::string> stops;
  if (cfg.stopwords.empty()) {
    for (const std::string_view w : default_stop_words()) stops.emplace_back(w);
  } else {
    stops = load_word_list(cfg.stopwords);
  }
  StemExceptions exceptions;
  if (!cfg.stem_exceptions.empty()) {
    exceptions = StemExceptions::Parse(ReadFile(cfg.stem_exceptions));
  }
  p.normalizer = Normalizer(std::move(stops), std::move(exceptions));
  p.scorer = std::make_unique<LexiconScorer>(
      cfg.valence.empty() ? LexiconScorer() : LexiconScorer::FromFile(cfg.valence));
  if (!cfg.sentiment.empty()) p.sidecar = SentimentSidecar::Load(cfg.sentiment);
  FeatureOptions options;
  options.n_min = cfg.ngram_min;
  options.n_max = cfg.ngram_max;
  options.workers = cfg.workers;
  p.store = FeatureStore::Build(p.corpus, p.normalizer, *p.scorer,
                                p.sidecar ? &*p.sidecar : nullptr, options);
}

std::vector<std::string> SelectJustices(const Pipeline& p, const RunConfig& cfg) {
  if (cfg.justices.empty()) return modeled_justices(p.corpus);
  std::vector<std::string> out;
  const std::vector<std::string> known = p.corpus.justices();
  for (const std::string& raw : cfg.justices) {
    const std::string id = p.aliases.canonical(raw);
    if (!std::binary_search(known.begin(), known.end(), id)) {
      throw ConfigError("unknown justice '" + raw + "'");
    }
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

EvalOptions MakeEvalOptions(const RunConfig& cfg) {
  EvalOptions options;
  options.svm = cfg.svm;
  options.global_vocab = cfg.global_vocab;
  options.workers = cfg.workers;
  return options;
}

FoldPlan MakePlan(const Pipeline& p, const RunConfig& cfg) {
  std::vector<std::string> dockets;
  for (const CaseRecord& c : p.corpus.cases()) {
    if (c.usable_for_matrix && !c.outcome.votes.empty()) dockets.push_back(c.docket());
  }
  try {
    return kfold_split(std::move(dockets), cfg.k, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void PrintWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
}

fs::path OutDir(const RunConfig& cfg) { return fs::path(cfg.out); }

// ---------------------------------------------------------------------------
// Subcommands

int RunIngest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = LoadCorpus(cfg);
  PrintWarnings(p->warnings, err);
  const JoinReport& report = p->corpus.report();
  WriteFile(OutDir(cfg) / "join_report.json", report.to_json());
  out << "matched " << report.matched << " cases; " << report.orphan_transcripts.size()
      << " orphan transcripts; " << report.orphan_outcomes.size() << " orphan outcomes; "
      << report.excluded.size() << " excluded\n";
  return report.clean() ? kExitOk : kExitDegenerate;
}

int RunStats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto p = LoadCorpus(cfg);
  PrintWarnings(p->warnings, err);
  BuildFeatures(*p, cfg);
  DescriptiveOptions options;
  options.n_min = cfg.ngram_min;
  options.n_max = cfg.ngram_max;
  const DescriptiveStats stats = descriptive_stats_report(
      p->corpus, p->normalizer, *p->scorer, p->sidecar ? &*p->sidecar : nullptr, options);
  WriteFile(OutDir(cfg) / "descriptive_stats.tsv", stats.to_tsv());
  WriteFile(OutDir(cfg) / "descriptive_stats.json", stats.to_json());
  out << "descriptive statistics for " << stats.justices.size() << " justices\n";
  return kExitOk;
}

std::vector<JusticeModel> TrainAll(const Pipeline& p, const RunConfig& cfg,
                                   const std::vector<std::string>& justices) {
  std::vector<JusticeModel> models(justices.size());
  const EvalOptions options = MakeEvalOptions(cfg);
  parallel_for(justices.size(), cfg.workers, [&](std::size_t i) {
    models[i] = train_justice_model(p.store, justices[i], options);
  });
  return models;
}

std::string RowsSidecar(const std::vector<LabeledRow>& rows) {
  std::string s = "docket\tside\tlabel\n";
  for (const LabeledRow& r : rows) {
    s += r.docket + "\t" + std::string(to_string(r.side)) + "\t" + (r.label > 0 ? "+1" : "-1") +
         "\n";
  }
  return s;
}

int RunTrain(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto p = LoadCorpus(cfg);
  PrintWarnings(p->warnings, err);
  BuildFeatures(*p, cfg);
  const std::vector<std::string> justices = SelectJustices(*p, cfg);
  const std::vector<JusticeModel> models = TrainAll(*p, cfg, justices);
  const fs::path dir = OutDir(cfg);
  for (const JusticeModel& m : models) {
    WriteFile(dir / "models" / (m.justice + ".model.json"), m.model.to_json());
    WriteFile(dir / "models" / (m.justice + ".space.json"), m.space.to_json());
    WriteFile(dir / "matrices" / (m.justice + ".svm"), write_sparse_matrix(m.rows));
    WriteFile(dir / "matrices" / (m.justice + ".rows.tsv"), RowsSidecar(m.rows));
  }
  WriteFile(dir / "weight_shares.tsv", weight_share_table(models).to_tsv());
  out << "trained " << models.size() << " justice models\n";
  return kExitOk;
}

int RunEvaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto p = LoadCorpus(cfg);
  PrintWarnings(p->warnings, err);
  BuildFeatures(*p, cfg);
  const std::vector<std::string> justices = SelectJustices(*p, cfg);
  const FoldPlan plan = MakePlan(*p, cfg);
  EvalOptions options = MakeEvalOptions(cfg);
  const fs::path dir = OutDir(cfg);

  const EvalReport report = cross_validate(p->store, justices, plan, options);
  WriteFile(dir / "eval_report.tsv", report.to_tsv());
  WriteFile(dir / "eval_report.json", report.to_json());
  bool degenerate = report.degenerate();
  PrintWarnings(report.warnings, err);

  if (!cfg.c_sweep.empty()) {
    std::string sweep = "C\ttotal_arguments\tcorrect\tbaseline\taccuracy\n";
    for (const double c : cfg.c_sweep) {
      options.svm.C = c;
      const EvalReport r = cross_validate(p->store, justices, plan, options);
      degenerate |= r.degenerate();
      sweep += format_double(c) + "\t" + std::to_string(r.total) + "\t" +
               std::to_string(r.correct) + "\t" + Fixed(r.baseline) + "\t" + Fixed(r.accuracy) +
               "\n";
    }
    WriteFile(dir / "c_sweep.tsv", sweep);
  }
  out << "accuracy " << Fixed(report.accuracy) << " baseline " << Fixed(report.baseline)
      << " over " << report.total << " votes\n";
  return degenerate ? kExitDegenerate : kExitOk;
}

int RunAblate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto p = LoadCorpus(cfg);
  PrintWarnings(p->warnings, err);
  BuildFeatures(*p, cfg);
  const std::vector<std::string> justices = SelectJustices(*p, cfg);
  const FoldPlan plan = MakePlan(*p, cfg);
  const AblationTable table = ablation_suite(p->store, justices, plan, MakeEvalOptions(cfg));
  const fs::path dir = OutDir(cfg);
  WriteFile(dir / "ablation_single.tsv", table.single_tsv());
  WriteFile(dir / "ablation_cumulative.tsv", table.cumulative_tsv());
  WriteFile(dir / "ablation.json", table.to_json());
  bool degenerate = false;
  for (const auto& runs : {&table.single, &table.cumulative}) {
    for (const auto& [set, report] : *runs) {
      degenerate |= report.degenerate();
      out << set.name() << "\t" << Fixed(report.accuracy) << "\n";
    }
  }
  if (degenerate) err << "warning: some folds were skipped; see ablation.json\n";
  return degenerate ? kExitDegenerate : kExitOk;
}

int RunInsights(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto p = LoadCorpus(cfg);
  PrintWarnings(p->warnings, err);
  BuildFeatures(*p, cfg);
  const std::vector<std::string> justices = SelectJustices(*p, cfg);
  const std::vector<JusticeModel> models = TrainAll(*p, cfg, justices);

  std::string tsv = "justice\tsign\tblock\trank\tngram\tweight\tscore\n";
  json bundle;
  bundle["rank_by"] = to_string(cfg.rank_by);
  bundle["top_k"] = cfg.top_k;
  json per_justice = json::array();
  for (const JusticeModel& m : models) {
    const std::vector<std::string> dockets = voted_dockets(p->corpus, m.justice);
    const auto freq = ngram_frequency(p->store, m.justice, dockets);
    json entry = {{"justice", m.justice}};
    for (const Block block : {Block::kToParty, Block::kToOpponent}) {
      const char* block_name = block == Block::kToParty ? "to_party" : "to_opponent";
      for (const NGramSign sign : {NGramSign::kPositive, NGramSign::kNegative}) {
        const auto top =
            top_predictive_ngrams(m.model, m.space, cfg.top_k, sign, block, cfg.rank_by, &freq);
        json list = json::array();
        for (std::size_t r = 0; r < top.size(); ++r) {
          tsv += m.justice + "\t" + std::string(to_string(sign)) + "\t" + block_name + "\t" +
                 std::to_string(r + 1) + "\t" + top[r].ngram + "\t" +
                 format_double(top[r].weight) + "\t" + format_double(top[r].score) + "\n";
          list.push_back({{"ngram", top[r].ngram},
                          {"weight", top[r].weight},
                          {"score", top[r].score}});
        }
        entry[block_name][std::string(to_string(sign))] = std::move(list);
      }
    }
    per_justice.push_back(std::move(entry));
  }
  bundle["ngrams"] = std::move(per_justice);

  const ReferenceMatrix refs = interjustice_reference_matrix(p->corpus, p->normalizer);
  bundle["references"] = json::parse(refs.to_json());
  const fs::path dir = OutDir(cfg);
  WriteFile(dir / "top_ngrams.tsv", tsv);
  WriteFile(dir / "reference_matrix.tsv", refs.to_tsv());
  WriteFile(dir / "insights.json", bundle.dump(2) + "\n");
  out << "insights for " << models.size() << " justices\n";
  return kExitOk;
}

struct SynthFlags {
  int cases = 60;
  std::uint64_t seed = 0;
  std::string plant = "none";
  bool randomize_labels = false;
  int justices = 9;
  std::string out = "synth";
};

int RunSynth(const SynthFlags& f, std::ostream& out) {
  const auto plant = parse_plant(f.plant);
  if (!plant) {
    throw ConfigError("--plant must be none, negative-ngram or counts, got '" + f.plant + "'");
  }
  SynthOptions options;
  options.cases = f.cases;
  options.seed = f.seed;
  options.plant = *plant;
  options.randomize_labels = f.randomize_labels;
  options.justices = f.justices;
  SynthCorpus corpus;
  try {
    corpus = generate_synthetic(options);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_synthetic(corpus, options, f.out);
  out << "wrote " << corpus.transcripts.size() << " synthetic cases to " << f.out << "\n";
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

RunConfig RunConfig::FromJson(std::string_view text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("run config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("run config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "transcripts") {
        cfg.transcripts = Resolve(base_dir, v.get<std::string>());
      } else if (key == "outcomes") {
        cfg.outcomes = Resolve(base_dir, v.get<std::string>());
      } else if (key == "sentiment") {
        cfg.sentiment = Resolve(base_dir, v.get<std::string>());
      } else if (key == "out") {
        cfg.out = Resolve(base_dir, v.get<std::string>());
      } else if (key == "stopwords") {
        cfg.stopwords = Resolve(base_dir, v.get<std::string>());
      } else if (key == "valence") {
        cfg.valence = Resolve(base_dir, v.get<std::string>());
      } else if (key == "stem_exceptions") {
        cfg.stem_exceptions = Resolve(base_dir, v.get<std::string>());
      } else if (key == "aliases") {
        cfg.aliases = Resolve(base_dir, v.get<std::string>());
      } else if (key == "ngram_min") {
        cfg.ngram_min = v.get<int>();
      } else if (key == "ngram_max") {
        cfg.ngram_max = v.get<int>();
      } else if (key == "C") {
        cfg.svm.C = v.get<double>();
      } else if (key == "C_sweep") {
        cfg.c_sweep = v.get<std::vector<double>>();
      } else if (key == "tolerance") {
        cfg.svm.tolerance = v.get<double>();
      } else if (key == "max_epochs") {
        cfg.svm.max_epochs = v.get<int>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "k") {
        cfg.k = v.get<int>();
      } else if (key == "justices") {
        cfg.justices = v.get<std::vector<std::string>>();
      } else if (key == "workers") {
        cfg.workers = v.get<int>();
      } else if (key == "global_vocab") {
        cfg.global_vocab = v.get<bool>();
      } else if (key == "top_k") {
        cfg.top_k = v.get<int>();
      } else if (key == "rank_by") {
        const auto r = parse_rank_by(v.get<std::string>());
        if (!r) throw std::invalid_argument("rank_by must be weight or impact");
        cfg.rank_by = *r;
      } else {
        throw std::invalid_argument("unknown run config key '" + key + "'");
      }
    }
  } catch (const json::type_error& e) {
    throw std::invalid_argument(std::string("run config has a value of the wrong type: ") +
                                e.what());
  }
  cfg.svm.seed = cfg.seed;
  return cfg;
}

RunConfig RunConfig::Load(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return FromJson(text, fs::path(path).parent_path().string());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void RunConfig::validate() const {
  if (ngram_min < 1 || ngram_max > kMaxNGram || ngram_min > ngram_max) {
    throw std::invalid_argument("n-gram range must satisfy 1 <= min <= max <= 5");
  }
  svm.validate();
  for (const double c : c_sweep) {
    if (!(c > 0.0)) throw std::invalid_argument("every swept C must be > 0");
  }
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (top_k < 0) throw std::invalid_argument("top_k must be >= 0");
}

std::string RunConfig::to_json() const {
  json doc = {{"transcripts", transcripts},
              {"outcomes", outcomes},
              {"sentiment", sentiment},
              {"out", out},
              {"stopwords", stopwords},
              {"valence", valence},
              {"stem_exceptions", stem_exceptions},
              {"aliases", aliases},
              {"ngram_min", ngram_min},
              {"ngram_max", ngram_max},
              {"C", svm.C},
              {"C_sweep", c_sweep},
              {"tolerance", svm.tolerance},
              {"max_epochs", svm.max_epochs},
              {"seed", seed},
              {"k", k},
              {"justices", justices},
              {"workers", workers},
              {"global_vocab", global_vocab},
              {"top_k", top_k},
              {"rank_by", to_string(rank_by)}};
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Dispatch

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oral-argument vote prediction pipeline", "oralarg"};
  app.require_subcommand(1);

  Overrides overrides;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&, std::ostream&);
  };
  const Command commands[] = {
      {"ingest", "Join transcripts and outcomes; write the join report", RunIngest},
      {"stats", "Descriptive questioning statistics", RunStats},
      {"train", "Train one model per justice; export models and matrices", RunTrain},
      {"evaluate", "Case-level k-fold cross-validation", RunEvaluate},
      {"ablate", "Single-category and cumulative ablations", RunAblate},
      {"insights", "Top predictive n-grams and the reference matrix", RunInsights},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    AddCommonFlags(*sub, overrides);
    subs.emplace_back(sub, &c);
  }

  SynthFlags synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Write a reproducible synthetic corpus");
  synth_cmd->add_option("--cases", synth.cases, "Number of cases");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--plant", synth.plant, "none, negative-ngram or counts");
  synth_cmd->add_flag("--randomize-labels", synth.randomize_labels, "Redraw votes by coin flip");
  synth_cmd->add_option("--justices", synth.justices, "Odd number of voting justices");
  synth_cmd->add_option("--out", synth.out, "Output directory");

  std::vector<std::string> argv = {"oralarg"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<char*> cargv;
  for (std::string& a : argv) cargv.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (synth_cmd->parsed()) return RunSynth(synth, out);
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) return cmd->run(ResolveConfig(overrides), out, err);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace oralarg::cli

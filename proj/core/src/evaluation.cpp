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

#include "oralarg/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "oralarg/parallel.hpp"

namespace oralarg {
namespace {

using nlohmann::json;

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

double Ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

json SvmJson(const SvmConfig& c) {
  return {{"C", c.C}, {"tolerance", c.tolerance}, {"max_epochs", c.max_epochs}, {"seed", c.seed}};
}

json ReportJson(const EvalReport& r) {
  json doc;
  doc["config"] = {{"k", r.k},
                   {"seed", r.seed},
                   {"svm", SvmJson(r.svm)},
                   {"categories", r.categories.name()},
                   {"global_vocab", r.global_vocab}};
  json rows = json::array();
  for (const JusticeEval& j : r.justices) {
    json folds = json::array();
    for (const FoldResult& f : j.folds) {
      json fj = {{"fold", f.fold}, {"total", f.total}, {"correct", f.correct},
                 {"accuracy", Ratio(f.correct, f.total)}, {"skipped", f.skipped}};
      if (f.skipped) fj["reason"] = f.reason;
      folds.push_back(std::move(fj));
    }
    rows.push_back({{"justice", j.justice},
                    {"total_arguments", j.total},
                    {"correct", j.correct},
                    {"baseline", j.baseline},
                    {"accuracy", j.accuracy},
                    {"folds", std::move(folds)}});
  }
  doc["justices"] = std::move(rows);
  doc["overall"] = {{"total_arguments", r.total},
                    {"correct", r.correct},
                    {"baseline", r.baseline},
                    {"accuracy", r.accuracy}};
  doc["warnings"] = r.warnings;
  return doc;
}

// Splits paired rows (petitioner row, then respondent row) into scored cases.
void ScorePairs(const LinearModel& model, std::span<const LabeledRow> rows, FoldResult& result,
                int& petitioner_votes) {
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const LabeledRow& pet = rows[i];
    const LabeledRow& resp = rows[i + 1];
    const Side predicted =
        predicted_side(margin_of(model, pet.x), margin_of(model, resp.x));
    const Side actual = pet.label > 0 ? Side::kPetitioner : Side::kRespondent;
    ++result.total;
    result.correct += predicted == actual ? 1 : 0;
    petitioner_votes += actual == Side::kPetitioner ? 1 : 0;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Folds and baselines

int FoldPlan::fold_of(std::string_view docket) const {
  const auto it = assignment.find(docket);
  return it == assignment.end() ? -1 : it->second;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (const auto& [docket, fold] : assignment) ++sizes[fold];
  return sizes;
}

FoldPlan kfold_split(std::vector<std::string> dockets, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k-fold split needs k >= 2");
  std::sort(dockets.begin(), dockets.end());
  dockets.erase(std::unique(dockets.begin(), dockets.end()), dockets.end());
  if (dockets.size() < static_cast<std::size_t>(k)) {
    throw std::invalid_argument("k-fold split needs at least k=" + std::to_string(k) +
                                " cases, got " + std::to_string(dockets.size()));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = dockets.size() - 1; i > 0; --i) {
    std::swap(dockets[i], dockets[rng() % (i + 1)]);
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  for (std::size_t i = 0; i < dockets.size(); ++i) {
    plan.assignment.emplace(dockets[i], static_cast<int>(i % k));
  }
  return plan;
}

double baseline_rate(std::span<const Side> votes) {
  if (votes.empty()) return 0.0;
  const auto pet = std::count(votes.begin(), votes.end(), Side::kPetitioner);
  return static_cast<double>(pet) / static_cast<double>(votes.size());
}

double baseline_rate(std::span<const LabeledRow> rows) {
  int cases = 0;
  int pet = 0;
  for (const LabeledRow& r : rows) {
    if (r.side != Side::kPetitioner) continue;
    ++cases;
    pet += r.label > 0 ? 1 : 0;
  }
  return Ratio(pet, cases);
}

Side predicted_side(double petitioner_margin, double respondent_margin) {
  return respondent_margin > petitioner_margin ? Side::kRespondent : Side::kPetitioner;
}

// ---------------------------------------------------------------------------
// Cross-validation

FoldArtifacts train_fold(const FeatureStore& store, std::string_view justice,
                         const FoldPlan& plan, int fold, const EvalOptions& options) {
  FoldArtifacts out;
  const std::vector<std::string> voted = voted_dockets(store.corpus(), justice);
  for (const std::string& d : voted) {
    const int f = plan.fold_of(d);
    if (f < 0) continue;
    (f == fold ? out.test_dockets : out.train_dockets).push_back(d);
  }
  if (out.train_dockets.empty()) {
    out.skip_reason = "no training cases";
    return out;
  }
  std::vector<std::string> vocab;
  if (options.categories.contains(Category::kNGrams)) {
    std::vector<std::string> scope;
    if (options.global_vocab) {
      for (const std::string& d : voted) {
        if (plan.fold_of(d) >= 0) scope.push_back(d);
      }
    } else {
      scope = out.train_dockets;
    }
    vocab = vocabulary_of(store, justice, scope);
  }
  out.space = FeatureSpace(std::move(vocab));

  std::vector<LabeledRow> rows =
      assemble_rows(store, justice, out.space, options.categories, out.train_dockets);
  out.scaling = scale_dense(rows);
  const bool pos = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.label > 0; });
  const bool neg = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.label < 0; });
  if (!pos || !neg) {
    out.skip_reason = "single class in training rows";
    return out;
  }
  out.model = train_svm(rows, options.svm, out.space.total_columns(), out.space.fingerprint());
  return out;
}

namespace {

struct FoldTask {
  FoldResult result;
  int petitioner_votes = 0;
};

FoldTask RunFold(const FeatureStore& store, std::string_view justice, const FoldPlan& plan,
                 int fold, const EvalOptions& options) {
  FoldTask task;
  task.result.fold = fold;
  const FoldArtifacts art = train_fold(store, justice, plan, fold, options);
  if (art.test_dockets.empty()) return task;
  if (!art.model) {
    task.result.skipped = true;
    task.result.reason = art.skip_reason;
    return task;
  }
  std::vector<LabeledRow> test =
      assemble_rows(store, justice, art.space, options.categories, art.test_dockets);
  apply_scaling(test, art.scaling);
  ScorePairs(*art.model, test, task.result, task.petitioner_votes);
  return task;
}

JusticeEval Merge(std::string justice, std::span<const FoldTask> tasks) {
  JusticeEval out;
  out.justice = std::move(justice);
  for (const FoldTask& t : tasks) {
    out.folds.push_back(t.result);
    out.total += t.result.total;
    out.correct += t.result.correct;
    out.petitioner_votes += t.petitioner_votes;
  }
  out.accuracy = Ratio(out.correct, out.total);
  out.baseline = Ratio(out.petitioner_votes, out.total);
  return out;
}

}  // namespace

JusticeEval cross_validate_justice(const FeatureStore& store, std::string_view justice,
                                   const FoldPlan& plan, const EvalOptions& options) {
  std::vector<FoldTask> tasks(static_cast<std::size_t>(plan.k));
  parallel_for(tasks.size(), options.workers, [&](std::size_t f) {
    tasks[f] = RunFold(store, justice, plan, static_cast<int>(f), options);
  });
  return Merge(std::string(justice), tasks);
}

EvalReport cross_validate(const FeatureStore& store, std::span<const std::string> justices,
                          const FoldPlan& plan, const EvalOptions& options) {
  options.svm.validate();
  const std::size_t k = static_cast<std::size_t>(plan.k);
  std::vector<FoldTask> tasks(justices.size() * k);
  parallel_for(tasks.size(), options.workers, [&](std::size_t idx) {
    tasks[idx] = RunFold(store, justices[idx / k], plan, static_cast<int>(idx % k), options);
  });

  EvalReport report;
  report.k = plan.k;
  report.seed = plan.seed;
  report.svm = options.svm;
  report.categories = options.categories;
  report.global_vocab = options.global_vocab;
  int pet = 0;
  for (std::size_t j = 0; j < justices.size(); ++j) {
    JusticeEval e = Merge(justices[j], std::span<const FoldTask>(tasks).subspan(j * k, k));
    for (const FoldResult& f : e.folds) {
      if (f.skipped) {
        report.warnings.push_back(e.justice + ": fold " + std::to_string(f.fold) +
                                  " skipped (" + f.reason + ")");
      }
    }
    if (e.total == 0) report.warnings.push_back(e.justice + ": no scored arguments");
    report.total += e.total;
    report.correct += e.correct;
    pet += e.petitioner_votes;
    report.justices.push_back(std::move(e));
  }
  report.accuracy = Ratio(report.correct, report.total);
  report.baseline = Ratio(pet, report.total);
  return report;
}

std::string EvalReport::to_tsv() const {
  std::string out = "justice\ttotal_arguments\tcorrect\tbaseline\taccuracy\n";
  for (const JusticeEval& j : justices) {
    out += j.justice + "\t" + std::to_string(j.total) + "\t" + std::to_string(j.correct) +
           "\t" + Fixed(j.baseline) + "\t" + Fixed(j.accuracy) + "\n";
  }
  out += "All\t" + std::to_string(total) + "\t" + std::to_string(correct) + "\t" +
         Fixed(baseline) + "\t" + Fixed(accuracy) + "\n";
  return out;
}

std::string EvalReport::to_json() const { return ReportJson(*this).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Ablations

std::vector<CategorySet> single_category_sets() {
  return {CategorySet::Of({Category::kCounts}), CategorySet::Of({Category::kChronology}),
          CategorySet::Of({Category::kSentiment}), CategorySet::Of({Category::kNGrams})};
}

std::vector<CategorySet> cumulative_category_sets() {
  return {CategorySet::Of({Category::kNGrams}),
          CategorySet::Of({Category::kNGrams, Category::kCounts}),
          CategorySet::Of({Category::kNGrams, Category::kCounts, Category::kChronology}),
          CategorySet::Of({Category::kNGrams, Category::kCounts, Category::kChronology,
                           Category::kSentiment})};
}

AblationTable ablation_suite(const FeatureStore& store, std::span<const std::string> justices,
                             const FoldPlan& plan, const EvalOptions& options) {
  AblationTable table;
  table.justices.assign(justices.begin(), justices.end());
  EvalOptions run = options;
  for (const CategorySet set : single_category_sets()) {
    run.categories = set;
    table.single.emplace_back(set, cross_validate(store, justices, plan, run));
  }
  for (const CategorySet set : cumulative_category_sets()) {
    run.categories = set;
    table.cumulative.emplace_back(set, cross_validate(store, justices, plan, run));
  }
  return table;
}

namespace {

std::string AblationTsv(const std::vector<std::pair<CategorySet, EvalReport>>& runs,
                        const std::vector<std::string>& justices, bool with_baseline) {
  std::string out = "justice";
  for (const auto& [set, report] : runs) out += "\t" + set.name();
  if (with_baseline) out += "\tbaseline";
  out += "\n";
  for (std::size_t j = 0; j < justices.size(); ++j) {
    out += justices[j];
    for (const auto& [set, report] : runs) out += "\t" + Fixed(report.justices[j].accuracy);
    if (with_baseline && !runs.empty()) out += "\t" + Fixed(runs.front().second.justices[j].baseline);
    out += "\n";
  }
  out += "All";
  for (const auto& [set, report] : runs) out += "\t" + Fixed(report.accuracy);
  if (with_baseline && !runs.empty()) out += "\t" + Fixed(runs.front().second.baseline);
  out += "\n";
  return out;
}

}  // namespace

std::string AblationTable::single_tsv() const { return AblationTsv(single, justices, true); }

std::string AblationTable::cumulative_tsv() const {
  return AblationTsv(cumulative, justices, false);
}

std::string AblationTable::to_json() const {
  json doc;
  json s = json::array();
  for (const auto& [set, report] : single) {
    s.push_back({{"categories", set.name()}, {"report", ReportJson(report)}});
  }
  json c = json::array();
  for (const auto& [set, report] : cumulative) {
    c.push_back({{"categories", set.name()}, {"report", ReportJson(report)}});
  }
  doc["single"] = std::move(s);
  doc["cumulative"] = std::move(c);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Weight shares

CategoryWeights category_weight_shares(const LinearModel& model, const FeatureSpace& space) {
  if (model.num_columns() != space.total_columns()) {
    throw std::invalid_argument("model has " + std::to_string(model.num_columns()) +
                                " columns but the space has " +
                                std::to_string(space.total_columns()));
  }
  std::array<double, kNumCategories> sums{};
  double total = 0.0;
  for (int c = 0; c < model.num_columns(); ++c) {
    const double a = std::abs(model.weights[c]);
    sums[static_cast<int>(space.category(c))] += a;
    total += a;
  }
  if (!(total > 0.0)) throw std::invalid_argument("all model weights are zero");
  CategoryWeights out;
  for (int i = 0; i < kNumCategories; ++i) out.share[i] = sums[i] / total;
  return out;
}

JusticeModel train_justice_model(const FeatureStore& store, std::string_view justice,
                                 const EvalOptions& options) {
  JusticeModel out;
  out.justice = std::string(justice);
  const std::vector<std::string> voted = voted_dockets(store.corpus(), justice);
  if (voted.empty()) {
    throw std::invalid_argument("justice '" + out.justice + "' has no usable voted cases");
  }
  std::vector<std::string> vocab;
  if (options.categories.contains(Category::kNGrams)) {
    vocab = vocabulary_of(store, justice, voted);
  }
  out.space = FeatureSpace(std::move(vocab));
  out.rows = assemble_rows(store, justice, out.space, options.categories, voted);
  out.scaling = scale_dense(out.rows);
  out.model =
      train_svm(out.rows, options.svm, out.space.total_columns(), out.space.fingerprint());
  return out;
}

WeightShareTable weight_share_table(std::span<const JusticeModel> models) {
  WeightShareTable table;
  for (const JusticeModel& m : models) {
    table.rows.emplace_back(m.justice, category_weight_shares(m.model, m.space));
  }
  if (!table.rows.empty()) {
    for (const auto& [justice, w] : table.rows) {
      for (int i = 0; i < kNumCategories; ++i) table.average.share[i] += w.share[i];
    }
    for (double& s : table.average.share) s /= static_cast<double>(table.rows.size());
  }
  return table;
}

std::string WeightShareTable::to_tsv() const {
  std::string out = "justice\tcounts\tchronology\tsentiment\tngrams\tparty\n";
  auto line = [&](const std::string& name, const CategoryWeights& w) {
    out += name;
    for (const Category c : {Category::kCounts, Category::kChronology, Category::kSentiment,
                             Category::kNGrams, Category::kParty}) {
      out += "\t" + Fixed(w[c]);
    }
    out += "\n";
  };
  for (const auto& [justice, w] : rows) line(justice, w);
  line("All", average);
  return out;
}

std::vector<std::string> modeled_justices(const Corpus& corpus, int min_cases) {
  std::vector<std::string> out;
  for (const std::string& j : corpus.justices()) {
    if (static_cast<int>(voted_dockets(corpus, j).size()) >= min_cases) out.push_back(j);
  }
  return out;
}

}  // namespace oralarg

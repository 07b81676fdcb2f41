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

#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "oralarg/synth.hpp"
#include "test_support.hpp"

namespace oralarg {
namespace {

using testing::StoreFixture;

std::vector<std::string> Dockets(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("d" + std::to_string(100 + i));
  return out;
}

std::unique_ptr<StoreFixture> Synth(Plant plant, int cases, std::uint64_t seed,
                                    bool randomize = false) {
  SynthOptions o;
  o.cases = cases;
  o.seed = seed;
  o.plant = plant;
  o.randomize_labels = randomize;
  SynthCorpus s = generate_synthetic(o);
  return std::make_unique<StoreFixture>(std::move(s.transcripts), std::move(s.outcomes));
}

std::vector<std::string> DocketsOf(const Corpus& c) {
  std::vector<std::string> out;
  for (const auto& cr : c.cases()) out.push_back(cr.docket());
  return out;
}

TEST(KFold, TenCasesGiveSingletons) {
  const FoldPlan plan = kfold_split(Dockets(10), 10, 1);
  EXPECT_EQ(plan.fold_sizes(), std::vector<std::size_t>(10, 1));
}

TEST(KFold, TwentyThreeCases) {
  const FoldPlan plan = kfold_split(Dockets(23), 10, 1);
  const std::vector<std::size_t> want = {3, 3, 3, 2, 2, 2, 2, 2, 2, 2};
  EXPECT_EQ(plan.fold_sizes(), want);
}

TEST(KFold, DeterministicAndOrderIndependent) {
  auto d = Dockets(37);
  const FoldPlan a = kfold_split(d, 5, 3);
  std::reverse(d.begin(), d.end());
  const FoldPlan b = kfold_split(d, 5, 3);
  EXPECT_EQ(a.assignment, b.assignment);
  const FoldPlan c = kfold_split(d, 5, 4);
  EXPECT_NE(a.assignment, c.assignment);
}

TEST(KFold, EveryDocketInExactlyOneFold) {
  for (int n : {5, 11, 64}) {
    const auto d = Dockets(n);
    const FoldPlan plan = kfold_split(d, 5, 9);
    ASSERT_EQ(plan.assignment.size(), d.size());
    for (const auto& x : d) {
      const int f = plan.fold_of(x);
      EXPECT_GE(f, 0);
      EXPECT_LT(f, 5);
    }
    const auto sizes = plan.fold_sizes();
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), d.size());
    EXPECT_LE(*std::max_element(sizes.begin(), sizes.end()) -
                  *std::min_element(sizes.begin(), sizes.end()),
              1u);
  }
  EXPECT_EQ(kfold_split(Dockets(5), 5, 0).fold_of("missing"), -1);
}

TEST(KFold, RejectsBadArguments) {
  EXPECT_THROW(kfold_split(Dockets(3), 10, 0), std::invalid_argument);
  EXPECT_THROW(kfold_split(Dockets(3), 1, 0), std::invalid_argument);
}

TEST(Baseline, FractionOfPetitionerVotes) {
  const std::vector<Side> votes = {Side::kPetitioner, Side::kPetitioner, Side::kRespondent,
                                   Side::kPetitioner, Side::kRespondent};
  EXPECT_DOUBLE_EQ(baseline_rate(votes), 0.6);
}

TEST(Baseline, FromPairedRows) {
  std::vector<LabeledRow> rows;
  for (int pet : {1, 1, -1, 1, -1}) {
    rows.push_back({"x", Side::kPetitioner, pet, {}});
    rows.push_back({"x", Side::kRespondent, -pet, {}});
  }
  EXPECT_DOUBLE_EQ(baseline_rate(rows), 0.6);
}

TEST(PredictedSide, LargerMarginWinsPetitionerOnTies) {
  EXPECT_EQ(predicted_side(0.5, 0.2), Side::kPetitioner);
  EXPECT_EQ(predicted_side(-0.5, 0.2), Side::kRespondent);
  EXPECT_EQ(predicted_side(0.3, 0.3), Side::kPetitioner);
  EXPECT_EQ(predicted_side(-1.0, -2.0), Side::kPetitioner);
}

TEST(CrossValidate, PlantedSignalIsRecovered) {
  const auto f = Synth(Plant::kNegativeNGram, 60, 1);
  const auto js = modeled_justices(f->corpus);
  const FoldPlan plan = kfold_split(DocketsOf(f->corpus), 10, 1);
  const EvalReport r = cross_validate(f->store, js, plan, {});
  EXPECT_FALSE(r.degenerate());
  EXPECT_GE(r.accuracy, 0.95);
  EXPECT_EQ(r.justices.size(), js.size());
  int total = 0;
  int correct = 0;
  for (const auto& j : r.justices) {
    total += j.total;
    correct += j.correct;
  }
  EXPECT_EQ(total, r.total);
  EXPECT_EQ(correct, r.correct);
  EXPECT_DOUBLE_EQ(r.accuracy, static_cast<double>(correct) / total);
  const std::string tsv = r.to_tsv();
  EXPECT_EQ(tsv.rfind("All\t", tsv.size() - 2) != std::string::npos, true);
}

TEST(CrossValidate, WorkersDoNotChangeResults) {
  const auto f = Synth(Plant::kNegativeNGram, 30, 2);
  const auto js = modeled_justices(f->corpus);
  const FoldPlan plan = kfold_split(DocketsOf(f->corpus), 5, 2);
  EvalOptions one;
  EvalOptions four;
  four.workers = 4;
  EXPECT_EQ(cross_validate(f->store, js, plan, one).to_json(),
            cross_validate(f->store, js, plan, four).to_json());
}

TEST(CrossValidate, HeldOutTranscriptDoesNotLeak) {
  SynthOptions o;
  o.cases = 30;
  o.seed = 4;
  o.plant = Plant::kNegativeNGram;
  const SynthCorpus s = generate_synthetic(o);
  StoreFixture full(s.transcripts, s.outcomes);
  const FoldPlan plan = kfold_split(DocketsOf(full.corpus), 5, 4);
  const std::string justice = s.justices.front();
  const int fold = 0;

  // Drop one held-out case of fold 0 and change another one's text.
  std::vector<Transcript> ts;
  std::vector<CaseOutcome> os;
  bool dropped = false;
  for (std::size_t i = 0; i < s.transcripts.size(); ++i) {
    if (plan.fold_of(s.transcripts[i].docket) == fold) {
      if (!dropped) {
        dropped = true;
        continue;
      }
      Transcript t = s.transcripts[i];
      for (auto& u : t.utterances) u.text += " zebra";
      ts.push_back(std::move(t));
    } else {
      ts.push_back(s.transcripts[i]);
    }
    os.push_back(s.outcomes[i]);
  }
  ASSERT_TRUE(dropped);
  StoreFixture cut(std::move(ts), std::move(os));

  const FoldArtifacts a = train_fold(full.store, justice, plan, fold, {});
  const FoldArtifacts b = train_fold(cut.store, justice, plan, fold, {});
  ASSERT_TRUE(a.model.has_value());
  ASSERT_TRUE(b.model.has_value());
  EXPECT_EQ(a.space.vocabulary(), b.space.vocabulary());
  EXPECT_EQ(a.scaling, b.scaling);
  EXPECT_EQ(a.model->weights, b.model->weights);
  EXPECT_EQ(a.model->bias, b.model->bias);
  EXPECT_EQ(a.train_dockets, b.train_dockets);
  for (const auto& d : a.test_dockets) EXPECT_EQ(plan.fold_of(d), fold);
  for (const auto& d : a.train_dockets) EXPECT_NE(plan.fold_of(d), fold);
}

TEST(CrossValidate, SkippedFoldIsWarned) {
  // The justice votes in one case, so the fold holding it has no training data.
  using testing::MakeOutcome;
  using testing::MakeTranscript;
  StoreFixture f({MakeTranscript("A", {{"P", "a"}, {"scalia", "statute"}, {"R", "b"}}),
                  MakeTranscript("B", {{"P", "a"}, {"breyer", "remedy"}, {"R", "b"}})},
                 {MakeOutcome("A", {{"scalia", Side::kPetitioner}}),
                  MakeOutcome("B", {{"breyer", Side::kRespondent}})});
  const FoldPlan plan = kfold_split({"A", "B"}, 2, 0);
  const std::vector<std::string> js = {"scalia"};
  const EvalReport r = cross_validate(f.store, js, plan, {});
  EXPECT_TRUE(r.degenerate());
}

TEST(WeightShares, PartyOnly) {
  const FeatureSpace space({"a", "b"});
  LinearModel m;
  m.weights.assign(space.total_columns(), 0.0);
  m.weights[kPartyColumn] = -2.0;
  m.bias = 5.0;
  const CategoryWeights w = category_weight_shares(m, space);
  EXPECT_DOUBLE_EQ(w[Category::kParty], 1.0);
  EXPECT_DOUBLE_EQ(w[Category::kCounts], 0.0);
}

TEST(WeightShares, ThreeToOne) {
  const FeatureSpace space({"a"});
  LinearModel m;
  m.weights.assign(space.total_columns(), 0.0);
  m.weights[0] = 3.0;
  m.weights[kFirstNGramColumn] = -1.0;
  const CategoryWeights w = category_weight_shares(m, space);
  EXPECT_DOUBLE_EQ(w[Category::kCounts], 0.75);
  EXPECT_DOUBLE_EQ(w[Category::kNGrams], 0.25);
}

TEST(WeightShares, SumToOneAndScaleInvariant) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  const FeatureSpace space({"a", "b", "c"});
  for (int trial = 0; trial < 50; ++trial) {
    LinearModel m;
    for (int c = 0; c < space.total_columns(); ++c) m.weights.push_back(n(rng));
    const CategoryWeights w = category_weight_shares(m, space);
    double sum = 0.0;
    for (const double s : w.share) {
      EXPECT_GE(s, 0.0);
      sum += s;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    LinearModel m2 = m;
    for (double& x : m2.weights) x *= 2.0;
    const CategoryWeights w2 = category_weight_shares(m2, space);
    for (int c = 0; c < kNumCategories; ++c) EXPECT_NEAR(w.share[c], w2.share[c], 1e-12);
  }
}

TEST(WeightShares, Errors) {
  const FeatureSpace space({"a"});
  LinearModel m;
  m.weights.assign(space.total_columns(), 0.0);
  EXPECT_THROW(category_weight_shares(m, space), std::invalid_argument);
  m.weights.assign(3, 1.0);
  EXPECT_THROW(category_weight_shares(m, space), std::invalid_argument);
}

TEST(WeightShares, TableHasAverageRow) {
  const auto f = Synth(Plant::kNegativeNGram, 20, 5);
  std::vector<JusticeModel> models;
  for (const auto& j : modeled_justices(f->corpus)) {
    models.push_back(train_justice_model(f->store, j, {}));
  }
  const WeightShareTable t = weight_share_table(models);
  ASSERT_EQ(t.rows.size(), models.size());
  for (int c = 0; c < kNumCategories; ++c) {
    double mean = 0.0;
    for (const auto& [j, w] : t.rows) mean += w.share[c];
    EXPECT_NEAR(t.average.share[c], mean / t.rows.size(), 1e-12);
  }
  const std::string tsv = t.to_tsv();
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "justice\tcounts\tchronology\tsentiment\tngrams\tparty");
  EXPECT_NE(tsv.find("\nAll\t"), std::string::npos);
}

TEST(Ablation, CategorySets) {
  const auto single = single_category_sets();
  const auto cumulative = cumulative_category_sets();
  ASSERT_EQ(single.size(), 4u);
  ASSERT_EQ(cumulative.size(), 4u);
  for (const auto& s : single) EXPECT_TRUE(s.contains(Category::kParty));
  EXPECT_TRUE(cumulative.back() == CategorySet::All());
}

TEST(Ablation, CountsPlantShowsInCountsColumn) {
  const auto f = Synth(Plant::kCounts, 40, 6);
  const auto js = modeled_justices(f->corpus);
  const FoldPlan plan = kfold_split(DocketsOf(f->corpus), 5, 6);
  const AblationTable t = ablation_suite(f->store, js, plan, {});
  ASSERT_EQ(t.single.size(), 4u);
  ASSERT_EQ(t.cumulative.size(), 4u);
  double counts = 0.0;
  double chronology = 0.0;
  for (const auto& [set, report] : t.single) {
    if (set.contains(Category::kCounts)) counts = report.accuracy;
    if (set.contains(Category::kChronology)) chronology = report.accuracy;
  }
  EXPECT_GE(counts, 0.95);
  EXPECT_LT(chronology, counts);
  EXPECT_NE(t.single_tsv().find("baseline"), std::string::npos);
}

}  // namespace
}  // namespace oralarg

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

// Case-level k-fold cross-validation, baselines, ablations and category
// weight shares.
//
// Folds split by case, so the two mirrored rows of a case always share a
// fold. Vocabulary and scaling are fit on training cases only (unless the
// global-vocabulary toggle is set). A justice's vote in a held-out case is
// predicted as the side whose row has the larger margin, petitioner on ties.
#ifndef ORALARG_EVALUATION_HPP_
#define ORALARG_EVALUATION_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oralarg/features.hpp"
#include "oralarg/matrix.hpp"
#include "oralarg/svm.hpp"

namespace oralarg {

struct FoldPlan {
  int k = 10;
  std::uint64_t seed = 0;
  std::map<std::string, int, std::less<>> assignment;  // docket -> fold id

  // -1 for dockets outside the plan.
  int fold_of(std::string_view docket) const;
  std::vector<std::size_t> fold_sizes() const;
};

// Seeded shuffle of the sorted dockets, then round-robin assignment.
// Throws std::invalid_argument when there are fewer dockets than folds.
FoldPlan kfold_split(std::vector<std::string> dockets, int k, std::uint64_t seed);

// Fraction of votes cast for the petitioner: the accuracy of always
// predicting the petitioner.
double baseline_rate(std::span<const Side> votes);
// Same, read off the petitioner rows of paired labeled rows.
double baseline_rate(std::span<const LabeledRow> rows);

// Petitioner on ties.
Side predicted_side(double petitioner_margin, double respondent_margin);

struct EvalOptions {
  SvmConfig svm;
  CategorySet categories = CategorySet::All();
  bool global_vocab = false;
  int workers = 1;
};

// Everything fit on one fold's training cases.
struct FoldArtifacts {
  FeatureSpace space;
  ScalingParams scaling;
  std::optional<LinearModel> model;  // unset when the fold was skipped
  std::vector<std::string> train_dockets;
  std::vector<std::string> test_dockets;
  std::string skip_reason;
};

FoldArtifacts train_fold(const FeatureStore& store, std::string_view justice,
                         const FoldPlan& plan, int fold, const EvalOptions& options);

struct FoldResult {
  int fold = 0;
  int total = 0;
  int correct = 0;
  bool skipped = false;
  std::string reason;
};

struct JusticeEval {
  std::string justice;
  int total = 0;    // scored arguments (cases)
  int correct = 0;
  int petitioner_votes = 0;
  double accuracy = 0.0;
  double baseline = 0.0;
  std::vector<FoldResult> folds;
};

struct EvalReport {
  std::vector<JusticeEval> justices;
  int total = 0;
  int correct = 0;
  double accuracy = 0.0;  // vote-weighted over justices
  double baseline = 0.0;
  // Echo of the configuration.
  int k = 0;
  std::uint64_t seed = 0;
  SvmConfig svm;
  CategorySet categories;
  bool global_vocab = false;
  std::vector<std::string> warnings;

  bool degenerate() const { return !warnings.empty(); }
  // justice, total_arguments, correct, baseline, accuracy; "All" row last.
  std::string to_tsv() const;
  std::string to_json() const;
};

JusticeEval cross_validate_justice(const FeatureStore& store, std::string_view justice,
                                   const FoldPlan& plan, const EvalOptions& options);

// Folds of all justices run in parallel on `options.workers` threads.
EvalReport cross_validate(const FeatureStore& store, std::span<const std::string> justices,
                          const FoldPlan& plan, const EvalOptions& options);

struct AblationTable {
  std::vector<std::string> justices;
  // Single-category runs, in the order counts, chronology, sentiment, ngrams.
  std::vector<std::pair<CategorySet, EvalReport>> single;
  // Nested runs: ngrams, +counts, +chronology, +sentiment.
  std::vector<std::pair<CategorySet, EvalReport>> cumulative;

  std::string single_tsv() const;
  std::string cumulative_tsv() const;
  std::string to_json() const;
};

std::vector<CategorySet> single_category_sets();
std::vector<CategorySet> cumulative_category_sets();

// `options.categories` is ignored; the party flag is in every run.
AblationTable ablation_suite(const FeatureStore& store, std::span<const std::string> justices,
                             const FoldPlan& plan, const EvalOptions& options);

struct CategoryWeights {
  std::array<double, kNumCategories> share{};

  double operator[](Category c) const { return share[static_cast<int>(c)]; }
};

// share(c) = sum |w_i| over columns of c / sum |w_i| over all columns, bias
// excluded. Throws std::invalid_argument when every weight is zero.
CategoryWeights category_weight_shares(const LinearModel& model, const FeatureSpace& space);

// A justice's model fit on every case the justice voted in.
struct JusticeModel {
  std::string justice;
  FeatureSpace space;
  ScalingParams scaling;
  LinearModel model;
  std::vector<LabeledRow> rows;  // scaled training rows
};

JusticeModel train_justice_model(const FeatureStore& store, std::string_view justice,
                                 const EvalOptions& options);

struct WeightShareTable {
  std::vector<std::pair<std::string, CategoryWeights>> rows;
  CategoryWeights average;  // unweighted mean over justices

  // justice, counts, chronology, sentiment, ngrams, party; "All" row last.
  std::string to_tsv() const;
};

WeightShareTable weight_share_table(std::span<const JusticeModel> models);

// Justices with at least `min_cases` matrix-usable voted cases.
std::vector<std::string> modeled_justices(const Corpus& corpus, int min_cases = 2);

}  // namespace oralarg

#endif  // ORALARG_EVALUATION_HPP_

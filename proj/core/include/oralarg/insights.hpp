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

// Descriptive questioning statistics, top predictive n-grams and the
// inter-justice reference matrix.
//
// The descriptive statistics are computed straight from question records and
// votes, independently of the feature store.
#ifndef ORALARG_INSIGHTS_HPP_
#define ORALARG_INSIGHTS_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oralarg/features.hpp"
#include "oralarg/ingest.hpp"
#include "oralarg/matrix.hpp"
#include "oralarg/svm.hpp"
#include "oralarg/text.hpp"

namespace oralarg {

// A value split by the side the justice voted for and against.
struct ForAgainst {
  std::optional<double> voted_for;
  std::optional<double> voted_against;

  // against - for; unset when either side is.
  std::optional<double> diff() const;
};

struct JusticeStats {
  std::string justice;
  int cases = 0;                  // cases the justice voted in
  ForAgainst mean_questions;      // per case
  ForAgainst words_per_question;  // pooled over questions
  int first_to_petitioner = 0;    // cases where the justice asked the first question of the side
  int first_to_respondent = 0;
  double first_question_rate = 0.0;  // (first_to_petitioner + first_to_respondent) / (2 * cases)
  ForAgainst mean_consecutive;       // questions / runs, pooled
  std::optional<double> mean_sentiment;
  ForAgainst sentiment;
  int distinct_ngrams = 0;
};

struct DescriptiveStats {
  std::vector<JusticeStats> justices;  // justices with no voted cases omitted

  // One TSV block per table, separated by blank lines.
  std::string to_tsv() const;
  std::string to_json() const;
};

struct DescriptiveOptions {
  int n_min = 1;
  int n_max = kMaxNGram;
};

DescriptiveStats descriptive_stats_report(const Corpus& corpus, const Normalizer& normalizer,
                                          const SentimentScorer& scorer,
                                          const SentimentSidecar* sidecar = nullptr,
                                          const DescriptiveOptions& options = {});

enum class NGramSign { kPositive, kNegative };
enum class RankBy { kWeight, kImpact };

std::string_view to_string(NGramSign s);
std::string_view to_string(RankBy r);
std::optional<RankBy> parse_rank_by(std::string_view s);

struct PredictiveNGram {
  std::string ngram;
  Block block = Block::kToParty;
  double weight = 0.0;
  double score = 0.0;  // weight, or weight * frequency when ranked by impact

  bool operator==(const PredictiveNGram&) const = default;
};

// Ranks the n-gram columns of one block. Positive lists weight > 0, strongest
// first; negative lists weight < 0, most negative first. Ties break on the
// n-gram text. `frequency` (n-gram -> corpus count) is required for impact
// ranking. k larger than the candidate count truncates.
std::vector<PredictiveNGram> top_predictive_ngrams(
    const LinearModel& model, const FeatureSpace& space, int k, NGramSign sign,
    Block block = Block::kToParty, RankBy rank_by = RankBy::kWeight,
    const std::map<std::string, double, std::less<>>* frequency = nullptr);

// Total count of each n-gram in the justice's questions across `dockets`.
std::map<std::string, double, std::less<>> ngram_frequency(
    const FeatureStore& store, std::string_view justice, std::span<const std::string> dockets);

struct ReferenceMatrix {
  std::vector<std::string> justices;
  // [speaker][referenced]
  std::vector<std::vector<int>> references;
  std::vector<std::vector<int>> shared_cases;

  // 100 * references / shared cases; unset when no cases are shared.
  std::optional<double> rate(std::size_t speaker, std::size_t referenced) const;
  std::string to_tsv() const;
  std::string to_json() const;
};

// A question by S references colleague R != S when its normalized tokens
// contain the bigram "justic <stem(R)>". Each question counts at most once
// per colleague.
ReferenceMatrix interjustice_reference_matrix(const Corpus& corpus,
                                              const Normalizer& normalizer = {});

}  // namespace oralarg

#endif  // ORALARG_INSIGHTS_HPP_

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

// Per-cell question features. A cell is one (justice, docket, side) triple;
// the four families are counts, chronology, sentiment and n-grams.
#ifndef ORALARG_FEATURES_HPP_
#define ORALARG_FEATURES_HPP_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "oralarg/ingest.hpp"
#include "oralarg/text.hpp"

namespace oralarg {

using QuestionRefs = std::span<const QuestionRecord* const>;

struct CountFeatures {
  int num_questions = 0;
  std::optional<double> ave_words;  // unset when num_questions == 0
  double percent = 0.0;             // share of the justice's questions in the case

  bool operator==(const CountFeatures&) const = default;
};

struct ChronologyFeatures {
  // 1-based position of the justice's first question among all justices'
  // questions to the side; side total + 1 when the justice never asked.
  int first_question_index = 1;
  std::optional<double> ave_consecutive;

  bool operator==(const ChronologyFeatures&) const = default;
};

struct SentimentFeatures {
  std::optional<double> ave_sentiment;  // in [1, 5]

  bool operator==(const SentimentFeatures&) const = default;
};

// Scores one sentence on the 1 (very negative) .. 5 (very positive) scale.
// Implementations must be deterministic and total over non-empty strings.
class SentimentScorer {
 public:
  virtual ~SentimentScorer() = default;
  virtual int score(std::string_view sentence) const = 0;
};

// clamp(3 + sum of token valences, 1, 5). Tokens are lowercased, stripped
// and stemmed, but stop words are kept.
class LexiconScorer final : public SentimentScorer {
 public:
  // Built-in lexicon (mirrors config/valence.txt).
  LexiconScorer();
  // `word<TAB>+1|-1` per line, '#' comments.
  static LexiconScorer FromText(std::string_view text, Normalizer normalizer = {});
  static LexiconScorer FromFile(const std::string& path, Normalizer normalizer = {});

  int score(std::string_view sentence) const override;
  int valence(std::string_view word) const;
  std::size_t size() const { return valence_.size(); }

 private:
  LexiconScorer(std::unordered_map<std::string, int> valence, Normalizer normalizer);

  std::unordered_map<std::string, int> valence_;
  Normalizer normalizer_;
};

// Precomputed per-utterance scores from an external annotator:
// CSV `docket,utterance_seq,score`, score in 1..5.
class SentimentSidecar {
 public:
  static SentimentSidecar Parse(std::string_view csv);
  static SentimentSidecar Load(const std::string& path);

  std::optional<int> lookup(std::string_view docket, int seq) const;
  bool covers(std::string_view docket) const;
  std::size_t size() const { return scores_.size(); }

 private:
  std::map<std::pair<std::string, int>, int, std::less<>> scores_;
};

// Sentences of raw text split on '.', '?' and '!'. Segments with no
// non-space character are dropped; text with no such segment is one sentence.
std::vector<std::string> split_sentences(std::string_view text);

// Sidecar score when present, otherwise the mean of per-sentence scores.
double question_sentiment(const QuestionRecord& q, const SentimentScorer& scorer,
                          const SentimentSidecar* sidecar = nullptr);

// `cell` holds one justice's questions to one side; `justice_total` counts
// all of that justice's questions in the case.
CountFeatures count_features(QuestionRefs cell, int justice_total);

// `side_questions` holds every justice's questions to one side, in order.
ChronologyFeatures chronology_features(QuestionRefs side_questions, std::string_view justice);

SentimentFeatures sentiment_features(QuestionRefs cell, const SentimentScorer& scorer,
                                     const SentimentSidecar* sidecar = nullptr);

// Multiset union of each question's n-grams; windows never span questions.
NGramCounts ngram_features(QuestionRefs cell, const Normalizer& normalizer, int n_min = 1,
                           int n_max = kMaxNGram);

struct CellFeatures {
  CountFeatures counts;
  ChronologyFeatures chronology;
  SentimentFeatures sentiment;
  NGramCounts ngrams;

  bool operator==(const CellFeatures&) const = default;
};

struct FeatureOptions {
  int n_min = 1;
  int n_max = kMaxNGram;
  int workers = 1;
};

// Side index used by per-side arrays: 0 = petitioner, 1 = respondent.
inline int side_index(Side side) { return side == Side::kPetitioner ? 0 : 1; }

// Features for every participant of every case, computed once and shared.
class FeatureStore {
 public:
  using CasePair = std::array<CellFeatures, 2>;

  static FeatureStore Build(const Corpus& corpus, const Normalizer& normalizer,
                            const SentimentScorer& scorer,
                            const SentimentSidecar* sidecar = nullptr,
                            const FeatureOptions& options = {});

  // nullptr when the justice did not participate in the case.
  const CellFeatures* cell(std::string_view docket, std::string_view justice,
                           Side side) const;

  // Per-question sentiment in utterance order (matches CaseRecord::questions).
  const std::vector<double>* question_scores(std::string_view docket) const;
  // Normalized tokens per question in utterance order.
  const std::vector<TokenList>* question_tokens(std::string_view docket) const;

  const Corpus& corpus() const { return *corpus_; }
  const FeatureOptions& options() const { return options_; }

 private:
  struct CaseFeatures {
    std::map<std::string, CasePair, std::less<>> cells;
    std::vector<double> scores;
    std::vector<TokenList> tokens;
  };

  const Corpus* corpus_ = nullptr;
  FeatureOptions options_;
  std::map<std::string, CaseFeatures, std::less<>> cases_;
};

}  // namespace oralarg

#endif  // ORALARG_FEATURES_HPP_

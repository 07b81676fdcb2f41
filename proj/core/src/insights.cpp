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

#include "oralarg/insights.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace oralarg {
namespace {

using nlohmann::json;

std::string Fixed(const std::optional<double>& v, const char* fmt = "%.4f") {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), fmt, *v);
  return buf;
}

json OptJson(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json SplitJson(const ForAgainst& v) {
  return {{"for", OptJson(v.voted_for)},
          {"against", OptJson(v.voted_against)},
          {"diff", OptJson(v.diff())}};
}

std::optional<double> Mean(double sum, long count) {
  if (count <= 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

// Running sums for one justice, indexed by 0 = voted for, 1 = voted against.
struct Accumulator {
  int cases = 0;
  long questions[2] = {0, 0};
  long words[2] = {0, 0};
  long runs[2] = {0, 0};
  double sentiment[2] = {0.0, 0.0};
  int first[2] = {0, 0};  // petitioner, respondent
  std::set<std::string> ngrams;
};

}  // namespace

std::optional<double> ForAgainst::diff() const {
  if (!voted_for || !voted_against) return std::nullopt;
  return *voted_against - *voted_for;
}

DescriptiveStats descriptive_stats_report(const Corpus& corpus, const Normalizer& normalizer,
                                          const SentimentScorer& scorer,
                                          const SentimentSidecar* sidecar,
                                          const DescriptiveOptions& options) {
  std::map<std::string, Accumulator> acc;
  for (const CaseRecord& c : corpus.cases()) {
    for (const auto& [justice, vote] : c.outcome.votes) {
      if (vote == Side::kNone) continue;
      Accumulator& a = acc[justice];
      ++a.cases;
      for (const QuestionRecord& q : c.questions) {
        if (q.justice != justice) continue;
        const int k = q.target_side == vote ? 0 : 1;
        ++a.questions[k];
        a.words[k] += static_cast<long>(tokenize_raw(q.text).raw_word_count);
        a.runs[k] += q.run_length_position == 1 ? 1 : 0;
        a.sentiment[k] += question_sentiment(q, scorer, sidecar);
        if (q.question_index_to_side == 1) ++a.first[side_index(q.target_side)];
        std::map<std::string, int> grams;
        accumulate_ngrams(normalizer.normalize(q.text).tokens, options.n_min, options.n_max,
                          grams);
        for (auto& [g, n] : grams) a.ngrams.insert(g);
      }
    }
  }

  DescriptiveStats out;
  for (const auto& [justice, a] : acc) {
    JusticeStats s;
    s.justice = justice;
    s.cases = a.cases;
    s.mean_questions.voted_for = Mean(static_cast<double>(a.questions[0]), a.cases);
    s.mean_questions.voted_against = Mean(static_cast<double>(a.questions[1]), a.cases);
    s.words_per_question.voted_for = Mean(static_cast<double>(a.words[0]), a.questions[0]);
    s.words_per_question.voted_against = Mean(static_cast<double>(a.words[1]), a.questions[1]);
    s.first_to_petitioner = a.first[0];
    s.first_to_respondent = a.first[1];
    s.first_question_rate = static_cast<double>(a.first[0] + a.first[1]) / (2.0 * a.cases);
    s.mean_consecutive.voted_for = Mean(static_cast<double>(a.questions[0]), a.runs[0]);
    s.mean_consecutive.voted_against = Mean(static_cast<double>(a.questions[1]), a.runs[1]);
    s.mean_sentiment =
        Mean(a.sentiment[0] + a.sentiment[1], a.questions[0] + a.questions[1]);
    s.sentiment.voted_for = Mean(a.sentiment[0], a.questions[0]);
    s.sentiment.voted_against = Mean(a.sentiment[1], a.questions[1]);
    s.distinct_ngrams = static_cast<int>(a.ngrams.size());
    out.justices.push_back(std::move(s));
  }
  return out;
}

std::string DescriptiveStats::to_tsv() const {
  std::string out = "justice\tcases\tmean_questions_for\tmean_questions_against\tdiff\n";
  for (const JusticeStats& s : justices) {
    out += s.justice + "\t" + std::to_string(s.cases) + "\t" +
           Fixed(s.mean_questions.voted_for) + "\t" + Fixed(s.mean_questions.voted_against) +
           "\t" + Fixed(s.mean_questions.diff()) + "\n";
  }
  out += "\njustice\twords_per_question_for\twords_per_question_against\tdiff\n";
  for (const JusticeStats& s : justices) {
    out += s.justice + "\t" + Fixed(s.words_per_question.voted_for) + "\t" +
           Fixed(s.words_per_question.voted_against) + "\t" +
           Fixed(s.words_per_question.diff()) + "\n";
  }
  out += "\njustice\tfirst_to_petitioner\tfirst_to_respondent\ttotal_arguments\t"
         "first_question_rate\n";
  for (const JusticeStats& s : justices) {
    out += s.justice + "\t" + std::to_string(s.first_to_petitioner) + "\t" +
           std::to_string(s.first_to_respondent) + "\t" + std::to_string(2 * s.cases) + "\t" +
           Fixed(s.first_question_rate) + "\n";
  }
  out += "\njustice\tmean_consecutive_for\tmean_consecutive_against\tdiff\n";
  for (const JusticeStats& s : justices) {
    out += s.justice + "\t" + Fixed(s.mean_consecutive.voted_for) + "\t" +
           Fixed(s.mean_consecutive.voted_against) + "\t" + Fixed(s.mean_consecutive.diff()) +
           "\n";
  }
  out += "\njustice\tmean_sentiment\tsentiment_for\tsentiment_against\tdiff\n";
  for (const JusticeStats& s : justices) {
    out += s.justice + "\t" + Fixed(s.mean_sentiment) + "\t" + Fixed(s.sentiment.voted_for) +
           "\t" + Fixed(s.sentiment.voted_against) + "\t" + Fixed(s.sentiment.diff()) + "\n";
  }
  out += "\njustice\tdistinct_ngrams\n";
  for (const JusticeStats& s : justices) {
    out += s.justice + "\t" + std::to_string(s.distinct_ngrams) + "\n";
  }
  return out;
}

std::string DescriptiveStats::to_json() const {
  json rows = json::array();
  for (const JusticeStats& s : justices) {
    rows.push_back({{"justice", s.justice},
                    {"cases", s.cases},
                    {"mean_questions", SplitJson(s.mean_questions)},
                    {"words_per_question", SplitJson(s.words_per_question)},
                    {"first_to_petitioner", s.first_to_petitioner},
                    {"first_to_respondent", s.first_to_respondent},
                    {"first_question_rate", s.first_question_rate},
                    {"mean_consecutive", SplitJson(s.mean_consecutive)},
                    {"mean_sentiment", OptJson(s.mean_sentiment)},
                    {"sentiment", SplitJson(s.sentiment)},
                    {"distinct_ngrams", s.distinct_ngrams}});
  }
  return json{{"justices", std::move(rows)}}.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Predictive n-grams

std::string_view to_string(NGramSign s) {
  return s == NGramSign::kPositive ? "positive" : "negative";
}

std::string_view to_string(RankBy r) { return r == RankBy::kWeight ? "weight" : "impact"; }

std::optional<RankBy> parse_rank_by(std::string_view s) {
  if (s == "weight") return RankBy::kWeight;
  if (s == "impact") return RankBy::kImpact;
  return std::nullopt;
}

std::vector<PredictiveNGram> top_predictive_ngrams(
    const LinearModel& model, const FeatureSpace& space, int k, NGramSign sign, Block block,
    RankBy rank_by, const std::map<std::string, double, std::less<>>* frequency) {
  if (k < 0) throw std::invalid_argument("top-k must be >= 0");
  if (model.num_columns() != space.total_columns()) {
    throw std::invalid_argument("model and feature space have different column counts");
  }
  if (rank_by == RankBy::kImpact && frequency == nullptr) {
    throw std::invalid_argument("impact ranking needs n-gram frequencies");
  }
  std::vector<PredictiveNGram> cands;
  for (const std::string& g : space.vocabulary()) {
    const int col = *space.ngram_column(g, block);
    const double w = model.weights[col];
    if (sign == NGramSign::kPositive ? !(w > 0.0) : !(w < 0.0)) continue;
    double score = w;
    if (rank_by == RankBy::kImpact) {
      const auto it = frequency->find(g);
      score = w * (it == frequency->end() ? 0.0 : it->second);
    }
    cands.push_back({g, block, w, score});
  }
  const bool desc = sign == NGramSign::kPositive;
  std::stable_sort(cands.begin(), cands.end(), [desc](const auto& a, const auto& b) {
    if (a.score != b.score) return desc ? a.score > b.score : a.score < b.score;
    return a.ngram < b.ngram;
  });
  if (cands.size() > static_cast<std::size_t>(k)) cands.resize(static_cast<std::size_t>(k));
  return cands;
}

std::map<std::string, double, std::less<>> ngram_frequency(
    const FeatureStore& store, std::string_view justice, std::span<const std::string> dockets) {
  std::map<std::string, double, std::less<>> out;
  for (const std::string& d : dockets) {
    for (const Side side : {Side::kPetitioner, Side::kRespondent}) {
      const CellFeatures* cell = store.cell(d, justice, side);
      if (cell == nullptr) continue;
      for (const auto& [g, n] : cell->ngrams) out[g] += n;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference matrix

std::optional<double> ReferenceMatrix::rate(std::size_t speaker, std::size_t referenced) const {
  const int shared = shared_cases.at(speaker).at(referenced);
  if (shared == 0) return std::nullopt;
  return 100.0 * references[speaker][referenced] / shared;
}

ReferenceMatrix interjustice_reference_matrix(const Corpus& corpus,
                                              const Normalizer& normalizer) {
  ReferenceMatrix m;
  m.justices = corpus.justices();
  const std::size_t n = m.justices.size();
  m.references.assign(n, std::vector<int>(n, 0));
  m.shared_cases.assign(n, std::vector<int>(n, 0));
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(m.justices[i], i);

  const std::string honorific = normalizer.clean_and_stem("justice");
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_stem;
  for (std::size_t i = 0; i < n; ++i) {
    by_stem[normalizer.clean_and_stem(m.justices[i])].push_back(i);
  }

  for (const CaseRecord& c : corpus.cases()) {
    std::vector<std::size_t> present;
    for (const std::string& p : c.participants()) present.push_back(index.at(p));
    for (const std::size_t a : present) {
      for (const std::size_t b : present) {
        if (a != b) ++m.shared_cases[a][b];
      }
    }
    for (const QuestionRecord& q : c.questions) {
      const std::size_t speaker = index.at(q.justice);
      const std::vector<std::string> tokens = normalizer.normalize(q.text).tokens;
      std::set<std::size_t> hit;
      for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
        if (tokens[t] != honorific) continue;
        const auto it = by_stem.find(tokens[t + 1]);
        if (it == by_stem.end()) continue;
        for (const std::size_t r : it->second) {
          if (r != speaker) hit.insert(r);
        }
      }
      for (const std::size_t r : hit) ++m.references[speaker][r];
    }
  }
  return m;
}

std::string ReferenceMatrix::to_tsv() const {
  std::string out = "speaker";
  for (const std::string& j : justices) out += "\t" + j;
  out += "\n";
  for (std::size_t a = 0; a < justices.size(); ++a) {
    out += justices[a];
    for (std::size_t b = 0; b < justices.size(); ++b) out += "\t" + Fixed(rate(a, b), "%.2f");
    out += "\n";
  }
  return out;
}

std::string ReferenceMatrix::to_json() const {
  json cells = json::array();
  for (std::size_t a = 0; a < justices.size(); ++a) {
    for (std::size_t b = 0; b < justices.size(); ++b) {
      if (a == b) continue;
      cells.push_back({{"speaker", justices[a]},
                       {"referenced", justices[b]},
                       {"references", references[a][b]},
                       {"shared_cases", shared_cases[a][b]},
                       {"per_100_cases", OptJson(rate(a, b))}});
    }
  }
  return json{{"justices", justices}, {"cells", std::move(cells)}}.dump(2) + "\n";
}

}  // namespace oralarg

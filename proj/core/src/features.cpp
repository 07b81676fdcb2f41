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

#include "oralarg/features.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "oralarg/parallel.hpp"

namespace oralarg {
namespace {

constexpr std::string_view kPositiveWords[] = {
    "agree",      "agreed",     "appreciate", "benefit",  "best",       "better",
    "clear",      "compelling", "correct",    "excellent", "fair",      "favorable",
    "fine",       "fortunate",  "funny",      "glad",     "good",       "great",
    "happy",      "helpful",    "important",  "interesting", "legitimate", "nice",
    "perfect",    "persuasive", "pleased",    "positive", "proper",     "reasonable",
    "right",      "sensible",   "sound",      "strong",   "succeed",    "super",
    "sure",       "thank",      "thanks",     "true",     "useful",     "valid",
    "welcome",    "wise",       "witty",      "wonderful"};

constexpr std::string_view kNegativeWords[] = {
    "absurd",    "awful",       "bad",        "concern",   "concerned", "confused",
    "confusing", "crazy",       "difficult",  "doubt",     "error",     "fail",
    "failed",    "false",       "harm",       "hard",      "illegal",   "improper",
    "incorrect", "invalid",     "mistake",    "nonsense",  "odd",       "problem",
    "problematic", "ridiculous", "silly",     "skeptical", "strange",   "terrible",
    "trouble",   "troubled",    "troubling",  "unclear",   "unfair",    "unreasonable",
    "weak",      "worried",     "worry",      "worse",     "worst",     "wrong"};

void AddValence(std::unordered_map<std::string, int>& table, const Normalizer& normalizer,
                std::string_view word, int valence) {
  const std::string key = normalizer.clean_and_stem(word);
  if (key.empty()) throw std::invalid_argument("empty valence lexicon entry");
  const auto [it, inserted] = table.emplace(key, valence);
  if (!inserted && it->second != valence) {
    throw std::invalid_argument("valence lexicon stem '" + key +
                                "' has conflicting polarities");
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view TrimView(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Sentiment

LexiconScorer::LexiconScorer() {
  for (const std::string_view w : kPositiveWords) AddValence(valence_, normalizer_, w, +1);
  for (const std::string_view w : kNegativeWords) AddValence(valence_, normalizer_, w, -1);
}

LexiconScorer::LexiconScorer(std::unordered_map<std::string, int> valence,
                             Normalizer normalizer)
    : valence_(std::move(valence)), normalizer_(std::move(normalizer)) {}

LexiconScorer LexiconScorer::FromText(std::string_view text, Normalizer normalizer) {
  std::unordered_map<std::string, int> table;
  for (const std::string& line : parse_word_list(text)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::invalid_argument("valence line needs word<TAB>+1|-1: " + line);
    }
    const std::string_view value = TrimView(std::string_view(line).substr(tab + 1));
    int valence = 0;
    if (value == "+1" || value == "1") {
      valence = +1;
    } else if (value == "-1") {
      valence = -1;
    } else {
      throw std::invalid_argument("valence must be +1 or -1: " + line);
    }
    AddValence(table, normalizer, line.substr(0, tab), valence);
  }
  return LexiconScorer(std::move(table), std::move(normalizer));
}

LexiconScorer LexiconScorer::FromFile(const std::string& path, Normalizer normalizer) {
  return FromText(ReadFile(path), std::move(normalizer));
}

int LexiconScorer::valence(std::string_view word) const {
  const std::string key = normalizer_.clean_and_stem(word);
  if (key.empty()) return 0;
  const auto it = valence_.find(key);
  return it == valence_.end() ? 0 : it->second;
}

int LexiconScorer::score(std::string_view sentence) const {
  int total = 3;
  for (const std::string& w : tokenize_raw(sentence).words) total += valence(w);
  return std::clamp(total, 1, 5);
}

SentimentSidecar SentimentSidecar::Parse(std::string_view csv) {
  SentimentSidecar out;
  std::size_t pos = 0;
  int line_no = 0;
  bool header_seen = false;
  while (pos < csv.size()) {
    auto end = csv.find('\n', pos);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view line = TrimView(csv.substr(pos, end - pos));
    const std::size_t line_offset = pos;
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "docket,utterance_seq,score") {
        throw SchemaError("sentiment sidecar header must be docket,utterance_seq,score");
      }
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError("sentiment sidecar line " + std::to_string(line_no) +
                           ": expected 3 fields",
                       line_offset);
    }
    const std::string docket(line.substr(0, c1));
    int seq = 0;
    int score = 0;
    const std::string_view seq_text = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string_view score_text = line.substr(c2 + 1);
    const auto r1 = std::from_chars(seq_text.data(), seq_text.data() + seq_text.size(), seq);
    const auto r2 =
        std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
    if (r1.ec != std::errc{} || r1.ptr != seq_text.data() + seq_text.size() ||
        r2.ec != std::errc{} || r2.ptr != score_text.data() + score_text.size()) {
      throw ParseError("sentiment sidecar line " + std::to_string(line_no) +
                           ": non-integer field",
                       line_offset);
    }
    if (score < 1 || score > 5) {
      throw SchemaError("sentiment sidecar line " + std::to_string(line_no) +
                        ": score must be in 1..5");
    }
    if (!out.scores_.emplace(std::make_pair(docket, seq), score).second) {
      throw SchemaError("sentiment sidecar line " + std::to_string(line_no) +
                        ": duplicate (docket, utterance_seq)");
    }
  }
  if (!header_seen) throw SchemaError("sentiment sidecar is empty (header required)");
  return out;
}

SentimentSidecar SentimentSidecar::Load(const std::string& path) {
  return Parse(ReadFile(path));
}

std::optional<int> SentimentSidecar::lookup(std::string_view docket, int seq) const {
  const auto it = scores_.find(std::make_pair(std::string(docket), seq));
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

bool SentimentSidecar::covers(std::string_view docket) const {
  const auto it = scores_.lower_bound(std::make_pair(std::string(docket), INT32_MIN));
  return it != scores_.end() && it->first.first == docket;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '.' || text[i] == '?' || text[i] == '!') {
      const std::string_view piece = TrimView(text.substr(start, i - start));
      if (!piece.empty()) out.emplace_back(piece);
      start = i + 1;
    }
  }
  if (out.empty()) out.emplace_back(TrimView(text));
  return out;
}

double question_sentiment(const QuestionRecord& q, const SentimentScorer& scorer,
                          const SentimentSidecar* sidecar) {
  if (sidecar != nullptr) {
    if (const auto s = sidecar->lookup(q.docket, q.seq)) return *s;
  }
  const std::vector<std::string> sentences = split_sentences(q.text);
  double sum = 0.0;
  for (const std::string& s : sentences) sum += scorer.score(s);
  return sum / static_cast<double>(sentences.size());
}

// ---------------------------------------------------------------------------
// Cell extractors

CountFeatures count_features(QuestionRefs cell, int justice_total) {
  CountFeatures out;
  out.num_questions = static_cast<int>(cell.size());
  if (!cell.empty()) {
    double words = 0.0;
    for (const QuestionRecord* q : cell) words += tokenize_raw(q->text).raw_word_count;
    out.ave_words = words / static_cast<double>(cell.size());
  }
  out.percent = justice_total > 0 ? static_cast<double>(cell.size()) / justice_total : 0.0;
  return out;
}

ChronologyFeatures chronology_features(QuestionRefs side_questions, std::string_view justice) {
  ChronologyFeatures out;
  out.first_question_index = static_cast<int>(side_questions.size()) + 1;
  int runs = 0;
  int asked = 0;
  bool in_run = false;
  for (std::size_t i = 0; i < side_questions.size(); ++i) {
    const bool mine = side_questions[i]->justice == justice;
    if (mine) {
      if (asked == 0) out.first_question_index = static_cast<int>(i) + 1;
      ++asked;
      if (!in_run) ++runs;
    }
    in_run = mine;
  }
  if (runs > 0) out.ave_consecutive = static_cast<double>(asked) / runs;
  return out;
}

SentimentFeatures sentiment_features(QuestionRefs cell, const SentimentScorer& scorer,
                                     const SentimentSidecar* sidecar) {
  SentimentFeatures out;
  if (cell.empty()) return out;
  double sum = 0.0;
  for (const QuestionRecord* q : cell) sum += question_sentiment(*q, scorer, sidecar);
  out.ave_sentiment = sum / static_cast<double>(cell.size());
  return out;
}

NGramCounts ngram_features(QuestionRefs cell, const Normalizer& normalizer, int n_min,
                           int n_max) {
  NGramCounts counts;
  for (const QuestionRecord* q : cell) {
    const TokenList tokens = normalizer.normalize(q->text);
    accumulate_ngrams(tokens.tokens, n_min, n_max, counts);
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Store

FeatureStore FeatureStore::Build(const Corpus& corpus, const Normalizer& normalizer,
                                 const SentimentScorer& scorer,
                                 const SentimentSidecar* sidecar,
                                 const FeatureOptions& options) {
  // Validates the range once, up front.
  (void)window_count(0, options.n_min, options.n_max);

  FeatureStore store;
  store.corpus_ = &corpus;
  store.options_ = options;
  const auto& cases = corpus.cases();
  std::vector<CaseFeatures> built(cases.size());

  parallel_for(cases.size(), options.workers, [&](std::size_t idx) {
    const CaseRecord& c = cases[idx];
    CaseFeatures& out = built[idx];
    const std::size_t nq = c.questions.size();
    out.scores.resize(nq);
    out.tokens.resize(nq);
    for (std::size_t i = 0; i < nq; ++i) {
      out.scores[i] = question_sentiment(c.questions[i], scorer, sidecar);
      out.tokens[i] = normalizer.normalize(c.questions[i].text);
    }

    std::array<std::vector<const QuestionRecord*>, 2> by_side;
    for (const QuestionRecord& q : c.questions) by_side[side_index(q.target_side)].push_back(&q);

    for (const std::string& justice : c.participants()) {
      CasePair& pair = out.cells[justice];
      int total = 0;
      for (const QuestionRecord& q : c.questions) total += q.justice == justice ? 1 : 0;
      for (const Side side : {Side::kPetitioner, Side::kRespondent}) {
        CellFeatures& cell = pair[side_index(side)];
        std::vector<const QuestionRecord*> mine;
        double score_sum = 0.0;
        for (std::size_t i = 0; i < nq; ++i) {
          const QuestionRecord& q = c.questions[i];
          if (q.justice != justice || q.target_side != side) continue;
          mine.push_back(&q);
          score_sum += out.scores[i];
          accumulate_ngrams(out.tokens[i].tokens, options.n_min, options.n_max, cell.ngrams);
        }
        cell.counts = count_features(mine, total);
        cell.chronology = chronology_features(by_side[side_index(side)], justice);
        if (!mine.empty()) cell.sentiment.ave_sentiment = score_sum / mine.size();
      }
    }
  });

  for (std::size_t i = 0; i < cases.size(); ++i) {
    store.cases_.emplace(cases[i].docket(), std::move(built[i]));
  }
  return store;
}

const CellFeatures* FeatureStore::cell(std::string_view docket, std::string_view justice,
                                       Side side) const {
  const auto c = cases_.find(docket);
  if (c == cases_.end()) return nullptr;
  const auto j = c->second.cells.find(justice);
  if (j == c->second.cells.end()) return nullptr;
  return &j->second[side_index(side)];
}

const std::vector<double>* FeatureStore::question_scores(std::string_view docket) const {
  const auto c = cases_.find(docket);
  return c == cases_.end() ? nullptr : &c->second.scores;
}

const std::vector<TokenList>* FeatureStore::question_tokens(std::string_view docket) const {
  const auto c = cases_.find(docket);
  return c == cases_.end() ? nullptr : &c->second.tokens;
}

}  // namespace oralarg

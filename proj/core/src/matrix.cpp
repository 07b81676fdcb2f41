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

#include "oralarg/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace oralarg {
namespace {

constexpr std::string_view kDenseNames[kDenseFeaturesPerSide] = {
    "num_questions",  "ave_words",      "percent_questions",
    "first_question", "ave_consecutive", "ave_sentiment"};

constexpr std::string_view kCategoryNames[kNumCategories] = {"counts", "chronology",
                                                             "sentiment", "ngrams", "party"};

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t FnvMix(std::uint64_t h, std::string_view s) {
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  h ^= '\n';
  h *= kFnvPrime;
  return h;
}

// Value of a dense feature. Undefined means (no questions) map to neutral
// values: zero words, zero run length, sentiment 3.
double DenseValue(const CellFeatures& cell, DenseFeature f) {
  switch (f) {
    case DenseFeature::kNumQuestions:
      return cell.counts.num_questions;
    case DenseFeature::kAveWords:
      return cell.counts.ave_words.value_or(0.0);
    case DenseFeature::kPercentQuestions:
      return cell.counts.percent;
    case DenseFeature::kFirstQuestion:
      return cell.chronology.first_question_index;
    case DenseFeature::kAveConsecutive:
      return cell.chronology.ave_consecutive.value_or(0.0);
    case DenseFeature::kAveSentiment:
      return cell.sentiment.ave_sentiment.value_or(3.0);
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(Category c) { return kCategoryNames[static_cast<int>(c)]; }

std::optional<Category> parse_category(std::string_view s) {
  for (int i = 0; i < kNumCategories; ++i) {
    if (kCategoryNames[i] == s) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::string CategorySet::name() const {
  std::string out;
  for (const Category c : {Category::kNGrams, Category::kCounts, Category::kChronology,
                           Category::kSentiment, Category::kParty}) {
    if (!contains(c)) continue;
    if (!out.empty()) out.push_back('+');
    out += to_string(c);
  }
  return out.empty() ? "none" : out;
}

Category category_of(DenseFeature f) {
  switch (f) {
    case DenseFeature::kNumQuestions:
    case DenseFeature::kAveWords:
    case DenseFeature::kPercentQuestions:
      return Category::kCounts;
    case DenseFeature::kFirstQuestion:
    case DenseFeature::kAveConsecutive:
      return Category::kChronology;
    case DenseFeature::kAveSentiment:
      return Category::kSentiment;
  }
  return Category::kCounts;
}

// ---------------------------------------------------------------------------
// FeatureSpace

FeatureSpace::FeatureSpace(std::vector<std::string> vocabulary)
    : vocabulary_(std::move(vocabulary)) {
  std::sort(vocabulary_.begin(), vocabulary_.end());
  vocabulary_.erase(std::unique(vocabulary_.begin(), vocabulary_.end()), vocabulary_.end());
  std::uint64_t h = kFnvOffset;
  for (int col = 0; col < total_columns(); ++col) h = FnvMix(h, column_name(col));
  fingerprint_ = h;
}

std::optional<int> FeatureSpace::ngram_column(std::string_view ngram, Block block) const {
  const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), ngram);
  if (it == vocabulary_.end() || *it != ngram) return std::nullopt;
  const int idx = static_cast<int>(it - vocabulary_.begin());
  return kFirstNGramColumn + static_cast<int>(block) * vocab_size() + idx;
}

int FeatureSpace::dense_column(DenseFeature f, bool opponent) const {
  return (opponent ? kDenseFeaturesPerSide : 0) + static_cast<int>(f);
}

std::optional<std::pair<std::string_view, Block>> FeatureSpace::ngram_of(int col) const {
  if (col < kFirstNGramColumn || col >= total_columns()) return std::nullopt;
  const int rel = col - kFirstNGramColumn;
  const Block block = rel < vocab_size() ? Block::kToParty : Block::kToOpponent;
  return std::make_pair(std::string_view(vocabulary_[rel % vocab_size()]), block);
}

std::string FeatureSpace::column_name(int col) const {
  if (col < 0 || col >= total_columns()) {
    throw std::out_of_range("column id " + std::to_string(col) + " outside feature space");
  }
  if (col < kDenseColumns) {
    const bool opp = col >= kDenseFeaturesPerSide;
    return std::string(opp ? "opponent." : "party.") +
           std::string(kDenseNames[col % kDenseFeaturesPerSide]);
  }
  if (col == kPartyColumn) return "party_flag";
  const auto ng = ngram_of(col);
  return std::string(ng->second == Block::kToParty ? "to_party:" : "to_opponent:") +
         std::string(ng->first);
}

Category FeatureSpace::category(int col) const {
  if (col < kDenseColumns) {
    return category_of(static_cast<DenseFeature>(col % kDenseFeaturesPerSide));
  }
  if (col == kPartyColumn) return Category::kParty;
  return Category::kNGrams;
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

std::string FeatureSpace::to_json() const {
  nlohmann::json doc;
  doc["fingerprint"] = fingerprint_hex(fingerprint_);
  doc["total_columns"] = total_columns();
  nlohmann::json cols = nlohmann::json::array();
  for (int c = 0; c < total_columns(); ++c) cols.push_back(column_name(c));
  doc["columns"] = std::move(cols);
  return doc.dump(1) + "\n";
}

FeatureSpace FeatureSpace::FromJson(std::string_view text) {
  const nlohmann::json doc = nlohmann::json::parse(text.begin(), text.end());
  const auto& cols = doc.at("columns");
  if (!cols.is_array() || cols.size() < static_cast<std::size_t>(kFirstNGramColumn) ||
      (cols.size() - kFirstNGramColumn) % 2 != 0) {
    throw std::invalid_argument("feature space JSON has a malformed column list");
  }
  const std::size_t vocab = (cols.size() - kFirstNGramColumn) / 2;
  std::vector<std::string> words;
  words.reserve(vocab);
  constexpr std::string_view kPrefix = "to_party:";
  for (std::size_t i = 0; i < vocab; ++i) {
    const std::string name = cols[kFirstNGramColumn + i].get<std::string>();
    if (!name.starts_with(kPrefix)) {
      throw std::invalid_argument("feature space JSON: expected to_party column, got " + name);
    }
    words.push_back(name.substr(kPrefix.size()));
  }
  FeatureSpace space(std::move(words));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].get<std::string>() != space.column_name(static_cast<int>(c))) {
      throw std::invalid_argument("feature space JSON column " + std::to_string(c) +
                                  " is out of canonical order");
    }
  }
  if (doc.contains("fingerprint") &&
      doc["fingerprint"].get<std::string>() != fingerprint_hex(space.fingerprint())) {
    throw std::invalid_argument("feature space JSON fingerprint mismatch");
  }
  return space;
}

// ---------------------------------------------------------------------------
// Rows

std::vector<std::string> voted_dockets(const Corpus& corpus, std::string_view justice) {
  std::vector<std::string> out;
  for (const CaseRecord& c : corpus.cases()) {
    if (c.usable_for_matrix && c.vote_of(std::string(justice))) out.push_back(c.docket());
  }
  return out;
}

std::vector<std::string> vocabulary_of(const FeatureStore& store, std::string_view justice,
                                       std::span<const std::string> dockets, bool* spoke) {
  std::set<std::string_view> vocab;
  bool any = false;
  for (const std::string& d : dockets) {
    for (const Side side : {Side::kPetitioner, Side::kRespondent}) {
      const CellFeatures* cell = store.cell(d, justice, side);
      if (cell == nullptr) continue;
      any |= cell->counts.num_questions > 0;
      for (const auto& [ngram, count] : cell->ngrams) vocab.insert(ngram);
    }
  }
  if (spoke != nullptr) *spoke = any;
  return {vocab.begin(), vocab.end()};
}

FeatureSpace build_feature_space(const FeatureStore& store, std::string_view justice,
                                 std::span<const std::string> dockets) {
  std::vector<std::string> all;
  if (dockets.empty()) {
    for (const CaseRecord& c : store.corpus().cases()) {
      if (c.usable_for_matrix) all.push_back(c.docket());
    }
    dockets = all;
  }
  bool spoke = false;
  std::vector<std::string> vocab = vocabulary_of(store, justice, dockets, &spoke);
  if (!spoke) {
    throw std::invalid_argument("justice '" + std::string(justice) +
                                "' has no question history in the selected cases");
  }
  return FeatureSpace(std::move(vocab));
}

SparseVector vectorize_row(const CellFeatures& to_party, const CellFeatures& to_opponent,
                           Side side, const FeatureSpace& space, CategorySet categories) {
  SparseVector x;
  for (int f = 0; f < kDenseFeaturesPerSide; ++f) {
    const auto feature = static_cast<DenseFeature>(f);
    if (categories.contains(category_of(feature))) {
      x.emplace_back(space.dense_column(feature, false), DenseValue(to_party, feature));
    }
  }
  for (int f = 0; f < kDenseFeaturesPerSide; ++f) {
    const auto feature = static_cast<DenseFeature>(f);
    if (categories.contains(category_of(feature))) {
      x.emplace_back(space.dense_column(feature, true), DenseValue(to_opponent, feature));
    }
  }
  if (categories.contains(Category::kParty)) {
    x.emplace_back(kPartyColumn, side == Side::kPetitioner ? 1.0 : 0.0);
  }
  if (categories.contains(Category::kNGrams)) {
    // Both maps iterate in lexicographic order, matching column order.
    for (const Block block : {Block::kToParty, Block::kToOpponent}) {
      const NGramCounts& counts =
          block == Block::kToParty ? to_party.ngrams : to_opponent.ngrams;
      for (const auto& [ngram, count] : counts) {
        if (const auto col = space.ngram_column(ngram, block)) {
          x.emplace_back(*col, static_cast<double>(count));
        }
      }
    }
  }
  return x;
}

std::vector<LabeledRow> assemble_rows(const FeatureStore& store, std::string_view justice,
                                      const FeatureSpace& space, CategorySet categories,
                                      std::span<const std::string> dockets,
                                      std::vector<std::string>* log) {
  const std::string who(justice);
  std::vector<std::string> all;
  if (dockets.empty()) {
    for (const CaseRecord& c : store.corpus().cases()) {
      if (c.usable_for_matrix) all.push_back(c.docket());
    }
    dockets = all;
  }
  std::vector<LabeledRow> rows;
  rows.reserve(2 * dockets.size());
  for (const std::string& d : dockets) {
    const CaseRecord* c = store.corpus().find(d);
    if (c == nullptr || !c->usable_for_matrix) continue;
    const auto vote = c->vote_of(who);
    const CellFeatures* pet = store.cell(d, justice, Side::kPetitioner);
    const CellFeatures* resp = store.cell(d, justice, Side::kRespondent);
    if (!vote) {
      if (log != nullptr && pet != nullptr) {
        log->push_back("docket " + d + ": " + who + " has no recorded vote; case skipped");
      }
      continue;
    }
    if (pet == nullptr || resp == nullptr) continue;
    for (const Side side : {Side::kPetitioner, Side::kRespondent}) {
      LabeledRow row;
      row.docket = d;
      row.side = side;
      row.label = side == *vote ? +1 : -1;
      row.x = side == Side::kPetitioner ? vectorize_row(*pet, *resp, side, space, categories)
                                        : vectorize_row(*resp, *pet, side, space, categories);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Scaling

ScalingParams fit_scaling(std::span<const LabeledRow> rows) {
  ScalingParams p;
  std::array<double, kDenseColumns> sum{};
  std::array<double, kDenseColumns> n{};
  for (const LabeledRow& r : rows) {
    for (const auto& [col, v] : r.x) {
      if (col >= kDenseColumns) break;
      sum[col] += v;
      n[col] += 1;
    }
  }
  for (int c = 0; c < kDenseColumns; ++c) p.mean[c] = n[c] > 0 ? sum[c] / n[c] : 0.0;
  std::array<double, kDenseColumns> sq{};
  for (const LabeledRow& r : rows) {
    for (const auto& [col, v] : r.x) {
      if (col >= kDenseColumns) break;
      const double d = v - p.mean[col];
      sq[col] += d * d;
    }
  }
  for (int c = 0; c < kDenseColumns; ++c) {
    const double sd = n[c] > 0 ? std::sqrt(sq[c] / n[c]) : 0.0;
    p.stddev[c] = sd > 1e-12 * std::max(1.0, std::abs(p.mean[c])) ? sd : 0.0;
  }
  return p;
}

void apply_scaling(std::vector<LabeledRow>& rows, const ScalingParams& params) {
  for (LabeledRow& r : rows) {
    for (auto& [col, v] : r.x) {
      if (col < kDenseColumns) {
        v = params.stddev[col] > 0 ? (v - params.mean[col]) / params.stddev[col] : 0.0;
      } else if (col >= kFirstNGramColumn) {
        v = std::log1p(v);
      }
    }
  }
}

ScalingParams scale_dense(std::vector<LabeledRow>& rows,
                          const std::optional<ScalingParams>& params) {
  const ScalingParams p = params ? *params : fit_scaling(rows);
  apply_scaling(rows, p);
  return p;
}

// ---------------------------------------------------------------------------
// Export

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string write_sparse_matrix(std::span<const LabeledRow> rows) {
  std::string out;
  for (const LabeledRow& r : rows) {
    out += r.label > 0 ? "+1" : "-1";
    for (const auto& [col, v] : r.x) {
      out.push_back(' ');
      out += std::to_string(col);
      out.push_back(':');
      out += format_double(v);
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<SparseMatrixRow> read_sparse_matrix(std::string_view text) {
  std::vector<SparseMatrixRow> rows;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "sparse matrix line " + std::to_string(line_no);
    SparseMatrixRow row;
    std::size_t i = 0;
    auto next_token = [&]() -> std::string_view {
      while (i < line.size() && line[i] == ' ') ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ') ++i;
      return line.substr(start, i - start);
    };
    const std::string_view label = next_token();
    if (label == "+1" || label == "1") {
      row.label = 1;
    } else if (label == "-1") {
      row.label = -1;
    } else {
      throw std::invalid_argument(where + ": bad label '" + std::string(label) + "'");
    }
    for (std::string_view tok = next_token(); !tok.empty(); tok = next_token()) {
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) throw std::invalid_argument(where + ": missing ':'");
      int col = 0;
      double v = 0;
      const auto r1 = std::from_chars(tok.data(), tok.data() + colon, col);
      const auto r2 = std::from_chars(tok.data() + colon + 1, tok.data() + tok.size(), v);
      if (r1.ec != std::errc{} || r1.ptr != tok.data() + colon || r2.ec != std::errc{} ||
          r2.ptr != tok.data() + tok.size()) {
        throw std::invalid_argument(where + ": bad entry '" + std::string(tok) + "'");
      }
      if (!row.x.empty() && row.x.back().first >= col) {
        throw std::invalid_argument(where + ": columns must be strictly ascending");
      }
      row.x.emplace_back(col, v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace oralarg

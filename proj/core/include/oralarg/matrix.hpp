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

// Per-justice labeled sparse matrices.
//
// Column layout of a FeatureSpace with vocabulary size V:
//
//   [0, 6)          dense features of the questioned party
//   [6, 12)         the same six features toward the party's opponent
//   12              party flag (1 on the petitioner row)
//   [13, 13+V)      n-gram counts spoken to the party, lexicographic
//   [13+V, 13+2V)   n-gram counts spoken to the opponent, lexicographic
#ifndef ORALARG_MATRIX_HPP_
#define ORALARG_MATRIX_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oralarg/features.hpp"
#include "oralarg/ingest.hpp"

namespace oralarg {

enum class Category { kCounts = 0, kChronology, kSentiment, kNGrams, kParty };
inline constexpr int kNumCategories = 5;

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view s);

// A set of feature categories; the party flag is part of every set built by
// the factory helpers, matching how every model run includes it.
class CategorySet {
 public:
  constexpr CategorySet() = default;

  static constexpr CategorySet All() { return CategorySet(0x1F); }
  static constexpr CategorySet PartyOnly() { return CategorySet(Bit(Category::kParty)); }
  static constexpr CategorySet Of(std::initializer_list<Category> cats) {
    unsigned bits = Bit(Category::kParty);
    for (const Category c : cats) bits |= Bit(c);
    return CategorySet(bits);
  }

  constexpr bool contains(Category c) const { return (bits_ & Bit(c)) != 0; }
  constexpr bool operator==(const CategorySet&) const = default;
  // e.g. "ngrams+counts+party"
  std::string name() const;

 private:
  constexpr explicit CategorySet(unsigned bits) : bits_(bits) {}
  static constexpr unsigned Bit(Category c) { return 1u << static_cast<unsigned>(c); }

  unsigned bits_ = 0;
};

enum class DenseFeature {
  kNumQuestions = 0,
  kAveWords,
  kPercentQuestions,
  kFirstQuestion,
  kAveConsecutive,
  kAveSentiment,
};
inline constexpr int kDenseFeaturesPerSide = 6;
inline constexpr int kDenseColumns = 2 * kDenseFeaturesPerSide;
inline constexpr int kPartyColumn = kDenseColumns;
inline constexpr int kFirstNGramColumn = kPartyColumn + 1;

enum class Block { kToParty = 0, kToOpponent = 1 };

Category category_of(DenseFeature f);

// Sorted by column id, no duplicate ids.
using SparseVector = std::vector<std::pair<int, double>>;

class FeatureSpace {
 public:
  FeatureSpace() = default;
  // Sorts and deduplicates `vocabulary`.
  explicit FeatureSpace(std::vector<std::string> vocabulary);

  int total_columns() const { return kFirstNGramColumn + 2 * vocab_size(); }
  int vocab_size() const { return static_cast<int>(vocabulary_.size()); }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }

  std::optional<int> ngram_column(std::string_view ngram, Block block) const;
  int dense_column(DenseFeature f, bool opponent) const;

  std::string column_name(int col) const;
  Category category(int col) const;
  // For n-gram columns: the n-gram string and block.
  std::optional<std::pair<std::string_view, Block>> ngram_of(int col) const;

  // FNV-1a over the ordered column names.
  std::uint64_t fingerprint() const { return fingerprint_; }

  // {"fingerprint": "<hex>", "total_columns": N, "columns": [name per id]}
  std::string to_json() const;
  static FeatureSpace FromJson(std::string_view json);

  bool operator==(const FeatureSpace& other) const {
    return vocabulary_ == other.vocabulary_;
  }

 private:
  std::vector<std::string> vocabulary_;
  std::uint64_t fingerprint_ = 0;
};

std::string fingerprint_hex(std::uint64_t fp);

// Every n-gram the justice spoke (either side) in `dockets`, sorted.
// `spoke` is set when the justice asked at least one question there.
std::vector<std::string> vocabulary_of(const FeatureStore& store, std::string_view justice,
                                       std::span<const std::string> dockets,
                                       bool* spoke = nullptr);

// Vocabulary = every n-gram the justice spoke (either side) in `dockets`
// (all matrix-usable cases when empty). Throws std::invalid_argument when the
// justice asked no questions there.
FeatureSpace build_feature_space(const FeatureStore& store, std::string_view justice,
                                 std::span<const std::string> dockets = {});

struct LabeledRow {
  std::string docket;
  Side side = Side::kPetitioner;
  int label = 0;  // +1 justice voted for this side, -1 against
  SparseVector x;
};

// Dense and party entries are always materialized for selected categories;
// n-grams missing from the space are dropped.
SparseVector vectorize_row(const CellFeatures& to_party, const CellFeatures& to_opponent,
                           Side side, const FeatureSpace& space,
                           CategorySet categories = CategorySet::All());

// Two rows per case the justice voted in (petitioner row first). Cases where
// the justice spoke but has no recorded vote are skipped and described in
// `log` when given.
std::vector<LabeledRow> assemble_rows(const FeatureStore& store, std::string_view justice,
                                      const FeatureSpace& space,
                                      CategorySet categories = CategorySet::All(),
                                      std::span<const std::string> dockets = {},
                                      std::vector<std::string>* log = nullptr);

// Dockets (sorted) of matrix-usable cases in which the justice voted.
std::vector<std::string> voted_dockets(const Corpus& corpus, std::string_view justice);

struct ScalingParams {
  std::array<double, kDenseColumns> mean{};
  std::array<double, kDenseColumns> stddev{};  // 0 marks a constant column

  bool operator==(const ScalingParams&) const = default;
};

// Mean and population standard deviation of each dense column.
ScalingParams fit_scaling(std::span<const LabeledRow> rows);

// z-scores dense columns (constant columns become 0), maps n-gram counts
// x -> log(1 + x), leaves the party flag alone.
void apply_scaling(std::vector<LabeledRow>& rows, const ScalingParams& params);

// Fits on `rows` unless `params` is given, then applies.
ScalingParams scale_dense(std::vector<LabeledRow>& rows,
                          const std::optional<ScalingParams>& params = std::nullopt);

// One row per line: `<+1|-1> <col>:<value> ...`, columns ascending, values in
// shortest round-trip form.
std::string write_sparse_matrix(std::span<const LabeledRow> rows);
struct SparseMatrixRow {
  int label = 0;
  SparseVector x;
  bool operator==(const SparseMatrixRow&) const = default;
};
std::vector<SparseMatrixRow> read_sparse_matrix(std::string_view text);

std::string format_double(double v);

}  // namespace oralarg

#endif  // ORALARG_MATRIX_HPP_

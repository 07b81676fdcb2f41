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

// Tokenization, normalization and n-gram enumeration for question text.
//
// The pipeline for one utterance is:
//   raw text -> whitespace words (tokenize_raw)
//            -> lowercase, strip non-alphanumerics, drop stop words, stem
//               (Normalizer::normalize)
//            -> contiguous n-gram windows (enumerate_ngrams)
#ifndef ORALARG_TEXT_HPP_
#define ORALARG_TEXT_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace oralarg {

inline constexpr int kMaxNGram = 5;

struct RawWords {
  std::vector<std::string> words;
  int raw_word_count = 0;
};

// Normalized tokens of one utterance. Tokens are lowercase [a-z0-9]+ stems
// with stop words removed.
struct TokenList {
  std::vector<std::string> tokens;
  int raw_word_count = 0;

  bool operator==(const TokenList&) const = default;
};

// An n-gram is its tokens joined by single spaces. Counts are kept in an
// ordered map so every downstream iteration is deterministic.
using NGramCounts = std::map<std::string, int>;

// Splits on Unicode whitespace (UTF-8 input). Empty segments are dropped.
RawWords tokenize_raw(std::string_view text);

// Lowercases ASCII letters and removes every byte that is not [a-z0-9].
// Returns an empty string when nothing survives.
std::string strip_to_alnum(std::string_view word);

// Classic Porter (1980) stemmer over a lowercase ASCII word.
std::string porter_stem(std::string_view word);

// One line-oriented config list: one entry per line, '#' starts a comment,
// surrounding whitespace ignored.
std::vector<std::string> parse_word_list(std::string_view text);
std::vector<std::string> load_word_list(const std::string& path);

// Built-in stop-word list (versioned, mirrors config/stopwords.txt).
std::span<const std::string_view> default_stop_words();
inline constexpr std::string_view kStopWordListVersion = "oralarg-stop-1";

// Stemmer exceptions. A line with a single word protects it from stemming;
// "word<TAB>stem" forces a specific stem.
struct StemExceptions {
  std::unordered_map<std::string, std::string> overrides;

  static StemExceptions Parse(std::string_view text);
};

class Normalizer {
 public:
  // Default stop list, no stemmer exceptions.
  Normalizer();
  Normalizer(std::vector<std::string> stop_words, StemExceptions exceptions,
             bool stem = true);

  TokenList normalize(std::span<const std::string> raw_words) const;
  TokenList normalize(std::string_view text) const;

  // Lowercase + strip + stem, without stop-word removal. Empty when the word
  // has no alphanumeric characters.
  std::string clean_and_stem(std::string_view word) const;

  std::string stem(std::string_view cleaned) const;
  bool is_stop_word(std::string_view cleaned) const;
  bool stemming() const { return stem_; }

 private:
  std::unordered_set<std::string> stop_words_;
  StemExceptions exceptions_;
  bool stem_ = true;
};

// All contiguous windows of n_min..n_max tokens, with multiplicities.
// Throws std::invalid_argument unless 1 <= n_min <= n_max <= 5.
NGramCounts enumerate_ngrams(const TokenList& tokens, int n_min, int n_max);

// Adds the windows of `tokens` into `counts` (same range contract).
void accumulate_ngrams(std::span<const std::string> tokens, int n_min, int n_max,
                       NGramCounts& counts);

// Number of windows (with multiplicity) over t tokens for n in [n_min, n_max].
std::size_t window_count(std::size_t token_count, int n_min, int n_max);

}  // namespace oralarg

#endif  // ORALARG_TEXT_HPP_

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

#include "oralarg/text.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oralarg {
namespace {

constexpr std::string_view kDefaultStopWords[] = {
    // articles
    "a", "an", "the",
    // pronouns
    "i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves",
    "you", "your", "yours", "yourself", "yourselves", "he", "him", "his",
    "himself", "she", "her", "hers", "herself", "it", "its", "itself", "they",
    "them", "their", "theirs", "themselves", "this", "that", "these", "those",
    "who", "whom", "whose", "which", "what",
    // prepositions
    "about", "above", "across", "after", "against", "along", "among", "around",
    "at", "before", "behind", "below", "beneath", "beside", "between",
    "beyond", "by", "down", "during", "for", "from", "in", "inside", "into",
    "near", "of", "off", "on", "onto", "out", "outside", "over", "through",
    "to", "toward", "towards", "under", "until", "up", "upon", "with",
    "within", "without",
    // conjunctions
    "and", "but", "or", "nor", "so", "than", "as", "if", "because", "while",
    // auxiliaries
    "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "will", "would", "shall",
    "should", "can", "could", "may", "might", "must",
    // contractions
    "id", "im", "ive", "youre", "youve", "youd", "youll", "hes", "shes",
    "weve", "theyre", "theyve", "theyd", "thats", "theres", "whats", "lets"};

// Decodes one UTF-8 code point starting at text[i] and advances i. A malformed
// sequence yields its lead byte, so it can never be mistaken for whitespace.
char32_t DecodeUtf8(std::string_view text, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  int extra = 0;
  char32_t cp = lead;
  if (lead >= 0xF0 && lead < 0xF8) {
    extra = 3;
    cp = lead & 0x07;
  } else if (lead >= 0xE0 && lead < 0xF0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if (lead >= 0xC0 && lead < 0xE0) {
    extra = 1;
    cp = lead & 0x1F;
  }
  if (i + extra >= text.size() + 1) {
    ++i;
    return lead;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto c = static_cast<unsigned char>(text[i + k]);
    if ((c & 0xC0) != 0x80) {
      ++i;
      return lead;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  i += 1 + extra;
  return cp;
}

bool IsUnicodeSpace(char32_t cp) {
  switch (cp) {
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case U' ':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

RawWords tokenize_raw(std::string_view text) {
  RawWords out;
  std::size_t i = 0;
  std::size_t word_start = std::string_view::npos;
  while (i < text.size()) {
    const std::size_t at = i;
    const char32_t cp = DecodeUtf8(text, i);
    if (IsUnicodeSpace(cp)) {
      if (word_start != std::string_view::npos) {
        out.words.emplace_back(text.substr(word_start, at - word_start));
        word_start = std::string_view::npos;
      }
    } else if (word_start == std::string_view::npos) {
      word_start = at;
    }
  }
  if (word_start != std::string_view::npos) {
    out.words.emplace_back(text.substr(word_start));
  }
  out.raw_word_count = static_cast<int>(out.words.size());
  return out;
}

std::string strip_to_alnum(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (const char raw : word) {
    char c = raw;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out.push_back(c);
  }
  return out;
}

std::vector<std::string> parse_word_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (!line.empty()) out.emplace_back(line);
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open word list: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_word_list(buf.str());
}

std::span<const std::string_view> default_stop_words() { return kDefaultStopWords; }

StemExceptions StemExceptions::Parse(std::string_view text) {
  StemExceptions ex;
  for (const std::string& line : parse_word_list(text)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      const std::string word = strip_to_alnum(line);
      if (!word.empty()) ex.overrides[word] = word;
    } else {
      const std::string word = strip_to_alnum(line.substr(0, tab));
      const std::string stem = strip_to_alnum(line.substr(tab + 1));
      if (word.empty() || stem.empty()) {
        throw std::invalid_argument("bad stemmer exception line: " + line);
      }
      ex.overrides[word] = stem;
    }
  }
  return ex;
}

Normalizer::Normalizer() {
  for (const std::string_view w : kDefaultStopWords) stop_words_.emplace(w);
}

Normalizer::Normalizer(std::vector<std::string> stop_words, StemExceptions exceptions,
                       bool stem)
    : exceptions_(std::move(exceptions)), stem_(stem) {
  for (std::string& w : stop_words) {
    std::string cleaned = strip_to_alnum(w);
    if (!cleaned.empty()) stop_words_.insert(std::move(cleaned));
  }
}

std::string Normalizer::stem(std::string_view cleaned) const {
  if (!stem_) return std::string(cleaned);
  if (const auto it = exceptions_.overrides.find(std::string(cleaned));
      it != exceptions_.overrides.end()) {
    return it->second;
  }
  return porter_stem(cleaned);
}

bool Normalizer::is_stop_word(std::string_view cleaned) const {
  return stop_words_.contains(std::string(cleaned));
}

std::string Normalizer::clean_and_stem(std::string_view word) const {
  const std::string cleaned = strip_to_alnum(word);
  if (cleaned.empty()) return cleaned;
  return stem(cleaned);
}

TokenList Normalizer::normalize(std::span<const std::string> raw_words) const {
  TokenList out;
  out.raw_word_count = static_cast<int>(raw_words.size());
  out.tokens.reserve(raw_words.size());
  for (const std::string& w : raw_words) {
    const std::string cleaned = strip_to_alnum(w);
    if (cleaned.empty() || is_stop_word(cleaned)) continue;
    out.tokens.push_back(stem(cleaned));
  }
  return out;
}

TokenList Normalizer::normalize(std::string_view text) const {
  const RawWords raw = tokenize_raw(text);
  return normalize(raw.words);
}

namespace {

void CheckRange(int n_min, int n_max) {
  if (n_min < 1 || n_min > n_max || n_max > kMaxNGram) {
    throw std::invalid_argument("n-gram range must satisfy 1 <= n_min <= n_max <= 5, got " +
                                std::to_string(n_min) + ".." + std::to_string(n_max));
  }
}

}  // namespace

void accumulate_ngrams(std::span<const std::string> tokens, int n_min, int n_max,
                       NGramCounts& counts) {
  CheckRange(n_min, n_max);
  const std::size_t t = tokens.size();
  std::string key;
  for (std::size_t start = 0; start < t; ++start) {
    key.clear();
    for (int n = 1; n <= n_max && start + n <= t; ++n) {
      if (n > 1) key.push_back(' ');
      key += tokens[start + n - 1];
      if (n >= n_min) ++counts[key];
    }
  }
}

NGramCounts enumerate_ngrams(const TokenList& tokens, int n_min, int n_max) {
  NGramCounts counts;
  accumulate_ngrams(tokens.tokens, n_min, n_max, counts);
  return counts;
}

std::size_t window_count(std::size_t token_count, int n_min, int n_max) {
  CheckRange(n_min, n_max);
  std::size_t total = 0;
  for (int n = n_min; n <= n_max; ++n) {
    if (static_cast<std::size_t>(n) <= token_count) total += token_count - n + 1;
  }
  return total;
}

}  // namespace oralarg

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

// Transcript and outcome ingestion, question attribution and corpus assembly.
#ifndef ORALARG_INGEST_HPP_
#define ORALARG_INGEST_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oralarg {

enum class Role { kJustice, kAdvocate };
enum class Side { kPetitioner, kRespondent, kNone };

std::string_view to_string(Role role);
std::string_view to_string(Side side);
std::optional<Role> parse_role(std::string_view s);
std::optional<Side> parse_side(std::string_view s);

// The other advocate side. Requires side != kNone.
Side opponent(Side side);

// Malformed JSON or CSV. `offset` is the byte offset where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Well-formed input that violates the transcript or outcome schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Utterance {
  int seq = 0;
  std::string speaker;
  Role role = Role::kAdvocate;
  Side side = Side::kNone;
  std::string text;

  bool operator==(const Utterance&) const = default;
};

struct Transcript {
  std::string docket;
  std::string case_name;
  int term = 0;
  std::vector<Utterance> utterances;

  // True when both advocate sides speak at least once.
  bool complete() const;

  bool operator==(const Transcript&) const = default;
};

struct CaseOutcome {
  std::string docket;
  Side winning_side = Side::kPetitioner;
  std::map<std::string, Side> votes;  // justice id -> side voted for

  bool operator==(const CaseOutcome&) const = default;
};

struct QuestionRecord {
  std::string docket;
  std::string justice;
  Side target_side = Side::kPetitioner;
  std::string text;
  int seq = 0;                     // utterance seq in the transcript
  int question_index_to_side = 0;  // 1-based, all justices, this side
  int run_length_position = 0;     // 1-based position in this justice's run

  bool operator==(const QuestionRecord&) const = default;
};

// Maps speaker labels to canonical justice ids (lowercase surnames).
class JusticeAliases {
 public:
  // Built-in table covering the 1998-2015 Court.
  JusticeAliases();

  // Lines of "alias<TAB>id"; '#' comments. Extends the built-in table.
  void add_from_text(std::string_view text);
  void add(std::string_view alias, std::string_view id);

  // Lowercases, strips titles ("chief justice", "justice", "mr.", ...) and
  // punctuation, then consults the alias table. Falls back to the last word.
  std::string canonical(std::string_view speaker) const;

 private:
  std::map<std::string, std::string> table_;
};

const JusticeAliases& default_justice_aliases();

// Throws ParseError (with byte offset) on malformed JSON, SchemaError on
// schema violations.
Transcript parse_transcript(std::string_view json);
std::string serialize_transcript(const Transcript& transcript);

struct OutcomeTable {
  std::vector<CaseOutcome> outcomes;  // sorted by docket
  std::vector<std::string> warnings;
};

// CSV with header `docket,justice,side_voted_for,winning_side`. Justice ids are
// canonicalized through `aliases`.
OutcomeTable parse_outcomes(std::string_view csv,
                            const JusticeAliases& aliases = default_justice_aliases());

// Majority side of the votes, or nullopt on a tie or no votes.
std::optional<Side> majority_side(const CaseOutcome& outcome);

struct Attribution {
  std::vector<QuestionRecord> questions;
  std::vector<std::string> warnings;
};

// Assigns each justice utterance to the side of the most recent preceding
// advocate utterance. Leading justice utterances are dropped with a warning.
Attribution attribute_targets(const Transcript& transcript,
                              const JusticeAliases& aliases = default_justice_aliases());

struct ExcludedCase {
  std::string docket;
  std::string reason;

  bool operator==(const ExcludedCase&) const = default;
};

struct JoinReport {
  int matched = 0;
  std::vector<std::string> orphan_transcripts;
  std::vector<std::string> orphan_outcomes;
  std::vector<ExcludedCase> excluded;
  std::vector<std::string> warnings;

  bool clean() const {
    return orphan_transcripts.empty() && orphan_outcomes.empty() && excluded.empty();
  }
  // {matched, orphan_transcripts, orphan_outcomes, excluded: [{docket, reason}]}
  std::string to_json() const;
};

struct CaseRecord {
  Transcript transcript;
  CaseOutcome outcome;
  std::vector<QuestionRecord> questions;  // in utterance order
  // False for cases kept only for descriptive statistics.
  bool usable_for_matrix = true;

  const std::string& docket() const { return transcript.docket; }
  // Justices who voted or asked at least one question, sorted.
  std::vector<std::string> participants() const;
  std::optional<Side> vote_of(const std::string& justice) const;
};

// Immutable joined corpus. Cases are sorted by docket.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<CaseRecord> cases, JoinReport report);

  const std::vector<CaseRecord>& cases() const { return cases_; }
  const JoinReport& report() const { return report_; }
  const CaseRecord* find(std::string_view docket) const;

  // Every justice id appearing as a voter or questioner, sorted.
  std::vector<std::string> justices() const;

  // Questions by `justice` to `side` in `docket`, in utterance order.
  std::vector<const QuestionRecord*> questions(std::string_view justice,
                                               std::string_view docket, Side side) const;

 private:
  std::vector<CaseRecord> cases_;
  JoinReport report_;
};

// Inner join on docket. Throws std::runtime_error("no overlapping dockets")
// when nothing matches, and SchemaError on duplicate transcript dockets.
Corpus build_corpus(std::vector<Transcript> transcripts, std::vector<CaseOutcome> outcomes,
                    const JusticeAliases& aliases = default_justice_aliases());

}  // namespace oralarg

#endif  // ORALARG_INGEST_HPP_

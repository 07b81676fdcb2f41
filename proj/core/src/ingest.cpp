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

#include "oralarg/ingest.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "json.hpp"

namespace oralarg {

using nlohmann::json;

std::string_view to_string(Role role) {
  return role == Role::kJustice ? "justice" : "advocate";
}

std::string_view to_string(Side side) {
  switch (side) {
    case Side::kPetitioner:
      return "petitioner";
    case Side::kRespondent:
      return "respondent";
    case Side::kNone:
      break;
  }
  return "none";
}

std::optional<Role> parse_role(std::string_view s) {
  if (s == "justice") return Role::kJustice;
  if (s == "advocate") return Role::kAdvocate;
  return std::nullopt;
}

std::optional<Side> parse_side(std::string_view s) {
  if (s == "petitioner") return Side::kPetitioner;
  if (s == "respondent") return Side::kRespondent;
  if (s == "none") return Side::kNone;
  return std::nullopt;
}

Side opponent(Side side) {
  if (side == Side::kNone) throw std::invalid_argument("opponent() of side none");
  return side == Side::kPetitioner ? Side::kRespondent : Side::kPetitioner;
}

bool Transcript::complete() const {
  bool pet = false;
  bool resp = false;
  for (const Utterance& u : utterances) {
    if (u.role != Role::kAdvocate) continue;
    pet |= u.side == Side::kPetitioner;
    resp |= u.side == Side::kRespondent;
  }
  return pet && resp;
}

// ---------------------------------------------------------------------------
// Justice aliases

namespace {

std::string Squash(std::string_view s) {
  std::string out;
  bool space = false;
  for (const char raw : s) {
    char c = raw;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (alnum) {
      if (space && !out.empty()) out.push_back(' ');
      out.push_back(c);
      space = false;
    } else if (c == ' ' || c == '\t' || c == ',' || c == '-' || c == '.') {
      space = true;
    }
    // Other punctuation (apostrophes) is dropped without splitting.
  }
  return out;
}

bool StripPrefix(std::string& s, std::string_view prefix) {
  if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0) {
    s.erase(0, prefix.size());
    return true;
  }
  return false;
}

constexpr std::pair<std::string_view, std::string_view> kBuiltinAliases[] = {
    {"john g roberts jr", "roberts"},  {"john roberts", "roberts"},
    {"william h rehnquist", "rehnquist"}, {"william rehnquist", "rehnquist"},
    {"john paul stevens", "stevens"},  {"sandra day oconnor", "oconnor"},
    {"antonin scalia", "scalia"},      {"anthony m kennedy", "kennedy"},
    {"anthony kennedy", "kennedy"},    {"david h souter", "souter"},
    {"david souter", "souter"},        {"clarence thomas", "thomas"},
    {"ruth bader ginsburg", "ginsburg"}, {"stephen g breyer", "breyer"},
    {"stephen breyer", "breyer"},      {"samuel a alito jr", "alito"},
    {"samuel alito", "alito"},         {"sonia sotomayor", "sotomayor"},
    {"elena kagan", "kagan"},          {"neil gorsuch", "gorsuch"},
    {"brett m kavanaugh", "kavanaugh"}, {"brett kavanaugh", "kavanaugh"},
    {"the chief justice", "roberts"},
};

}  // namespace

JusticeAliases::JusticeAliases() {
  for (const auto& [alias, id] : kBuiltinAliases) table_.emplace(alias, id);
}

void JusticeAliases::add(std::string_view alias, std::string_view id) {
  table_[Squash(alias)] = Squash(id);
}

void JusticeAliases::add_from_text(std::string_view text) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      if (!Squash(line).empty()) {
        throw std::invalid_argument("alias line needs alias<TAB>id: " + std::string(line));
      }
      continue;
    }
    add(line.substr(0, tab), line.substr(tab + 1));
  }
}

std::string JusticeAliases::canonical(std::string_view speaker) const {
  std::string s = Squash(speaker);
  if (const auto it = table_.find(s); it != table_.end()) return it->second;
  if (s.size() > 3 && s.ends_with(" jr")) s.resize(s.size() - 3);
  for (bool stripped = true; stripped;) {
    stripped = StripPrefix(s, "chief justice ") || StripPrefix(s, "justice ") ||
               StripPrefix(s, "mr ") || StripPrefix(s, "mrs ") || StripPrefix(s, "ms ");
    if (const auto it = table_.find(s); it != table_.end()) return it->second;
  }
  const auto space = s.rfind(' ');
  return space == std::string::npos ? s : s.substr(space + 1);
}

const JusticeAliases& default_justice_aliases() {
  static const JusticeAliases aliases;
  return aliases;
}

// ---------------------------------------------------------------------------
// Transcript JSON

namespace {

const json& RequireField(const json& obj, const char* field, const std::string& where) {
  const auto it = obj.find(field);
  if (it == obj.end()) {
    throw SchemaError("missing required field '" + std::string(field) + "' in " + where);
  }
  return *it;
}

std::string RequireString(const json& obj, const char* field, const std::string& where) {
  const json& v = RequireField(obj, field, where);
  if (!v.is_string()) {
    throw SchemaError("field '" + std::string(field) + "' in " + where + " must be a string");
  }
  return v.get<std::string>();
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

Transcript parse_transcript(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed transcript JSON at byte " + std::to_string(e.byte) + ": " +
                         e.what(),
                     e.byte);
  }
  if (!doc.is_object()) throw SchemaError("transcript must be a JSON object");

  Transcript t;
  t.docket = RequireString(doc, "docket", "transcript");
  if (IsBlank(t.docket)) throw SchemaError("field 'docket' must be non-empty");
  t.case_name = RequireString(doc, "case_name", "transcript");
  const json& term = RequireField(doc, "term", "transcript");
  if (!term.is_number_integer()) throw SchemaError("field 'term' must be an integer");
  t.term = term.get<int>();

  const json& utterances = RequireField(doc, "utterances", "transcript");
  if (!utterances.is_array()) throw SchemaError("field 'utterances' must be an array");
  t.utterances.reserve(utterances.size());
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    const json& u = utterances[i];
    const std::string where = "utterance " + std::to_string(i);
    if (!u.is_object()) throw SchemaError(where + " must be an object");
    Utterance out;
    out.seq = static_cast<int>(i);
    out.speaker = RequireString(u, "speaker", where);
    const std::string role = RequireString(u, "role", where);
    const std::string side = RequireString(u, "side", where);
    out.text = RequireString(u, "text", where);

    const auto parsed_role = parse_role(role);
    if (!parsed_role) throw SchemaError(where + ": unknown role '" + role + "'");
    const auto parsed_side = parse_side(side);
    if (!parsed_side) throw SchemaError(where + ": unknown side '" + side + "'");
    out.role = *parsed_role;
    out.side = *parsed_side;
    if (out.role == Role::kJustice && out.side != Side::kNone) {
      throw SchemaError(where + ": role=justice must have side=none");
    }
    if (out.role == Role::kAdvocate && out.side == Side::kNone) {
      throw SchemaError(where + ": role=advocate must have side petitioner or respondent");
    }
    if (IsBlank(out.text)) throw SchemaError(where + ": text must be non-empty");
    t.utterances.push_back(std::move(out));
  }
  return t;
}

std::string serialize_transcript(const Transcript& t) {
  json doc;
  doc["docket"] = t.docket;
  doc["case_name"] = t.case_name;
  doc["term"] = t.term;
  json utterances = json::array();
  for (const Utterance& u : t.utterances) {
    utterances.push_back({{"speaker", u.speaker},
                          {"role", to_string(u.role)},
                          {"side", to_string(u.side)},
                          {"text", u.text}});
  }
  doc["utterances"] = std::move(utterances);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Outcomes CSV

namespace {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t offset = 0;
};

// RFC 4180 subset: quoted fields with doubled quotes, LF or CRLF endings.
std::vector<CsvRow> ReadCsv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t i = 0;
  while (i < text.size()) {
    CsvRow row;
    row.offset = i;
    std::string field;
    bool quoted = false;
    bool end_of_row = false;
    while (!end_of_row) {
      if (i >= text.size()) {
        if (quoted) throw ParseError("unterminated quoted CSV field", row.offset);
        end_of_row = true;
        break;
      }
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            quoted = false;
            ++i;
          }
        } else {
          field.push_back(c);
          ++i;
        }
        continue;
      }
      switch (c) {
        case '"':
          if (!field.empty()) throw ParseError("stray quote in CSV field", i);
          quoted = true;
          ++i;
          break;
        case ',':
          row.fields.push_back(std::move(field));
          field.clear();
          ++i;
          break;
        case '\r':
          ++i;
          break;
        case '\n':
          ++i;
          end_of_row = true;
          break;
        default:
          field.push_back(c);
          ++i;
      }
    }
    row.fields.push_back(std::move(field));
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

OutcomeTable parse_outcomes(std::string_view csv, const JusticeAliases& aliases) {
  const std::vector<CsvRow> rows = ReadCsv(csv);
  if (rows.empty()) throw SchemaError("outcomes CSV is empty (header row required)");
  const std::vector<std::string> header = {"docket", "justice", "side_voted_for",
                                           "winning_side"};
  if (rows.front().fields != header) {
    throw SchemaError("outcomes CSV header must be docket,justice,side_voted_for,winning_side");
  }

  std::map<std::string, CaseOutcome> by_docket;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    const std::string where = "outcomes row " + std::to_string(r + 1);
    if (row.fields.size() != header.size()) {
      throw ParseError(where + ": expected 4 fields, got " + std::to_string(row.fields.size()),
                       row.offset);
    }
    const std::string& docket = row.fields[0];
    if (IsBlank(docket)) throw SchemaError(where + ": empty docket");
    const std::string justice = aliases.canonical(row.fields[1]);
    if (justice.empty()) throw SchemaError(where + ": empty justice");
    const auto voted = parse_side(row.fields[2]);
    if (!voted || *voted == Side::kNone) {
      throw SchemaError(where + ": side_voted_for must be petitioner or respondent, got '" +
                        row.fields[2] + "'");
    }
    const auto winner = parse_side(row.fields[3]);
    if (!winner || *winner == Side::kNone) {
      throw SchemaError(where + ": winning_side must be petitioner or respondent, got '" +
                        row.fields[3] + "'");
    }
    auto [it, inserted] = by_docket.try_emplace(docket);
    CaseOutcome& outcome = it->second;
    if (inserted) {
      outcome.docket = docket;
      outcome.winning_side = *winner;
    } else if (outcome.winning_side != *winner) {
      throw SchemaError(where + ": conflicting winning_side for docket " + docket);
    }
    if (!outcome.votes.emplace(justice, *voted).second) {
      throw SchemaError(where + ": duplicate (docket, justice) pair (" + docket + ", " +
                        justice + ")");
    }
  }

  OutcomeTable table;
  for (auto& [docket, outcome] : by_docket) {
    const auto majority = majority_side(outcome);
    if (majority && *majority != outcome.winning_side) {
      table.warnings.push_back("docket " + docket + ": winning_side " +
                               std::string(to_string(outcome.winning_side)) +
                               " disagrees with vote majority " +
                               std::string(to_string(*majority)));
    }
    table.outcomes.push_back(std::move(outcome));
  }
  return table;
}

std::optional<Side> majority_side(const CaseOutcome& outcome) {
  int pet = 0;
  int resp = 0;
  for (const auto& [justice, side] : outcome.votes) {
    (side == Side::kPetitioner ? pet : resp) += 1;
  }
  if (pet == resp) return std::nullopt;
  return pet > resp ? Side::kPetitioner : Side::kRespondent;
}

// ---------------------------------------------------------------------------
// Attribution

Attribution attribute_targets(const Transcript& t, const JusticeAliases& aliases) {
  Attribution out;
  std::optional<Side> podium;
  int dropped = 0;
  struct SideState {
    int asked = 0;
    std::string last_justice;
    int run = 0;
  };
  SideState state[2];

  for (const Utterance& u : t.utterances) {
    if (u.role == Role::kAdvocate) {
      podium = u.side;
      continue;
    }
    if (!podium) {
      ++dropped;
      continue;
    }
    SideState& s = state[*podium == Side::kPetitioner ? 0 : 1];
    QuestionRecord q;
    q.docket = t.docket;
    q.justice = aliases.canonical(u.speaker);
    q.target_side = *podium;
    q.text = u.text;
    q.seq = u.seq;
    q.question_index_to_side = ++s.asked;
    s.run = (s.last_justice == q.justice) ? s.run + 1 : 1;
    s.last_justice = q.justice;
    q.run_length_position = s.run;
    out.questions.push_back(std::move(q));
  }
  if (dropped > 0) {
    out.warnings.push_back("docket " + t.docket + ": dropped " + std::to_string(dropped) +
                           " justice utterance(s) before any advocate spoke");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<std::string> CaseRecord::participants() const {
  std::set<std::string> ids;
  for (const auto& [justice, side] : outcome.votes) ids.insert(justice);
  for (const QuestionRecord& q : questions) ids.insert(q.justice);
  return {ids.begin(), ids.end()};
}

std::optional<Side> CaseRecord::vote_of(const std::string& justice) const {
  const auto it = outcome.votes.find(justice);
  if (it == outcome.votes.end()) return std::nullopt;
  return it->second;
}

Corpus::Corpus(std::vector<CaseRecord> cases, JoinReport report)
    : cases_(std::move(cases)), report_(std::move(report)) {
  std::sort(cases_.begin(), cases_.end(),
            [](const CaseRecord& a, const CaseRecord& b) { return a.docket() < b.docket(); });
}

const CaseRecord* Corpus::find(std::string_view docket) const {
  const auto it = std::lower_bound(
      cases_.begin(), cases_.end(), docket,
      [](const CaseRecord& c, std::string_view d) { return c.docket() < d; });
  if (it == cases_.end() || it->docket() != docket) return nullptr;
  return &*it;
}

std::vector<std::string> Corpus::justices() const {
  std::set<std::string> ids;
  for (const CaseRecord& c : cases_) {
    for (std::string& j : c.participants()) ids.insert(std::move(j));
  }
  return {ids.begin(), ids.end()};
}

std::vector<const QuestionRecord*> Corpus::questions(std::string_view justice,
                                                     std::string_view docket,
                                                     Side side) const {
  std::vector<const QuestionRecord*> out;
  const CaseRecord* c = find(docket);
  if (c == nullptr) return out;
  for (const QuestionRecord& q : c->questions) {
    if (q.justice == justice && q.target_side == side) out.push_back(&q);
  }
  return out;
}

std::string JoinReport::to_json() const {
  json doc;
  doc["matched"] = matched;
  doc["orphan_transcripts"] = orphan_transcripts;
  doc["orphan_outcomes"] = orphan_outcomes;
  json ex = json::array();
  for (const ExcludedCase& e : excluded) ex.push_back({{"docket", e.docket}, {"reason", e.reason}});
  doc["excluded"] = std::move(ex);
  return doc.dump(2) + "\n";
}

Corpus build_corpus(std::vector<Transcript> transcripts, std::vector<CaseOutcome> outcomes,
                    const JusticeAliases& aliases) {
  std::map<std::string, Transcript> by_docket;
  for (Transcript& t : transcripts) {
    const std::string docket = t.docket;
    if (!by_docket.emplace(docket, std::move(t)).second) {
      throw SchemaError("duplicate transcript docket: " + docket);
    }
  }
  std::map<std::string, CaseOutcome> outcome_by_docket;
  for (CaseOutcome& o : outcomes) {
    const std::string docket = o.docket;
    if (!outcome_by_docket.emplace(docket, std::move(o)).second) {
      throw SchemaError("duplicate outcome docket: " + docket);
    }
  }

  JoinReport report;
  std::vector<CaseRecord> cases;
  for (auto& [docket, transcript] : by_docket) {
    const auto it = outcome_by_docket.find(docket);
    if (it == outcome_by_docket.end()) {
      report.orphan_transcripts.push_back(docket);
      continue;
    }
    CaseRecord rec;
    Attribution attribution = attribute_targets(transcript, aliases);
    rec.questions = std::move(attribution.questions);
    for (std::string& w : attribution.warnings) report.warnings.push_back(std::move(w));
    rec.transcript = std::move(transcript);
    rec.outcome = it->second;

    std::set<std::string> speakers;
    for (const Utterance& u : rec.transcript.utterances) {
      if (u.role == Role::kJustice) speakers.insert(aliases.canonical(u.speaker));
    }
    for (const auto& [justice, side] : rec.outcome.votes) {
      if (!speakers.contains(justice)) {
        report.warnings.push_back("docket " + docket + ": voter " + justice +
                                  " never speaks in the transcript");
      }
    }

    if (rec.outcome.votes.empty()) {
      rec.usable_for_matrix = false;
      report.excluded.push_back({docket, "no individual votes"});
    } else if (!rec.transcript.complete()) {
      rec.usable_for_matrix = false;
      report.excluded.push_back({docket, "incomplete transcript: one advocate side never speaks"});
    }
    cases.push_back(std::move(rec));
  }
  for (const auto& [docket, outcome] : outcome_by_docket) {
    if (!by_docket.contains(docket)) report.orphan_outcomes.push_back(docket);
  }
  if (cases.empty()) throw std::runtime_error("no overlapping dockets");
  report.matched = static_cast<int>(cases.size());
  return Corpus(std::move(cases), std::move(report));
}

}  // namespace oralarg

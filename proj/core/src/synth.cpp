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

#include "oralarg/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace oralarg {
namespace {

constexpr std::string_view kVoters[] = {"roberts", "scalia",    "kennedy", "ginsburg", "breyer",
                                        "alito",   "sotomayor", "kagan",   "souter"};
constexpr std::string_view kFiller = "thomas";

constexpr std::string_view kWords[] = {
    "statute",   "court",     "record",    "remedy",    "agency",   "state",     "claim",
    "damages",   "contract",  "clause",    "standard",  "review",   "evidence",  "jury",
    "trial",     "appeal",    "precedent", "congress",  "text",     "history",   "purpose",
    "rule",      "exception", "question",  "answer",    "argument", "position",  "brief",
    "government", "defendant", "plaintiff", "counsel",  "section",  "provision", "remand",
    "circuit",   "district",  "opinion",   "doctrine",  "burden",   "proof",     "notice",
    "hearing",   "process",   "right",     "power",     "authority", "regulation", "tax",
    "property",  "employer",  "employee",  "union",     "patent",   "search",    "warrant",
    "officer",   "county",    "city",      "school",    "prison",   "sentence",  "crime",
    "the",       "of",        "a",         "to",        "in",       "that",      "is",
    "what",      "how",       "why",       "would",     "your",     "this",      "under"};

constexpr std::string_view kValenceWords[] = {"fair", "clear", "wrong", "correct", "absurd",
                                              "reasonable", "troubling", "good", "bad"};

constexpr std::string_view kAnswerWords[] = {"yes", "no", "your", "honor", "we", "think",
                                             "the", "court", "should", "that", "is", "right",
                                             "correct", "not", "our", "position"};

constexpr std::string_view kAdvocates[] = {"SMITH", "JONES", "GARCIA", "CHEN", "PATEL",
                                           "MILLER", "DAVIS", "NGUYEN", "CLARK", "LOPEZ"};

using Rng = std::mt19937_64;

std::size_t Below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

int Between(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(Below(rng, static_cast<std::size_t>(hi - lo + 1)));
}

bool Chance(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

template <typename T>
void Shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Below(rng, i)]);
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string Capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string SpeakerName(std::string_view justice) {
  if (justice == "roberts") return "CHIEF JUSTICE ROBERTS";
  return "JUSTICE " + Upper(justice);
}

std::string Sentence(Rng& rng, int lo, int hi, char end) {
  const int n = Between(rng, lo, hi);
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i > 0) s += ' ';
    if (Chance(rng, 0.08)) {
      s += kValenceWords[Below(rng, std::size(kValenceWords))];
    } else {
      s += kWords[Below(rng, std::size(kWords))];
    }
  }
  return Capitalized(s) + end;
}

std::string QuestionText(Rng& rng, std::string_view speaker,
                         const std::vector<std::string>& colleagues, bool planted) {
  std::string text;
  if (Chance(rng, 0.05) && colleagues.size() > 1) {
    std::string other;
    do {
      other = colleagues[Below(rng, colleagues.size())];
    } while (other == speaker);
    text = "As Justice " + Capitalized(other) + " suggested, ";
  }
  text += Sentence(rng, 4, 9, '.');
  if (Chance(rng, 0.5)) text += " " + Sentence(rng, 3, 7, '?');
  if (planted) text += " Isn't that " + std::string(kPlantedToken) + "?";
  return text;
}

std::string AnswerText(Rng& rng) {
  const int n = Between(rng, 3, 8);
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i > 0) s += ' ';
    s += kAnswerWords[Below(rng, std::size(kAnswerWords))];
  }
  return Capitalized(s) + ".";
}

struct Slot {
  std::string justice;
  bool planted = false;
};

// Question order for one side's argument.
std::vector<Slot> PlanSide(Rng& rng, const std::vector<std::string>& voters,
                           const std::map<std::string, Side>& votes, Side side, Plant plant,
                           const std::string& filler) {
  std::vector<Slot> slots;
  if (plant == Plant::kCounts) {
    std::map<std::string, int> remaining;
    for (const std::string& j : voters) {
      remaining[j] = votes.at(j) == side ? Between(rng, 1, 2) : Between(rng, 3, 5);
    }
    for (bool any = true; any;) {
      std::vector<std::string> round;
      for (auto& [j, n] : remaining) {
        if (n > 0) round.push_back(j);
      }
      any = !round.empty();
      Shuffle(round, rng);
      for (const std::string& j : round) {
        --remaining[j];
        slots.push_back({j, false});
        slots.push_back({filler, false});
      }
    }
    return slots;
  }
  for (const std::string& j : voters) {
    const bool against = votes.at(j) != side;
    const int n = Between(rng, 1, 3);
    const int planted_at = n > 0 ? Between(rng, 0, n - 1) : -1;
    for (int i = 0; i < n; ++i) {
      slots.push_back({j, plant == Plant::kNegativeNGram && against && i == planted_at});
    }
  }
  Shuffle(slots, rng);
  return slots;
}

Side MajorityOf(const std::map<std::string, Side>& votes) {
  int pet = 0;
  for (const auto& [j, s] : votes) pet += s == Side::kPetitioner ? 1 : 0;
  return 2 * pet > static_cast<int>(votes.size()) ? Side::kPetitioner : Side::kRespondent;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string_view to_string(Plant p) {
  switch (p) {
    case Plant::kNone:
      return "none";
    case Plant::kNegativeNGram:
      return "negative-ngram";
    case Plant::kCounts:
      return "counts";
  }
  return "none";
}

std::optional<Plant> parse_plant(std::string_view s) {
  for (const Plant p : {Plant::kNone, Plant::kNegativeNGram, Plant::kCounts}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

SynthCorpus generate_synthetic(const SynthOptions& options) {
  if (options.cases < 1) throw std::invalid_argument("synth needs at least 1 case");
  if (options.justices < 1 || options.justices > static_cast<int>(std::size(kVoters)) ||
      options.justices % 2 == 0) {
    throw std::invalid_argument("synth justice count must be odd and in [1, 9]");
  }
  Rng rng(options.seed);
  SynthCorpus corpus;
  corpus.justices.assign(kVoters, kVoters + options.justices);
  std::sort(corpus.justices.begin(), corpus.justices.end());
  if (options.plant == Plant::kCounts) corpus.filler = std::string(kFiller);
  std::vector<std::string> speakers = corpus.justices;
  if (!corpus.filler.empty()) speakers.push_back(corpus.filler);

  for (int c = 0; c < options.cases; ++c) {
    char docket[32];
    std::snprintf(docket, sizeof(docket), "syn-%04d", c + 1);

    std::map<std::string, Side> votes;
    const Side lean = Chance(rng, 0.6) ? Side::kPetitioner : Side::kRespondent;
    for (const std::string& j : corpus.justices) {
      votes[j] = Chance(rng, 0.8) ? lean : opponent(lean);
    }

    Transcript t;
    t.docket = docket;
    t.term = 2000 + c % 15;
    const std::string pet_name(kAdvocates[Below(rng, std::size(kAdvocates))]);
    std::string resp_name(kAdvocates[Below(rng, std::size(kAdvocates))]);
    if (resp_name == pet_name) resp_name = "WRIGHT";
    t.case_name = Capitalized(pet_name) + " v. " + Capitalized(resp_name);
    int seq = 0;
    for (const Side side : {Side::kPetitioner, Side::kRespondent}) {
      const std::string advocate =
          (side == Side::kPetitioner ? "MR. " + pet_name : "MS. " + resp_name);
      t.utterances.push_back({seq++, advocate, Role::kAdvocate, side,
                              "Thank you. May it please the Court."});
      for (const Slot& s : PlanSide(rng, corpus.justices, votes, side, options.plant,
                                    corpus.filler)) {
        t.utterances.push_back({seq++, SpeakerName(s.justice), Role::kJustice, Side::kNone,
                                QuestionText(rng, s.justice, speakers, s.planted)});
        t.utterances.push_back({seq++, advocate, Role::kAdvocate, side, AnswerText(rng)});
      }
    }

    if (options.randomize_labels) {
      for (auto& [j, s] : votes) s = Chance(rng, 0.5) ? Side::kPetitioner : Side::kRespondent;
    }
    CaseOutcome outcome;
    outcome.docket = t.docket;
    outcome.votes = std::move(votes);
    outcome.winning_side = MajorityOf(outcome.votes);
    corpus.transcripts.push_back(std::move(t));
    corpus.outcomes.push_back(std::move(outcome));
  }
  return corpus;
}

std::string outcomes_csv(const std::vector<CaseOutcome>& outcomes) {
  std::string out = "docket,justice,side_voted_for,winning_side\n";
  for (const CaseOutcome& o : outcomes) {
    for (const auto& [j, s] : o.votes) {
      out += o.docket + "," + j + "," + std::string(to_string(s)) + "," +
             std::string(to_string(o.winning_side)) + "\n";
    }
  }
  return out;
}

void write_synthetic(const SynthCorpus& corpus, const SynthOptions& options,
                     const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  fs::create_directories(root / "transcripts");
  for (const Transcript& t : corpus.transcripts) {
    WriteFile(root / "transcripts" / (t.docket + ".json"), serialize_transcript(t));
  }
  WriteFile(root / "outcomes.csv", outcomes_csv(corpus.outcomes));

  nlohmann::json manifest = {{"cases", options.cases},
                             {"seed", options.seed},
                             {"plant", to_string(options.plant)},
                             {"randomize_labels", options.randomize_labels},
                             {"justices", corpus.justices},
                             {"filler", corpus.filler}};
  if (options.plant == Plant::kNegativeNGram) manifest["planted_ngram"] = kPlantedToken;
  WriteFile(root / "manifest.json", manifest.dump(2) + "\n");

  const nlohmann::json run = {{"transcripts", "transcripts"},
                              {"outcomes", "outcomes.csv"},
                              {"out", "out"},
                              {"seed", options.seed},
                              {"k", 10}};
  WriteFile(root / "run.json", run.dump(2) + "\n");
}

}  // namespace oralarg

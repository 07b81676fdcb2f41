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

// Reproducible synthetic corpora with an optional planted signal.
//
//   none            questions carry no information about votes
//   negative-ngram  every voting justice asks the side it votes against one
//                   question containing the planted token
//   counts          justices ask the side they vote against more questions;
//                   a non-voting filler justice interleaves every question so
//                   runs and first-question timing stay uninformative
//
// With `randomize_labels` the votes are redrawn by fair coin after the
// transcripts are generated, so no feature can predict them.
#ifndef ORALARG_SYNTH_HPP_
#define ORALARG_SYNTH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oralarg/ingest.hpp"

namespace oralarg {

enum class Plant { kNone, kNegativeNGram, kCounts };

std::string_view to_string(Plant p);
std::optional<Plant> parse_plant(std::string_view s);

inline constexpr std::string_view kPlantedToken = "balderdash";

struct SynthOptions {
  int cases = 60;
  std::uint64_t seed = 0;
  Plant plant = Plant::kNone;
  bool randomize_labels = false;
  int justices = 9;  // odd, at most 9
};

struct SynthCorpus {
  std::vector<Transcript> transcripts;
  std::vector<CaseOutcome> outcomes;
  std::vector<std::string> justices;  // voting justices
  std::string filler;                 // non-voting questioner, or empty
};

// Throws std::invalid_argument on cases < 1 or an even/out-of-range justice
// count.
SynthCorpus generate_synthetic(const SynthOptions& options);

// `docket,justice,side_voted_for,winning_side` rows.
std::string outcomes_csv(const std::vector<CaseOutcome>& outcomes);

// Writes transcripts/<docket>.json, outcomes.csv, manifest.json and run.json
// (a run configuration pointing at the other files) under `dir`.
void write_synthetic(const SynthCorpus& corpus, const SynthOptions& options,
                     const std::string& dir);

}  // namespace oralarg

#endif  // ORALARG_SYNTH_HPP_

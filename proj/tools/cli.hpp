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

// Command-line driver: run configuration and subcommand dispatch.
#ifndef ORALARG_TOOLS_CLI_HPP_
#define ORALARG_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oralarg/insights.hpp"
#include "oralarg/svm.hpp"

namespace oralarg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitDegenerate = 2;

// Environment variable naming the default run configuration file.
inline constexpr const char* kConfigEnv = "ORALARG_CONFIG";

struct RunConfig {
  std::string transcripts;  // directory of *.json transcripts
  std::string outcomes;     // outcomes CSV
  std::string sentiment;    // optional sentiment sidecar CSV
  std::string out = "out";
  std::string stopwords;        // optional; built-in list when empty
  std::string valence;          // optional; built-in lexicon when empty
  std::string stem_exceptions;  // optional
  std::string aliases;          // optional extra justice aliases
  int ngram_min = 1;
  int ngram_max = kMaxNGram;
  SvmConfig svm;
  std::vector<double> c_sweep;
  int k = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> justices;  // empty: every justice with enough cases
  int workers = 1;
  bool global_vocab = false;
  int top_k = 10;
  RankBy rank_by = RankBy::kWeight;

  // Relative paths resolve against `base_dir`. Unknown keys are rejected.
  static RunConfig FromJson(std::string_view json, const std::string& base_dir = "");
  static RunConfig Load(const std::string& path);

  // Throws std::invalid_argument on out-of-range settings.
  void validate() const;
  std::string to_json() const;
};

// argv[0] is the subcommand. Messages go to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oralarg::cli

#endif  // ORALARG_TOOLS_CLI_HPP_

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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "oralarg/evaluation.hpp"
#include "oralarg/features.hpp"
#include "oralarg/svm.hpp"
#include "oralarg/synth.hpp"
#include "oralarg/text.hpp"

namespace oralarg {
namespace {

const std::string kQuestion =
    "Well, counsel, isn't the statute's remedy quite clear? I'd like to hear your answer "
    "to Justice Breyer's point about the agency's record and its history.";

void BM_Normalize(benchmark::State& state) {
  const Normalizer n;
  for (auto _ : state) benchmark::DoNotOptimize(n.normalize(std::string_view(kQuestion)));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(kQuestion.size()));
}
BENCHMARK(BM_Normalize);

void BM_EnumerateNGrams(benchmark::State& state) {
  const Normalizer n;
  TokenList tokens;
  while (static_cast<int>(tokens.tokens.size()) < state.range(0)) {
    for (const auto& t : n.normalize(std::string_view(kQuestion)).tokens) tokens.tokens.push_back(t);
  }
  tokens.tokens.resize(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ngrams(tokens, 1, kMaxNGram));
}
BENCHMARK(BM_EnumerateNGrams)->Arg(16)->Arg(256);

std::vector<LabeledRow> RandomRows(int rows, int cols) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<LabeledRow> out;
  for (int i = 0; i < rows; ++i) {
    LabeledRow r;
    double m = 0.0;
    for (int c = 0; c < cols; ++c) {
      if (rng() % 4 != 0) continue;
      const double v = normal(rng);
      r.x.emplace_back(c, v);
      m += (c % 3 == 0 ? 1.0 : -0.5) * v;
    }
    r.label = m + 0.3 * normal(rng) >= 0 ? 1 : -1;
    out.push_back(std::move(r));
  }
  out[0].label = 1;
  out[1].label = -1;
  return out;
}

void BM_TrainSvm(benchmark::State& state) {
  const int cols = 200;
  const auto rows = RandomRows(static_cast<int>(state.range(0)), cols);
  for (auto _ : state) benchmark::DoNotOptimize(train_svm(rows, {}, cols));
}
BENCHMARK(BM_TrainSvm)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FeatureStore(benchmark::State& state) {
  SynthOptions o;
  o.cases = static_cast<int>(state.range(0));
  SynthCorpus s = generate_synthetic(o);
  const Corpus corpus = build_corpus(std::move(s.transcripts), std::move(s.outcomes));
  const Normalizer n;
  const LexiconScorer scorer;
  for (auto _ : state) benchmark::DoNotOptimize(FeatureStore::Build(corpus, n, scorer));
}
BENCHMARK(BM_FeatureStore)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace oralarg

BENCHMARK_MAIN();

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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace oralarg {
namespace {

using testing::MakeOutcome;
using testing::MakeTranscript;

struct Fixture {
  Corpus corpus;
  Normalizer normalizer;
  LexiconScorer scorer;
  FeatureStore store;

  Fixture(std::vector<Transcript> ts, std::vector<CaseOutcome> os)
      : corpus(build_corpus(std::move(ts), std::move(os))),
        store(FeatureStore::Build(corpus, normalizer, scorer)) {}
};

Fixture RandomFixture(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> js = {"scalia", "breyer", "alito"};
  std::vector<Transcript> ts;
  std::vector<CaseOutcome> os;
  for (int i = 0; i < cases; ++i) {
    const std::string d = "d" + std::to_string(100 + i);
    Transcript t = testing::RandomTranscript(rng, d, js, 20);
    t.utterances.insert(t.utterances.begin(), {0, "MR. A", Role::kAdvocate, Side::kPetitioner, "a"});
    t.utterances.push_back({0, "MS. B", Role::kAdvocate, Side::kRespondent, "b"});
    ts.push_back(std::move(t));
    std::map<std::string, Side> votes;
    for (const std::string& j : js) votes[j] = rng() % 2 ? Side::kPetitioner : Side::kRespondent;
    os.push_back(MakeOutcome(d, votes));
  }
  return Fixture(std::move(ts), std::move(os));
}

TEST(FeatureSpace, TwoNGramsGiveSeventeenColumns) {
  Fixture f({MakeTranscript("A", {{"P", "a"}, {"scalia", "statute"}, {"R", "b"},
                                  {"scalia", "remedy"}})},
            {MakeOutcome("A", {{"scalia", Side::kPetitioner}})});
  const FeatureSpace space = build_feature_space(f.store, "scalia");
  EXPECT_EQ(space.vocab_size(), 2);
  EXPECT_EQ(space.total_columns(), 17);
  EXPECT_EQ(space.column_name(13), "to_party:remedi");
  EXPECT_EQ(space.column_name(15), "to_opponent:remedi");
  EXPECT_EQ(space.column_name(kPartyColumn), "party_flag");
}

TEST(FeatureSpace, EmptyHistoryIsError) {
  Fixture f({MakeTranscript("A", {{"P", "a"}, {"scalia", "statute"}, {"R", "b"}})},
            {MakeOutcome("A", {{"scalia", Side::kPetitioner}, {"breyer", Side::kPetitioner}})});
  EXPECT_THROW(build_feature_space(f.store, "breyer"), std::invalid_argument);
  EXPECT_THROW(build_feature_space(f.store, "nobody"), std::invalid_argument);
}

TEST(FeatureSpace, JsonRoundTripAndFingerprint) {
  const FeatureSpace a({"well", "justic breyer", "well"});
  EXPECT_EQ(a.vocab_size(), 2);
  const FeatureSpace b = FeatureSpace::FromJson(a.to_json());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  for (int c = 0; c < a.total_columns(); ++c) EXPECT_EQ(a.column_name(c), b.column_name(c));
  EXPECT_NE(a.fingerprint(), FeatureSpace({"well"}).fingerprint());
}

TEST(FeatureSpace, CategoriesOfColumns) {
  const FeatureSpace s({"x"});
  EXPECT_EQ(s.category(s.dense_column(DenseFeature::kNumQuestions, false)), Category::kCounts);
  EXPECT_EQ(s.category(s.dense_column(DenseFeature::kFirstQuestion, true)),
            Category::kChronology);
  EXPECT_EQ(s.category(s.dense_column(DenseFeature::kAveSentiment, true)), Category::kSentiment);
  EXPECT_EQ(s.category(kPartyColumn), Category::kParty);
  EXPECT_EQ(s.category(kFirstNGramColumn + 1), Category::kNGrams);
}

TEST(AssembleRows, OneCaseTwoRowsOppositeLabels) {
  Fixture f({MakeTranscript("A", {{"P", "a"}, {"scalia", "statute"}, {"R", "b"}})},
            {MakeOutcome("A", {{"scalia", Side::kPetitioner}})});
  const FeatureSpace space = build_feature_space(f.store, "scalia");
  const auto rows = assemble_rows(f.store, "scalia", space);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].side, Side::kPetitioner);
  EXPECT_EQ(rows[0].label, 1);
  EXPECT_EQ(rows[1].label, -1);
}

TEST(AssembleRows, TenCasesTwentyRowsPaired) {
  Fixture f = RandomFixture(1, 10);
  const FeatureSpace space = build_feature_space(f.store, "scalia");
  const auto rows = assemble_rows(f.store, "scalia", space);
  ASSERT_EQ(rows.size(), 20u);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    EXPECT_EQ(rows[i].docket, rows[i + 1].docket);
    EXPECT_EQ(rows[i].label, -rows[i + 1].label);
    EXPECT_EQ(rows[i].x[kPartyColumn].second, 1.0);
  }
}

TEST(AssembleRows, MissingVoteSkippedAndLogged) {
  Fixture f({MakeTranscript("A", {{"P", "a"}, {"scalia", "statute"}, {"R", "b"}}),
             MakeTranscript("B", {{"P", "a"}, {"scalia", "remedy"}, {"R", "b"}})},
            {MakeOutcome("A", {{"scalia", Side::kPetitioner}}),
             MakeOutcome("B", {{"breyer", Side::kPetitioner}})});
  const FeatureSpace space = build_feature_space(f.store, "scalia");
  std::vector<std::string> log;
  const auto rows = assemble_rows(f.store, "scalia", space, CategorySet::All(), {}, &log);
  EXPECT_EQ(rows.size(), 2u);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_NE(log[0].find("docket B"), std::string::npos);
}

TEST(VectorizeRow, NGramLandsInCorrectBlock) {
  const FeatureSpace space({"justic breyer"});
  CellFeatures talk;
  talk.ngrams = {{"justic breyer", 2}};
  const CellFeatures quiet;
  const SparseVector pet = vectorize_row(talk, quiet, Side::kPetitioner, space);
  const int to_party = *space.ngram_column("justic breyer", Block::kToParty);
  const int to_opp = *space.ngram_column("justic breyer", Block::kToOpponent);
  int hits = 0;
  for (const auto& [c, v] : pet) {
    if (c >= kFirstNGramColumn) {
      EXPECT_EQ(c, to_party);
      EXPECT_EQ(v, 2.0);
      ++hits;
    }
  }
  EXPECT_EQ(hits, 1);
  const SparseVector resp = vectorize_row(quiet, talk, Side::kRespondent, space);
  for (const auto& [c, v] : resp) {
    if (c >= kFirstNGramColumn) {
      EXPECT_EQ(c, to_opp);
    }
  }
}

TEST(VectorizeRow, UnseenNGramsDroppedAndColumnsAscending) {
  const FeatureSpace space({"b"});
  CellFeatures cell;
  cell.ngrams = {{"a", 1}, {"b", 3}, {"c", 1}};
  const SparseVector x = vectorize_row(cell, cell, Side::kRespondent, space);
  for (std::size_t i = 1; i < x.size(); ++i) EXPECT_LT(x[i - 1].first, x[i].first);
  EXPECT_EQ(x.size(), static_cast<std::size_t>(kDenseColumns + 1 + 2));
}

TEST(VectorizeRow, NonzeroCountMatchesBruteForce) {
  Fixture f = RandomFixture(2, 30);
  const FeatureSpace space = build_feature_space(f.store, "breyer");
  for (const CaseRecord& c : f.corpus.cases()) {
    const CellFeatures* p = f.store.cell(c.docket(), "breyer", Side::kPetitioner);
    const CellFeatures* r = f.store.cell(c.docket(), "breyer", Side::kRespondent);
    if (p == nullptr) continue;
    const SparseVector x = vectorize_row(*p, *r, Side::kPetitioner, space);
    int ngram_nonzero = 0;
    for (const auto& [col, v] : x) ngram_nonzero += col >= kFirstNGramColumn && v != 0.0;
    int expected = 0;
    for (const std::string& g : space.vocabulary()) {
      expected += p->ngrams.contains(g) ? 1 : 0;
      expected += r->ngrams.contains(g) ? 1 : 0;
    }
    EXPECT_EQ(ngram_nonzero, expected);
  }
}

TEST(VectorizeRow, BlockSymmetry) {
  Fixture f = RandomFixture(3, 20);
  const FeatureSpace space = build_feature_space(f.store, "alito");
  const auto rows = assemble_rows(f.store, "alito", space);
  const int v = space.vocab_size();
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    std::map<int, double> pet;
    std::map<int, double> resp;
    for (const auto& [c, x] : rows[i].x) pet[c] = x;
    for (const auto& [c, x] : rows[i + 1].x) resp[c] = x;
    for (int k = 0; k < v; ++k) {
      const int party = kFirstNGramColumn + k;
      const int opp = kFirstNGramColumn + v + k;
      EXPECT_EQ(pet.contains(party) ? pet[party] : 0.0, resp.contains(opp) ? resp[opp] : 0.0);
      EXPECT_EQ(pet.contains(opp) ? pet[opp] : 0.0, resp.contains(party) ? resp[party] : 0.0);
    }
    for (int d = 0; d < kDenseFeaturesPerSide; ++d) {
      EXPECT_EQ(pet[d], resp[d + kDenseFeaturesPerSide]);
    }
  }
}

TEST(VectorizeRow, CategoryFilter) {
  CellFeatures cell;
  cell.ngrams = {{"b", 1}};
  const FeatureSpace space({"b"});
  const SparseVector x =
      vectorize_row(cell, cell, Side::kPetitioner, space, CategorySet::PartyOnly());
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x[0].first, kPartyColumn);
  EXPECT_EQ(CategorySet::Of({Category::kNGrams, Category::kCounts}).name(),
            "ngrams+counts+party");
}

LabeledRow DenseRow(double v0, double v1, double ngram) {
  LabeledRow r;
  r.label = 1;
  r.x = {{0, v0}, {1, v1}, {kPartyColumn, 1.0}, {kFirstNGramColumn, ngram}};
  return r;
}

TEST(Scaling, ZScoreConstantAndLog1p) {
  std::vector<LabeledRow> rows = {DenseRow(1.0, 5.0, 0.0), DenseRow(3.0, 5.0, 3.0)};
  const ScalingParams p = scale_dense(rows);
  EXPECT_DOUBLE_EQ(p.mean[0], 2.0);
  EXPECT_DOUBLE_EQ(p.stddev[0], 1.0);
  EXPECT_DOUBLE_EQ(rows[0].x[0].second, -1.0);
  EXPECT_DOUBLE_EQ(rows[1].x[0].second, 1.0);
  EXPECT_EQ(rows[0].x[1].second, 0.0);
  EXPECT_EQ(rows[1].x[1].second, 0.0);
  EXPECT_EQ(rows[0].x[2].second, 1.0);
  EXPECT_EQ(rows[0].x[3].second, 0.0);
  EXPECT_DOUBLE_EQ(rows[1].x[3].second, std::log1p(3.0));
}

TEST(Scaling, HeldOutRowsUseTrainingParams) {
  std::vector<LabeledRow> train = {DenseRow(1.0, 0.0, 0.0), DenseRow(3.0, 0.0, 0.0)};
  const ScalingParams p = scale_dense(train);
  std::vector<LabeledRow> test = {DenseRow(100.0, 7.0, 1.0)};
  const ScalingParams same = scale_dense(test, p);
  EXPECT_EQ(same, p);
  EXPECT_DOUBLE_EQ(test[0].x[0].second, 98.0);
}

TEST(SparseMatrix, RoundTrip) {
  Fixture f = RandomFixture(4, 8);
  const FeatureSpace space = build_feature_space(f.store, "scalia");
  auto rows = assemble_rows(f.store, "scalia", space);
  scale_dense(rows);
  const auto back = read_sparse_matrix(write_sparse_matrix(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].label, rows[i].label);
    EXPECT_EQ(back[i].x, rows[i].x);
  }
  EXPECT_THROW(read_sparse_matrix("+1 5:1 3:2\n"), std::invalid_argument);
}

}  // namespace
}  // namespace oralarg

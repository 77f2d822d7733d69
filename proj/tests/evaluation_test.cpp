// Copyright 2026 The PEG Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "oracle/smatch_oracle.hpp"
#include "peg/corpus_io.hpp"
#include "peg/evaluation.hpp"
#include "support/generators.hpp"

namespace peg {
namespace {

using nlohmann::json;
using testing_support::fixture;

json fixture_json(const std::string& name) { return json::parse(read_file(fixture(name))); }

void drop_edges(json& peg, const std::function<bool(const json&)>& pred) {
  auto& edges = peg["edges"];
  edges.erase(std::remove_if(edges.begin(), edges.end(), pred), edges.end());
}

TEST(PrfTest, Conventions) {
  const Prf both_empty = Prf::from_counts(0, 0, 0);
  EXPECT_DOUBLE_EQ(both_empty.f1, 1.0);
  const Prf no_pred = Prf::from_counts(0, 5, 0);
  EXPECT_DOUBLE_EQ(no_pred.precision, 0.0);
  EXPECT_DOUBLE_EQ(no_pred.f1, 0.0);
  const Prf p = Prf::from_counts(3, 4, 6);
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
  EXPECT_DOUBLE_EQ(p.recall, 0.75);
  EXPECT_DOUBLE_EQ(p.f1, 0.6);
}

TEST(TriplesTest, Figure1TripleCounts) {
  const TripleSet t = triples_of(load_peg_file(fixture("fig1.peg.json")));
  EXPECT_EQ(t.node_triples.size(), 14u);
  EXPECT_EQ(t.relations.size(), 8u);
  // Surfaces are lower-cased.
  EXPECT_EQ(t.nodes[0].surface, "add");
}

TEST(SmatchTest, IdentityIsPerfect) {
  for (const char* name : {"fig1.peg.json", "fig3.peg.json"}) {
    const PegGraph g = load_peg_file(fixture(name));
    const SmatchResult r = smatch(g, g);
    EXPECT_DOUBLE_EQ(r.score.f1, 1.0) << name;
    EXPECT_EQ(r.alignment.matched_triples, triples_of(g).size());
  }
}

TEST(SmatchTest, MatchesOracleOnFigure3Perturbations) {
  const json gold = fixture_json("fig3.peg.json");
  json pred = gold;
  drop_edges(pred, [](const json& e) { return e["role"] == "site"; });
  pred["nodes"][3]["type"] = "reagent";
  const auto want = oracle::smatch(gold, pred);
  const auto got = smatch(graph_from_json(gold), graph_from_json(pred)).score;
  EXPECT_DOUBLE_EQ(got.f1, want.f1);
  EXPECT_DOUBLE_EQ(got.precision, want.precision);
}

TEST(SmatchTest, AlignmentScoreIsConsistent) {
  std::mt19937 rng(4);
  for (int i = 0; i < 50; ++i) {
    const PegGraph g = testing_support::random_graph(rng, 8);
    const PegGraph p = testing_support::perturb(rng, g);
    const TripleSet tg = triples_of(g);
    const TripleSet tp = triples_of(p);
    const SmatchResult r = smatch(tg, tp);
    EXPECT_EQ(matched_triples(tg, tp, r.alignment), r.alignment.matched_triples);
    std::set<std::size_t> used;
    for (const auto& j : r.alignment.gold_to_pred) {
      if (j) EXPECT_TRUE(used.insert(*j).second) << "alignment is not injective";
    }
  }
}

TEST(SmatchProperty, EqualsExhaustiveOracle) {
  std::mt19937 rng(17);
  for (int i = 0; i < 150; ++i) {
    const PegGraph g = testing_support::random_graph(rng, 8);
    const PegGraph p = testing_support::perturb(rng, g);
    const auto want = oracle::smatch(to_json(g), to_json(p));
    const auto got = smatch(g, p).score;
    EXPECT_DOUBLE_EQ(got.f1, want.f1) << "pair " << i;
  }
}

TEST(SmatchProperty, SymmetricF1AndBounded) {
  std::mt19937 rng(23);
  for (int i = 0; i < 100; ++i) {
    const PegGraph g = testing_support::random_graph(rng, 8);
    const PegGraph p = testing_support::perturb(rng, g);
    const Prf ab = smatch(g, p).score;
    const Prf ba = smatch(p, g).score;
    EXPECT_GE(ab.f1, 0.0);
    EXPECT_LE(ab.f1, 1.0);
    EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
    EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
  }
}

TEST(SmatchTest, DeterministicForSeed) {
  std::mt19937 rng(8);
  const PegGraph g = testing_support::random_graph(rng, 8);
  const PegGraph p = testing_support::perturb(rng, g);
  SmatchOptions o;
  o.seed = 42;
  const SmatchResult a = smatch(g, p, o);
  const SmatchResult b = smatch(g, p, o);
  EXPECT_EQ(a.alignment.gold_to_pred, b.alignment.gold_to_pred);
  EXPECT_THROW(smatch(g, p, SmatchOptions{0, 0, true}), std::invalid_argument);
}

TEST(DecompositionTest, IdenticalGraphsScoreOne) {
  for (const char* name : {"fig1.peg.json", "fig3.peg.json"}) {
    const PegGraph g = load_peg_file(fixture(name));
    const DecompositionReport r = decompose(g, g);
    for (const Prf& p : {r.smatch, r.argument_identification, r.predicate_identification, r.core_roles,
                         r.reentrancies}) {
      EXPECT_DOUBLE_EQ(p.f1, 1.0) << name;
    }
  }
}

TEST(DecompositionTest, MetricsMatchOracleViews) {
  const json gold = fixture_json("fig1.peg.json");
  json pred = gold;
  drop_edges(pred, [](const json& e) { return e["source"] == "n-T6" && e["role"] == "ARG0"; });
  const DecompositionReport r = decompose(graph_from_json(gold), graph_from_json(pred));
  EXPECT_DOUBLE_EQ(r.smatch.f1, oracle::smatch(gold, pred).f1);
  EXPECT_DOUBLE_EQ(r.argument_identification.f1, oracle::smatch(gold, pred, oracle::View::kArguments).f1);
  EXPECT_DOUBLE_EQ(r.predicate_identification.f1, oracle::smatch(gold, pred, oracle::View::kPredicates).f1);
  EXPECT_DOUBLE_EQ(r.core_roles.f1, oracle::smatch(gold, pred, oracle::View::kCore).f1);
  EXPECT_DOUBLE_EQ(r.reentrancies.f1, oracle::smatch(gold, pred, oracle::View::kReentrancy).f1);
  EXPECT_LT(r.reentrancies.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.predicate_identification.f1, 1.0);
}

TEST(DecompositionProperty, ViewsMatchOracle) {
  std::mt19937 rng(31);
  for (int i = 0; i < 60; ++i) {
    const PegGraph g = testing_support::random_graph(rng, 7);
    const PegGraph p = testing_support::perturb(rng, g);
    const json gj = to_json(g);
    const json pj = to_json(p);
    const DecompositionReport r = decompose(g, p);
    EXPECT_DOUBLE_EQ(r.argument_identification.f1, oracle::smatch(gj, pj, oracle::View::kArguments).f1);
    EXPECT_DOUBLE_EQ(r.predicate_identification.f1, oracle::smatch(gj, pj, oracle::View::kPredicates).f1);
    EXPECT_DOUBLE_EQ(r.core_roles.f1, oracle::smatch(gj, pj, oracle::View::kCore).f1);
    EXPECT_DOUBLE_EQ(r.reentrancies.f1, oracle::smatch(gj, pj, oracle::View::kReentrancy).f1);
  }
}

TEST(RelationPrfTest, SpanExactScores) {
  const json gold = fixture_json("fig3.peg.json");
  json pred = gold;
  // Drop two of the four site edges and the co-reference.
  drop_edges(pred, [](const json& e) {
    return (e["role"] == "site" && (e["source"] == "n-T5" || e["source"] == "n-T8")) || e["role"] == "co-ref";
  });
  const RelationReport r = relation_prf(graph_from_json(gold), graph_from_json(pred));
  EXPECT_DOUBLE_EQ(r.role(Role::kSite).recall, 0.5);
  EXPECT_DOUBLE_EQ(r.role(Role::kSite).precision, 1.0);
  EXPECT_EQ(r.role(Role::kSite).gold, 4u);
  EXPECT_DOUBLE_EQ(r.role(Role::kCoref).recall, 0.0);
  EXPECT_DOUBLE_EQ(r.core.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.temporal.f1, 1.0);
  // Non-core: 13 gold, 10 predicted, all correct.
  EXPECT_EQ(r.non_core.gold, 13u);
  EXPECT_EQ(r.non_core.pred, 10u);
  EXPECT_DOUBLE_EQ(r.non_core.recall, 10.0 / 13.0);
  // Core split under co-reference closure: incubate->mixture is intra, the
  // mix edge into the vial is inter.
  EXPECT_EQ(r.intra.gold, 5u);
  EXPECT_EQ(r.inter.gold, 1u);
}

TEST(RelationPrfTest, RejectsDifferentDocuments) {
  EXPECT_THROW(relation_prf(load_peg_file(fixture("fig1.peg.json")), load_peg_file(fixture("fig3.peg.json"))),
               std::invalid_argument);
}

TEST(ReportTest, TablesListEveryMetric) {
  const PegGraph g = load_peg_file(fixture("fig1.peg.json"));
  const std::string table = format_table(decompose(g, g));
  for (const char* row : {"Smatch", "Argument identification", "Predicate identification", "Core roles",
                          "Re-entrancies"}) {
    EXPECT_NE(table.find(row), std::string::npos) << row;
  }
  const json j = to_json(relation_prf(g, g));
  EXPECT_EQ(j["per_role"].size(), 11u);
  EXPECT_DOUBLE_EQ(j["core"]["f1"].get<double>(), 1.0);
}

}  // namespace
}  // namespace peg

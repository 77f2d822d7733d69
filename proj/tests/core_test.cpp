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

#include "peg/core.hpp"
#include "peg/corpus_io.hpp"
#include "peg/text.hpp"
#include "support/generators.hpp"

namespace peg {
namespace {

using testing_support::fixture;

PegGraph fig1() { return load_peg_file(fixture("fig1.peg.json")); }
PegGraph fig3() { return load_peg_file(fixture("fig3.peg.json")); }

std::string build_error(const Document& doc, std::vector<Node> nodes, std::vector<Edge> edges) {
  try {
    build_graph(doc, std::move(nodes), std::move(edges));
  } catch (const GraphError& e) {
    return e.code();
  }
  return "";
}

Document small_doc() {
  return Document("d", "Add cells. Spin tube.", {{0, 10}, {11, 21}},
                  {{"T1", {0, 3}, "Add", MentionKind::kOperation},
                   {"T2", {4, 9}, "cells", MentionKind::kArgument},
                   {"T3", {11, 15}, "Spin", MentionKind::kOperation},
                   {"T4", {16, 20}, "tube", MentionKind::kArgument}});
}

std::vector<Node> small_nodes() {
  return {{"a", "T1", OperationType::kTransfer},
          {"b", "T2", ArgumentType::kReagent},
          {"c", "T3", OperationType::kSpin},
          {"d", "T4", ArgumentType::kLocation}};
}

TEST(Utf8IndexTest, CountsScalarValues) {
  const std::string text = "16°C µl";
  Utf8Index idx(text);
  EXPECT_EQ(idx.size(), 7u);
  EXPECT_EQ(idx.slice(text, 0, 4), "16°C");
  EXPECT_EQ(idx.slice(text, 5, 7), "µl");
  EXPECT_THROW(idx.slice(text, 5, 8), std::out_of_range);
  EXPECT_EQ(utf8_length("°"), 1u);
}

TEST(DocumentTest, RejectsInconsistentMentions) {
  auto code = [](std::vector<Mention> ms) {
    try {
      Document("d", "Add cells.", {{0, 10}}, std::move(ms));
    } catch (const GraphError& e) {
      return e.code();
    }
    return std::string();
  };
  EXPECT_EQ(code({{"T1", {0, 3}, "Add", MentionKind::kOperation}}), "");
  EXPECT_EQ(code({{"T1", {0, 3}, "Adx", MentionKind::kOperation}}), "surface-mismatch");
  EXPECT_EQ(code({{"T1", {8, 12}, "s.", MentionKind::kArgument}}), "offset-out-of-bounds");
  EXPECT_EQ(code({{"T1", {0, 3}, "Add", MentionKind::kOperation}, {"T1", {4, 9}, "cells", MentionKind::kArgument}}),
            "duplicate-mention");
}

TEST(BuildGraphTest, StructuralErrorCodes) {
  const Document doc = small_doc();
  auto nodes = small_nodes();
  EXPECT_EQ(build_error(doc, nodes, {}), "");

  auto dup = nodes;
  dup.push_back({"a", "T4", ArgumentType::kLocation});
  EXPECT_EQ(build_error(doc, dup, {}), "duplicate-node");

  auto dangling = nodes;
  dangling[1].mention = "T9";
  EXPECT_EQ(build_error(doc, dangling, {}), "dangling-mention");

  auto reused = nodes;
  reused[3].mention = "T2";
  EXPECT_EQ(build_error(doc, reused, {}), "mention-reused");

  auto kind = nodes;
  kind[1].grounding = OperationType::kMix;
  EXPECT_EQ(build_error(doc, kind, {}), "kind-mismatch");

  EXPECT_EQ(build_error(doc, nodes, {{"a", Role::kArg0, "zz"}}), "dangling-node");
  EXPECT_EQ(build_error(doc, nodes, {{"a", Role::kArg0, "a"}}), "self-loop");
  EXPECT_EQ(build_error(doc, nodes, {{"a", Role::kArg0, "b"}, {"a", Role::kArg0, "b"}}), "duplicate-edge");
}

TEST(BuildGraphTest, SuccCycleNamesItsNodes) {
  try {
    build_graph(small_doc(), small_nodes(), {{"a", Role::kSucc, "c"}, {"c", Role::kSucc, "a"}});
    FAIL() << "cycle accepted";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.code(), "succ-cycle");
    std::vector<std::string> nodes = e.nodes();
    std::sort(nodes.begin(), nodes.end());
    EXPECT_EQ(nodes, (std::vector<std::string>{"a", "c"}));
  }
}

TEST(PegGraphTest, Figure1Shape) {
  const PegGraph g = fig1();
  EXPECT_EQ(g.nodes().size(), 7u);
  EXPECT_EQ(g.edges().size(), 8u);
  EXPECT_EQ(g.topological_order(), (std::vector<std::string>{"n-T1", "n-T4", "n-T6"}));
  EXPECT_TRUE(g.precedes("n-T1", "n-T6"));
  EXPECT_FALSE(g.precedes("n-T6", "n-T1"));
  EXPECT_EQ(reentrant_nodes(g), (std::set<std::string>{"n-T3"}));
  EXPECT_EQ(edge_locality(g, {"n-T1", Role::kArg0, "n-T2"}), Locality::kIntra);
  EXPECT_EQ(edge_locality(g, {"n-T4", Role::kArg0, "n-T3"}), Locality::kInter);
}

TEST(PegGraphTest, Figure3CorefClosure) {
  const PegGraph g = fig3();
  EXPECT_EQ(g.nodes().size(), 20u);
  EXPECT_EQ(reentrant_nodes(g), (std::set<std::string>{"n-T4"}));
  const Partition p = coref_closure(g);
  const auto cls = std::find_if(p.begin(), p.end(), [](const auto& c) {
    return std::find(c.begin(), c.end(), "n-T4") != c.end();
  });
  ASSERT_NE(cls, p.end());
  EXPECT_EQ(*cls, (std::vector<std::string>{"n-T18", "n-T4"}));
  // The vial is introduced in sentence 1 and resurfaces as "the ligation
  // mixture" in sentence 6, so incubating it is sentence-local once the
  // co-reference is followed.
  const Edge mix{"n-T14", Role::kArg0, "n-T4"};
  EXPECT_EQ(edge_locality(g, mix), Locality::kInter);
  EXPECT_EQ(closed_locality(g, p, mix), Locality::kInter);
  const Edge site{"n-T5", Role::kSite, "n-T4"};
  EXPECT_EQ(closed_locality(g, p, site), Locality::kInter);
}

TEST(PegGraphProperty, TopologicalOrderRespectsSucc) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const PegGraph g = testing_support::random_graph(rng, 10);
    const auto order = g.topological_order();
    std::map<std::string, std::size_t> pos;
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    std::size_t ops = 0;
    for (const Node& n : g.nodes()) ops += is_operation(n.grounding);
    EXPECT_EQ(order.size(), ops);
    for (const Edge& e : g.edges()) {
      if (e.role != Role::kSucc) continue;
      EXPECT_LT(pos.at(e.source), pos.at(e.target));
      EXPECT_TRUE(g.precedes(e.source, e.target));
    }
  }
}

TEST(PegGraphProperty, ReentrantNodesHaveTwoIncomingArgumentEdges) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const PegGraph g = testing_support::random_graph(rng, 10);
    std::map<std::string, int> incoming;
    for (const Edge& e : g.edges()) {
      if (is_reentrancy_role(e.role)) ++incoming[e.target];
    }
    for (const Node& n : g.nodes()) {
      const bool expect = !is_operation(n.grounding) && incoming[n.id] >= 2;
      EXPECT_EQ(reentrant_nodes(g).count(n.id) > 0, expect) << n.id;
    }
  }
}

}  // namespace
}  // namespace peg

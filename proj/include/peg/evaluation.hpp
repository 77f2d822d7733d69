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

#ifndef PEG_EVALUATION_HPP_
#define PEG_EVALUATION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "peg/core.hpp"

namespace peg {

// Triples of one graph over a node table. Node-local triples are
// (node, "instance", type) and (node, "surface", lower-cased surface);
// relation triples are (node, role, node) in stored orientation.
struct TripleSet {
  struct NodeInfo {
    std::string id;
    Span span;
    std::string type;
    std::string surface;
    bool operation = false;
  };
  struct NodeTriple {
    std::size_t node;
    std::string relation;  // "instance" or "surface"
    std::string value;
  };
  struct RelationTriple {
    std::size_t source;
    Role role;
    std::size_t target;
  };

  std::vector<NodeInfo> nodes;
  std::vector<NodeTriple> node_triples;
  std::vector<RelationTriple> relations;

  std::size_t size() const { return node_triples.size() + relations.size(); }
};

TripleSet triples_of(const PegGraph& g);

// Triple subsets used by the fine-grained metrics.
TripleSet argument_identification_triples(const PegGraph& g);
TripleSet predicate_identification_triples(const PegGraph& g);
TripleSet core_role_triples(const PegGraph& g);
TripleSet reentrancy_triples(const PegGraph& g);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matched = 0;
  std::size_t gold = 0;
  std::size_t pred = 0;

  // P = matched/pred, R = matched/gold; two empty sides agree perfectly.
  static Prf from_counts(std::size_t matched, std::size_t gold, std::size_t pred);
};

nlohmann::json to_json(const Prf& p);

// Partial injective map gold node index -> pred node index.
struct Alignment {
  std::vector<std::optional<std::size_t>> gold_to_pred;
  std::size_t matched_triples = 0;
};

struct SmatchOptions {
  int restarts = 4;
  std::uint32_t seed = 0;
  // Seed the first restart with nodes that share (span, type); otherwise
  // start from (surface, type) matches only.
  bool span_seeding = true;
};

struct SmatchResult {
  Prf score;
  Alignment alignment;
};

// Matched triples of `gold` under `alignment`.
std::size_t matched_triples(const TripleSet& gold, const TripleSet& pred, const Alignment& alignment);

// Restarted steepest-ascent hill climbing over node alignments.
SmatchResult smatch(const TripleSet& gold, const TripleSet& pred, const SmatchOptions& options = {});
SmatchResult smatch(const PegGraph& gold, const PegGraph& pred, const SmatchOptions& options = {});

struct DecompositionReport {
  Prf smatch;
  Prf argument_identification;
  Prf predicate_identification;
  Prf core_roles;
  Prf reentrancies;
};

DecompositionReport decompose(const PegGraph& gold, const PegGraph& pred,
                              const SmatchOptions& options = {});

struct RelationRow {
  std::string name;
  Prf score;
};

// Span-exact relation scores. Rows: one per role in report order, then
// "Core (all roles)", "Non-core (all roles)", "Temporal ordering", and the
// core-role "Intra-sentence"/"Inter-sentence" split.
struct RelationReport {
  std::vector<RelationRow> per_role;
  Prf core;
  Prf non_core;
  Prf temporal;
  Prf intra;
  Prf inter;

  const Prf& role(Role r) const;
};

// Throws std::invalid_argument when the graphs annotate different documents.
RelationReport relation_prf(const PegGraph& gold, const PegGraph& pred);

nlohmann::json to_json(const DecompositionReport& r);
nlohmann::json to_json(const RelationReport& r);
std::string format_table(const DecompositionReport& r);
std::string format_table(const RelationReport& r);

}  // namespace peg

#endif  // PEG_EVALUATION_HPP_

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

#ifndef PEG_CORE_HPP_
#define PEG_CORE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "peg/types.hpp"

namespace peg {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  auto operator<=>(const Span&) const = default;
};

enum class MentionKind { kOperation, kArgument };

std::string_view to_string(MentionKind k);
std::optional<MentionKind> parse_mention_kind(std::string_view s);

struct Mention {
  std::string id;
  Span span;
  std::string surface;
  MentionKind kind = MentionKind::kArgument;

  bool operator==(const Mention&) const = default;
};

// Protocol text with sentence segmentation and mention spans. Offsets are
// half-open and count Unicode scalar values.
class Document {
 public:
  Document() = default;
  // Checks every invariant; throws GraphError on violation.
  Document(std::string id, std::string text, std::vector<Span> sentences,
           std::vector<Mention> mentions);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::vector<Span>& sentences() const { return sentences_; }
  const std::vector<Mention>& mentions() const { return mentions_; }

  const Mention* find_mention(const std::string& id) const;
  // Index of the sentence containing the span, if any.
  std::optional<std::size_t> sentence_of(Span span) const;

  bool operator==(const Document&) const = default;

 private:
  std::string id_;
  std::string text_;
  std::vector<Span> sentences_;
  std::vector<Mention> mentions_;
  std::map<std::string, std::size_t> mention_index_;
};

struct Node {
  std::string id;
  std::string mention;
  Grounding grounding;

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string source;
  Role role = Role::kArg0;
  std::string target;

  auto operator<=>(const Edge&) const = default;
};

// Structural errors raised while building documents and graphs. `code` is a
// stable machine-readable tag (e.g. "succ-cycle", "dangling-node").
class GraphError : public std::runtime_error {
 public:
  GraphError(std::string code, const std::string& message, std::vector<std::string> nodes = {})
      : std::runtime_error(message), code_(std::move(code)), nodes_(std::move(nodes)) {}

  const std::string& code() const { return code_; }
  // Node ids involved, e.g. the members of a detected cycle.
  const std::vector<std::string>& nodes() const { return nodes_; }

 private:
  std::string code_;
  std::vector<std::string> nodes_;
};

// Immutable process execution graph over one document. Role edges are stored
// head -> dependent (operation -> argument, object -> its measure, ...);
// succ edges point from the earlier to the later operation.
class PegGraph {
 public:
  PegGraph() = default;

  const Document& document() const { return document_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Node* find_node(const std::string& id) const;
  const Node& node(const std::string& id) const;
  const Mention& mention_of(const Node& n) const;
  // Node backed by the given mention, if any.
  const Node* node_for_mention(const std::string& mention_id) const;

  bool empty() const { return nodes_.empty(); }

  // Operation nodes in a topological order of the succ subgraph. Ties are
  // broken by mention position, so the order is deterministic.
  std::vector<std::string> topological_order() const;
  // Transitive temporal ordering, computed on demand: true iff a succ path
  // leads from `before` to `after`.
  bool precedes(const std::string& before, const std::string& after) const;

 private:
  friend PegGraph build_graph(Document, std::vector<Node>, std::vector<Edge>);

  Document document_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> node_index_;
  std::map<std::string, std::size_t> mention_to_node_;
};

// Builds a graph and enforces the structural invariants: resolvable mention
// and node references, one node per mention, grounding matching mention kind,
// no duplicate triples, acyclic succ subgraph.
PegGraph build_graph(Document document, std::vector<Node> nodes, std::vector<Edge> edges);

// Argument nodes with at least two incoming ARG0/ARG1/ARG2/site edges.
std::set<std::string> reentrant_nodes(const PegGraph& g);

enum class Locality { kIntra, kInter };
std::string_view to_string(Locality l);

Locality edge_locality(const PegGraph& g, const Edge& e);
Locality node_locality(const PegGraph& g, const std::string& a, const std::string& b);

// Partition of argument nodes induced by co-ref edges (orientation ignored).
// Classes are sorted; every argument node appears in exactly one class.
using Partition = std::vector<std::vector<std::string>>;
Partition coref_closure(const PegGraph& g);

// Locality with co-reference closure: intra iff some member of a's class and
// some member of b's class share a sentence.
Locality closed_locality(const PegGraph& g, const Partition& closure, const Edge& e);

}  // namespace peg

#endif  // PEG_CORE_HPP_

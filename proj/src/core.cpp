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

#include "peg/core.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "peg/text.hpp"

namespace peg {

std::string_view to_string(MentionKind k) {
  return k == MentionKind::kOperation ? "operation" : "argument";
}

std::optional<MentionKind> parse_mention_kind(std::string_view s) {
  if (s == "operation") return MentionKind::kOperation;
  if (s == "argument") return MentionKind::kArgument;
  return std::nullopt;
}

std::string_view to_string(Locality l) { return l == Locality::kIntra ? "intra" : "inter"; }

namespace {

std::string span_str(Span s) {
  return "[" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
}

}  // namespace

Document::Document(std::string id, std::string text, std::vector<Span> sentences,
                   std::vector<Mention> mentions)
    : id_(std::move(id)),
      text_(std::move(text)),
      sentences_(std::move(sentences)),
      mentions_(std::move(mentions)) {
  const Utf8Index index(text_);
  std::size_t prev_end = 0;
  for (const Span& s : sentences_) {
    if (s.start >= s.end || s.start < prev_end || s.end > index.size()) {
      throw GraphError("bad-sentence", "document " + id_ + ": sentence span " + span_str(s) +
                                           " is empty, overlapping, unordered or out of bounds");
    }
    prev_end = s.end;
  }
  for (std::size_t i = 0; i < mentions_.size(); ++i) {
    const Mention& m = mentions_[i];
    if (!mention_index_.emplace(m.id, i).second) {
      throw GraphError("duplicate-mention", "document " + id_ + ": duplicate mention id " + m.id);
    }
    if (m.span.start >= m.span.end || m.span.end > index.size()) {
      throw GraphError("offset-out-of-bounds", "mention " + m.id + ": span " + span_str(m.span) +
                                                   " is empty or outside the text");
    }
    const std::string slice = index.slice(text_, m.span.start, m.span.end);
    if (slice != m.surface) {
      throw GraphError("surface-mismatch", "mention " + m.id + ": surface \"" + m.surface +
                                               "\" does not match text \"" + slice + "\" at " +
                                               span_str(m.span));
    }
    if (!sentence_of(m.span)) {
      throw GraphError("mention-outside-sentence",
                       "mention " + m.id + ": span " + span_str(m.span) +
                           " does not lie inside a single sentence");
    }
  }
}

const Mention* Document::find_mention(const std::string& id) const {
  auto it = mention_index_.find(id);
  return it == mention_index_.end() ? nullptr : &mentions_[it->second];
}

std::optional<std::size_t> Document::sentence_of(Span span) const {
  auto it = std::upper_bound(sentences_.begin(), sentences_.end(), span.start,
                             [](std::size_t pos, const Span& s) { return pos < s.start; });
  if (it == sentences_.begin()) return std::nullopt;
  --it;
  if (span.start >= it->start && span.end <= it->end) {
    return static_cast<std::size_t>(it - sentences_.begin());
  }
  return std::nullopt;
}

const Node* PegGraph::find_node(const std::string& id) const {
  auto it = node_index_.find(id);
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const Node& PegGraph::node(const std::string& id) const {
  const Node* n = find_node(id);
  if (n == nullptr) throw GraphError("dangling-node", "unknown node " + id, {id});
  return *n;
}

const Mention& PegGraph::mention_of(const Node& n) const {
  return *document_.find_mention(n.mention);
}

const Node* PegGraph::node_for_mention(const std::string& mention_id) const {
  auto it = mention_to_node_.find(mention_id);
  return it == mention_to_node_.end() ? nullptr : &nodes_[it->second];
}

namespace {

// Operation nodes in Kahn order over succ edges, ties by mention position.
// Returns the nodes left unplaced through `stuck` when a cycle exists.
std::vector<std::string> kahn_order(const std::vector<Node>& nodes, const std::vector<Edge>& edges,
                                    const std::function<Span(const Node&)>& span_of,
                                    std::vector<std::string>* stuck) {
  std::map<std::string, const Node*> by_id;
  for (const Node& n : nodes) by_id[n.id] = &n;
  std::map<std::string, int> indegree;
  std::map<std::string, std::vector<std::string>> succ;
  for (const Node& n : nodes) {
    if (is_operation(n.grounding)) indegree[n.id] = 0;
  }
  for (const Edge& e : edges) {
    if (e.role != Role::kSucc) continue;
    succ[e.source].push_back(e.target);
    ++indegree[e.target];
    indegree.try_emplace(e.source, 0);
  }
  using Key = std::pair<Span, std::string>;
  auto key_of = [&](const std::string& id) {
    auto it = by_id.find(id);
    return Key{it == by_id.end() ? Span{} : span_of(*it->second), id};
  };
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push(key_of(id));
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    const std::string id = ready.top().second;
    ready.pop();
    order.push_back(id);
    for (const std::string& t : succ[id]) {
      if (--indegree[t] == 0) ready.push(key_of(t));
    }
  }
  if (stuck != nullptr) {
    for (const auto& [id, deg] : indegree) {
      if (deg > 0) stuck->push_back(id);
    }
  }
  return order;
}

// Finds one succ cycle among `candidates` and returns its nodes in order.
// Every node Kahn could not place has a predecessor among the unplaced nodes,
// so walking predecessors must revisit a node.
std::vector<std::string> find_cycle(const std::vector<Edge>& edges,
                                    const std::vector<std::string>& candidates) {
  const std::set<std::string> region(candidates.begin(), candidates.end());
  std::map<std::string, std::vector<std::string>> pred;
  for (const Edge& e : edges) {
    if (e.role == Role::kSucc && region.count(e.source) && region.count(e.target))
      pred[e.target].push_back(e.source);
  }
  std::vector<std::string> path;
  std::map<std::string, std::size_t> seen;
  std::string cur = candidates.front();
  while (!seen.count(cur)) {
    seen[cur] = path.size();
    path.push_back(cur);
    cur = pred[cur].front();
  }
  std::vector<std::string> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen[cur]), path.end());
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

std::vector<std::string> PegGraph::topological_order() const {
  return kahn_order(nodes_, edges_, [this](const Node& n) { return mention_of(n).span; }, nullptr);
}

bool PegGraph::precedes(const std::string& before, const std::string& after) const {
  std::map<std::string, std::vector<std::string>> succ;
  for (const Edge& e : edges_) {
    if (e.role == Role::kSucc) succ[e.source].push_back(e.target);
  }
  std::set<std::string> seen;
  std::vector<std::string> stack = {before};
  while (!stack.empty()) {
    const std::string cur = stack.back();
    stack.pop_back();
    for (const std::string& t : succ[cur]) {
      if (t == after) return true;
      if (seen.insert(t).second) stack.push_back(t);
    }
  }
  return false;
}

PegGraph build_graph(Document document, std::vector<Node> nodes, std::vector<Edge> edges) {
  PegGraph g;
  g.document_ = std::move(document);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (!g.node_index_.emplace(n.id, i).second) {
      throw GraphError("duplicate-node", "duplicate node id " + n.id, {n.id});
    }
    const Mention* m = g.document_.find_mention(n.mention);
    if (m == nullptr) {
      throw GraphError("dangling-mention", "node " + n.id + " references unknown mention " + n.mention,
                       {n.id});
    }
    if (!g.mention_to_node_.emplace(n.mention, i).second) {
      throw GraphError("mention-reused", "mention " + n.mention + " backs more than one node",
                       {nodes[g.mention_to_node_[n.mention]].id, n.id});
    }
    const bool op_mention = m->kind == MentionKind::kOperation;
    if (op_mention != is_operation(n.grounding)) {
      throw GraphError("kind-mismatch",
                       "node " + n.id + " grounded to " + std::string(to_string(n.grounding)) +
                           " but mention " + m->id + " is an " + std::string(to_string(m->kind)) +
                           " mention",
                       {n.id});
    }
  }
  std::set<Edge> seen;
  for (const Edge& e : edges) {
    for (const std::string* end : {&e.source, &e.target}) {
      if (!g.node_index_.count(*end)) {
        throw GraphError("dangling-node",
                         "edge (" + e.source + ", " + std::string(to_string(e.role)) + ", " +
                             e.target + ") references unknown node " + *end,
                         {*end});
      }
    }
    if (e.source == e.target) {
      if (e.role == Role::kSucc) {
        throw GraphError("succ-cycle", "succ cycle detected: " + e.source + " -> " + e.source,
                         {e.source});
      }
      throw GraphError("self-loop", "edge (" + e.source + ", " + std::string(to_string(e.role)) +
                                        ", " + e.target + ") is a self-loop",
                       {e.source});
    }
    if (!seen.insert(e).second) {
      throw GraphError("duplicate-edge", "duplicate edge (" + e.source + ", " +
                                             std::string(to_string(e.role)) + ", " + e.target + ")",
                       {e.source, e.target});
    }
  }
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);

  std::vector<std::string> stuck;
  kahn_order(g.nodes_, g.edges_, [&g](const Node& n) { return g.mention_of(n).span; }, &stuck);
  if (!stuck.empty()) {
    std::vector<std::string> cycle = find_cycle(g.edges_, stuck);
    std::string msg = "succ cycle detected:";
    for (const std::string& id : cycle) msg += " " + id + " ->";
    msg += " " + cycle.front();
    throw GraphError("succ-cycle", msg, std::move(cycle));
  }
  return g;
}

std::set<std::string> reentrant_nodes(const PegGraph& g) {
  std::map<std::string, int> incoming;
  for (const Edge& e : g.edges()) {
    if (is_reentrancy_role(e.role)) ++incoming[e.target];
  }
  std::set<std::string> out;
  for (const auto& [id, count] : incoming) {
    if (count >= 2 && !is_operation(g.node(id).grounding)) out.insert(id);
  }
  return out;
}

Locality node_locality(const PegGraph& g, const std::string& a, const std::string& b) {
  const Document& doc = g.document();
  const auto sa = doc.sentence_of(g.mention_of(g.node(a)).span);
  const auto sb = doc.sentence_of(g.mention_of(g.node(b)).span);
  return sa == sb ? Locality::kIntra : Locality::kInter;
}

Locality edge_locality(const PegGraph& g, const Edge& e) {
  return node_locality(g, e.source, e.target);
}

Partition coref_closure(const PegGraph& g) {
  std::map<std::string, std::string> parent;
  for (const Node& n : g.nodes()) {
    if (!is_operation(n.grounding)) parent[n.id] = n.id;
  }
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    std::string& p = parent[x];
    if (p != x) p = find(p);
    return p;
  };
  for (const Edge& e : g.edges()) {
    if (e.role != Role::kCoref) continue;
    if (!parent.count(e.source) || !parent.count(e.target)) continue;
    std::string a = find(e.source);
    std::string b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::string, std::vector<std::string>> classes;
  for (const auto& [id, _] : parent) classes[find(id)].push_back(id);
  Partition out;
  for (auto& [_, members] : classes) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

Locality closed_locality(const PegGraph& g, const Partition& closure, const Edge& e) {
  auto sentences_of = [&](const std::string& id) {
    std::set<std::size_t> out;
    auto add = [&](const std::string& n) {
      if (auto s = g.document().sentence_of(g.mention_of(g.node(n)).span)) out.insert(*s);
    };
    for (const auto& cls : closure) {
      if (std::binary_search(cls.begin(), cls.end(), id)) {
        for (const std::string& m : cls) add(m);
        return out;
      }
    }
    add(id);
    return out;
  };
  const auto a = sentences_of(e.source);
  const auto b = sentences_of(e.target);
  for (std::size_t s : a) {
    if (b.count(s)) return Locality::kIntra;
  }
  return Locality::kInter;
}

}  // namespace peg

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

#include "peg/validator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "peg/ontology.hpp"

namespace peg {

std::string_view to_string(Severity s) { return s == Severity::kError ? "error" : "warning"; }

nlohmann::json to_json(const Diagnostic& d) {
  nlohmann::json locus = nlohmann::json::object();
  if (d.locus.node) locus["node"] = *d.locus.node;
  if (d.locus.edge) {
    locus["edge"] = {{"source", d.locus.edge->source},
                     {"role", to_string(d.locus.edge->role)},
                     {"target", d.locus.edge->target}};
  }
  if (d.locus.command) locus["command"] = *d.locus.command;
  return {{"severity", to_string(d.severity)},
          {"code", d.code},
          {"locus", locus},
          {"message", d.message}};
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

std::vector<Diagnostic> errors_only(const std::vector<Diagnostic>& diags) {
  std::vector<Diagnostic> out;
  std::copy_if(diags.begin(), diags.end(), std::back_inserter(out),
               [](const Diagnostic& d) { return d.severity == Severity::kError; });
  return out;
}

std::vector<Diagnostic> validate(const PegGraph& g) {
  std::vector<Diagnostic> out;
  for (const Edge& e : g.edges()) {
    const Legality leg =
        edge_legal_stored(g.node(e.source).grounding, e.role, g.node(e.target).grounding);
    if (!leg.legal) {
      const std::string code = leg.rule == "succ-non-operation" ? leg.rule : "illegal-edge";
      out.push_back({Severity::kError, code, {.edge = e}, leg.message});
    } else if (leg.relaxed) {
      out.push_back({Severity::kWarning, "relaxed-target", {.edge = e}, leg.message});
    }
  }
  std::map<std::string, std::set<Role>> filled;
  for (const Edge& e : g.edges()) filled[e.source].insert(e.role);
  for (const Node& n : g.nodes()) {
    const auto* op = std::get_if<OperationType>(&n.grounding);
    if (op == nullptr) continue;
    for (Role r : required_roles(*op)) {
      if (!filled[n.id].count(r)) {
        out.push_back({Severity::kError, "missing-required-role", {.node = n.id},
                       "missing required " + std::string(to_string(r)) + " on " +
                           std::string(to_string(*op))});
      }
    }
  }
  return out;
}

nlohmann::json to_json(const LintReport& r) {
  return {{"component_count", r.component_count},
          {"isolated_mentions", r.isolated_mentions},
          {"score", r.score}};
}

LintReport lint(const PegGraph& g) {
  std::vector<std::size_t> parent(g.nodes().size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes().size(); ++i) index[g.nodes()[i].id] = i;
  std::map<std::string, std::size_t> degree;
  for (const Edge& e : g.edges()) {
    parent[find(index[e.source])] = find(index[e.target]);
    ++degree[e.source];
    ++degree[e.target];
  }
  LintReport r;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (find(i) == i) ++r.component_count;
  }
  for (const Mention& m : g.document().mentions()) {
    const Node* n = g.node_for_mention(m.id);
    if (n == nullptr || degree[n->id] == 0) r.isolated_mentions.push_back(m.id);
  }
  r.score = r.component_count + r.isolated_mentions.size();
  return r;
}

std::vector<std::string> semantic_underspecified_ops(const PegGraph& g) {
  std::set<std::string> has_core;
  for (const Edge& e : g.edges()) {
    if (is_core(e.role)) {
      has_core.insert(e.source);
      has_core.insert(e.target);
    }
  }
  std::vector<std::string> out;
  for (const Node& n : g.nodes()) {
    if (is_operation(n.grounding) && !has_core.count(n.id)) out.push_back(n.id);
  }
  return out;
}

}  // namespace peg

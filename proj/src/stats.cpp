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

#include "peg/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "peg/ontology.hpp"
#include "peg/text.hpp"

namespace peg {

using nlohmann::json;

RelationCounts& RelationCounts::operator+=(const RelationCounts& o) {
  intra += o.intra;
  inter += o.inter;
  total += o.total;
  reentrancy += o.reentrancy;
  return *this;
}

CorpusStats corpus_stats(std::span<const PegGraph> graphs) {
  CorpusStats s;
  for (Role r : kAllRoles) s.per_role[r];
  for (OperationType t : kAllOperationTypes) s.operation_types[t] = 0;
  for (ArgumentType t : kAllArgumentTypes) s.argument_types[t] = 0;

  for (const PegGraph& g : graphs) {
    ++s.documents;
    s.sentences += g.document().sentences().size();
    s.words += split_whitespace(g.document().text()).size();

    const auto reentrant = reentrant_nodes(g);
    const Partition closure = coref_closure(g);
    std::set<std::string> with_core;
    std::vector<OperationType> ops;
    for (const Edge& e : g.edges()) {
      RelationCounts& c = s.per_role[e.role];
      ++c.total;
      (edge_locality(g, e) == Locality::kIntra ? c.intra : c.inter) += 1;
      if (is_reentrancy_role(e.role)) {
        ++s.arg_site_total;
        if (reentrant.count(e.target)) ++c.reentrancy;
        if (closed_locality(g, closure, e) == Locality::kInter) ++s.arg_site_inter_closed;
      }
      if (e.role != Role::kSucc && (is_operation(g.node(e.source).grounding) ||
                                    is_operation(g.node(e.target).grounding))) {
        ++s.op_arguments;
      }
      if (is_core(e.role)) {
        with_core.insert(e.source);
        with_core.insert(e.target);
      }
    }
    for (const Node& n : g.nodes()) {
      if (const auto* op = std::get_if<OperationType>(&n.grounding)) {
        ++s.operation_types[*op];
        ++s.operations;
        ops.push_back(*op);
        if (!with_core.count(n.id)) ++s.ops_without_core;
      } else {
        ++s.argument_types[std::get<ArgumentType>(n.grounding)];
      }
    }
    if (!ops.empty()) s.coverage.push_back(coverage_fraction(ops));
  }

  for (const auto& [role, counts] : s.per_role) {
    switch (category(role)) {
      case RoleCategory::kCore: s.core += counts; break;
      case RoleCategory::kNonCore: s.non_core += counts; break;
      case RoleCategory::kTemporal: s.temporal += counts; break;
    }
  }
  s.grand_total = s.core;
  s.grand_total += s.non_core;
  s.grand_total += s.temporal;
  s.avg_args_per_op =
      s.operations == 0 ? 0.0 : static_cast<double>(s.op_arguments) / static_cast<double>(s.operations);
  return s;
}

namespace {

json counts_json(const RelationCounts& c) {
  return {{"intra", c.intra}, {"inter", c.inter}, {"total", c.total}, {"reentrancy", c.reentrancy}};
}

double ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

}  // namespace

json to_json(const CorpusStats& s) {
  json roles = json::object();
  for (const auto& [role, c] : s.per_role) roles[std::string(to_string(role))] = counts_json(c);
  json ops = json::object();
  for (const auto& [t, n] : s.operation_types) ops[std::string(to_string(t))] = n;
  json args = json::object();
  for (const auto& [t, n] : s.argument_types) args[std::string(to_string(t))] = n;
  return {
      {"relations",
       {{"per_role", roles},
        {"core", counts_json(s.core)},
        {"non_core", counts_json(s.non_core)},
        {"temporal", counts_json(s.temporal)},
        {"grand_total", counts_json(s.grand_total)},
        {"intra_pct", 100.0 * ratio(s.grand_total.intra, s.grand_total.total)},
        {"inter_pct", 100.0 * ratio(s.grand_total.inter, s.grand_total.total)},
        {"arg_site_total", s.arg_site_total},
        {"arg_site_reentrancy_pct",
         100.0 * ratio(s.core.reentrancy + s.per_role.at(Role::kSite).reentrancy, s.arg_site_total)},
        {"arg_site_inter_with_coref_closure", s.arg_site_inter_closed}}},
      {"operation_types", ops},
      {"argument_types", args},
      {"arguments_per_operation",
       {{"operations", s.operations},
        {"op_arguments", s.op_arguments},
        {"avg_args_per_op", s.avg_args_per_op},
        {"ops_without_core", s.ops_without_core},
        {"ops_without_core_pct", 100.0 * ratio(s.ops_without_core, s.operations)}}},
      {"corpus",
       {{"documents", s.documents},
        {"sentences", s.sentences},
        {"words", s.words},
        {"words_per_sentence", ratio(s.words, s.sentences)},
        {"sentences_per_document", ratio(s.sentences, s.documents)},
        {"tokenization", s.tokenization}}},
      {"coverage",
       {{"per_document", s.coverage},
        {"share_above_90pct", share_above(s.coverage, 0.9)},
        {"share_above_70pct", share_above(s.coverage, 0.7)}}},
  };
}

std::string format_tables(const CorpusStats& s) {
  std::ostringstream os;
  char line[160];
  auto row = [&](const std::string& name, const RelationCounts& c, bool reent) {
    std::snprintf(line, sizeof(line), "%-20s %8zu %8zu %8zu %12s\n", name.c_str(), c.intra, c.inter,
                  c.total, reent ? std::to_string(c.reentrancy).c_str() : "-");
    os << line;
  };
  std::snprintf(line, sizeof(line), "%-20s %8s %8s %8s %12s\n", "Relation", "#Intra", "#Inter",
                "Total", "#Re-entrancy");
  os << line;
  os << "Core\n";
  for (Role r : {Role::kArg0, Role::kArg1, Role::kArg2}) {
    row("  " + std::string(to_string(r)), s.per_role.at(r), true);
  }
  row("Total (core)", s.core, true);
  os << "Non-Core\n";
  for (Role r : {Role::kSite, Role::kSetting, Role::kUsage, Role::kCoref, Role::kLocatedAt,
                 Role::kMeasure, Role::kModifier, Role::kPartOf}) {
    row("  " + std::string(to_string(r)), s.per_role.at(r), r == Role::kSite);
  }
  row("Total (non-core)", s.non_core, true);
  row("Temporal", s.temporal, false);
  row("Grand Total", s.grand_total, true);
  os << "  intra " << fmt("%.1f%%", 100.0 * ratio(s.grand_total.intra, s.grand_total.total))
     << ", inter " << fmt("%.1f%%", 100.0 * ratio(s.grand_total.inter, s.grand_total.total))
     << "; ARG*/site inter with co-ref closure: " << s.arg_site_inter_closed << "/"
     << s.arg_site_total << "\n\n";

  std::snprintf(line, sizeof(line), "%-24s %8s %8s\n", "Operation type", "Count", "Pct.");
  os << line;
  for (const auto& [t, n] : s.operation_types) {
    std::snprintf(line, sizeof(line), "%-24s %8zu %8.1f\n", std::string(to_string(t)).c_str(), n,
                  100.0 * ratio(n, s.operations));
    os << line;
  }
  os << "\n";
  std::size_t nargs = 0;
  for (const auto& [t, n] : s.argument_types) nargs += n;
  std::snprintf(line, sizeof(line), "%-24s %8s %8s\n", "Argument type", "Count", "Pct.");
  os << line;
  for (const auto& [t, n] : s.argument_types) {
    std::snprintf(line, sizeof(line), "%-24s %8zu %8.1f\n", std::string(to_string(t)).c_str(), n,
                  100.0 * ratio(n, nargs));
    os << line;
  }
  os << "\n";
  std::snprintf(line, sizeof(line), "%-16s %8s %20s %8s %8s\n", "", "Avg #args/op",
                "#Ops w/o core arg", "#Ops", "Pct.");
  os << line;
  std::snprintf(line, sizeof(line), "%-16s %12.2f %20zu %8zu %8.1f\n", "corpus", s.avg_args_per_op,
                s.ops_without_core, s.operations, 100.0 * ratio(s.ops_without_core, s.operations));
  os << line << "\n";
  os << "# words            " << s.words << " (" << s.tokenization << " tokens)\n";
  os << "# words / sent.    " << fmt("%.2f", ratio(s.words, s.sentences)) << "\n";
  os << "# sentences        " << s.sentences << "\n";
  os << "# sentences / docs " << fmt("%.2f", ratio(s.sentences, s.documents)) << "\n";
  os << "# docs.            " << s.documents << "\n\n";
  os << "Coverage: " << fmt("%.1f%%", 100.0 * share_above(s.coverage, 0.9))
     << " of protocols above 90% known operations, "
     << fmt("%.1f%%", 100.0 * share_above(s.coverage, 0.7)) << " above 70%\n";
  return os.str();
}

}  // namespace peg

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

#include "peg/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "peg/ontology.hpp"
#include "peg/text.hpp"

namespace peg {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Triples

namespace {

TripleSet node_table(const PegGraph& g) {
  TripleSet t;
  for (const Node& n : g.nodes()) {
    const Mention& m = g.mention_of(n);
    t.nodes.push_back({n.id, m.span, std::string(to_string(n.grounding)), to_lower_ascii(m.surface),
                       is_operation(n.grounding)});
  }
  return t;
}

std::size_t index_of(const PegGraph& g, const std::string& id) {
  const Node* n = g.find_node(id);
  return static_cast<std::size_t>(n - g.nodes().data());
}

void add_instance(TripleSet& t, std::size_t i) {
  t.node_triples.push_back({i, "instance", t.nodes[i].type});
}

void add_surface(TripleSet& t, std::size_t i) {
  t.node_triples.push_back({i, "surface", t.nodes[i].surface});
}

}  // namespace

TripleSet triples_of(const PegGraph& g) {
  TripleSet t = node_table(g);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    add_instance(t, i);
    add_surface(t, i);
  }
  for (const Edge& e : g.edges()) {
    t.relations.push_back({index_of(g, e.source), e.role, index_of(g, e.target)});
  }
  return t;
}

TripleSet argument_identification_triples(const PegGraph& g) {
  TripleSet t = node_table(g);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (t.nodes[i].operation) continue;
    add_instance(t, i);
    add_surface(t, i);
  }
  return t;
}

TripleSet predicate_identification_triples(const PegGraph& g) {
  TripleSet t = node_table(g);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (!t.nodes[i].operation) continue;
    add_instance(t, i);
    add_surface(t, i);
  }
  return t;
}

namespace {

// Relation triples selected by `keep` plus the instance triples of their
// endpoints.
template <typename Pred>
TripleSet edge_subgraph(const PegGraph& g, Pred keep) {
  TripleSet t = node_table(g);
  std::set<std::size_t> endpoints;
  for (const Edge& e : g.edges()) {
    if (!keep(e)) continue;
    const std::size_t s = index_of(g, e.source);
    const std::size_t d = index_of(g, e.target);
    t.relations.push_back({s, e.role, d});
    endpoints.insert(s);
    endpoints.insert(d);
  }
  for (std::size_t i : endpoints) add_instance(t, i);
  return t;
}

}  // namespace

TripleSet core_role_triples(const PegGraph& g) {
  return edge_subgraph(g, [](const Edge& e) { return is_core(e.role); });
}

TripleSet reentrancy_triples(const PegGraph& g) {
  const auto reentrant = reentrant_nodes(g);
  return edge_subgraph(g, [&](const Edge& e) {
    return is_reentrancy_role(e.role) && (reentrant.count(e.target) || reentrant.count(e.source));
  });
}

// ---------------------------------------------------------------------------
// Scores

Prf Prf::from_counts(std::size_t matched, std::size_t gold, std::size_t pred) {
  Prf p;
  p.matched = matched;
  p.gold = gold;
  p.pred = pred;
  if (gold == 0 && pred == 0) {
    p.precision = p.recall = p.f1 = 1.0;
    return p;
  }
  p.precision = pred == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(pred);
  p.recall = gold == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(gold);
  p.f1 = p.precision + p.recall == 0.0
             ? 0.0
             : 2.0 * p.precision * p.recall / (p.precision + p.recall);
  return p;
}

json to_json(const Prf& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1},
          {"matched", p.matched},     {"gold", p.gold},     {"pred", p.pred}};
}

// ---------------------------------------------------------------------------
// Alignment search

namespace {

class AlignmentScorer {
 public:
  AlignmentScorer(const TripleSet& gold, const TripleSet& pred)
      : gold_(gold), pred_(pred), n_(gold.nodes.size()), m_(pred.nodes.size()) {
    node_weight_.assign(n_ * m_, 0);
    std::set<std::tuple<std::size_t, std::string, std::string>> pred_local;
    for (const auto& t : pred.node_triples) pred_local.emplace(t.node, t.relation, t.value);
    for (const auto& t : gold.node_triples) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (pred_local.count({j, t.relation, t.value})) ++node_weight_[t.node * m_ + j];
      }
    }
    for (const auto& r : pred.relations) pred_relations_.insert(key(r.source, r.role, r.target));
    relations_of_.resize(n_);
    for (std::size_t ri = 0; ri < gold.relations.size(); ++ri) {
      const auto& r = gold.relations[ri];
      relations_of_[r.source].push_back(ri);
      if (r.target != r.source) relations_of_[r.target].push_back(ri);
    }
  }

  std::size_t gold_size() const { return n_; }
  std::size_t pred_size() const { return m_; }

  int node_weight(std::size_t i, long j) const {
    return j < 0 ? 0 : node_weight_[i * m_ + static_cast<std::size_t>(j)];
  }

  int relation_hit(std::size_t ri, const std::vector<long>& map) const {
    const auto& r = gold_.relations[ri];
    const long s = map[r.source];
    const long t = map[r.target];
    if (s < 0 || t < 0) return 0;
    return pred_relations_.count(key(static_cast<std::size_t>(s), r.role,
                                     static_cast<std::size_t>(t)))
               ? 1
               : 0;
  }

  int total(const std::vector<long>& map) const {
    int score = 0;
    for (std::size_t i = 0; i < n_; ++i) score += node_weight(i, map[i]);
    for (std::size_t ri = 0; ri < gold_.relations.size(); ++ri) score += relation_hit(ri, map);
    return score;
  }

  // Score change when the listed gold nodes take the listed pred nodes.
  int gain(std::vector<long>& map, std::initializer_list<std::pair<std::size_t, long>> moves) const {
    std::vector<std::size_t> touched;
    for (const auto& [i, _] : moves) {
      touched.insert(touched.end(), relations_of_[i].begin(), relations_of_[i].end());
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    int before = 0;
    for (const auto& [i, _] : moves) before += node_weight(i, map[i]);
    for (std::size_t ri : touched) before += relation_hit(ri, map);
    std::vector<long> saved;
    for (const auto& [i, j] : moves) {
      saved.push_back(map[i]);
      map[i] = j;
    }
    int after = 0;
    for (const auto& [i, _] : moves) after += node_weight(i, map[i]);
    for (std::size_t ri : touched) after += relation_hit(ri, map);
    std::size_t k = 0;
    for (const auto& [i, _] : moves) map[i] = saved[k++];
    return after - before;
  }

 private:
  std::uint64_t key(std::size_t s, Role r, std::size_t t) const {
    return (static_cast<std::uint64_t>(s) * m_ + t) * kAllRoles.size() + static_cast<std::uint64_t>(r);
  }

  const TripleSet& gold_;
  const TripleSet& pred_;
  std::size_t n_;
  std::size_t m_;
  std::vector<int> node_weight_;
  std::unordered_set<std::uint64_t> pred_relations_;
  std::vector<std::vector<std::size_t>> relations_of_;
};

// Steepest ascent: reassignments (to a free pred node or to nothing) and
// swaps, until no move improves the score.
void hill_climb(const AlignmentScorer& scorer, std::vector<long>& map) {
  const std::size_t n = scorer.gold_size();
  const std::size_t m = scorer.pred_size();
  std::vector<long> owner(m, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (map[i] >= 0) owner[static_cast<std::size_t>(map[i])] = static_cast<long>(i);
  }
  while (true) {
    int best = 0;
    enum { kNone, kMove, kSwap } kind = kNone;
    std::size_t bi = 0;
    std::size_t bk = 0;
    long bj = -1;
    for (std::size_t i = 0; i < n; ++i) {
      for (long j = -1; j < static_cast<long>(m); ++j) {
        if (j == map[i] || (j >= 0 && owner[static_cast<std::size_t>(j)] >= 0)) continue;
        const int g = scorer.gain(map, {{i, j}});
        if (g > best) {
          best = g;
          kind = kMove;
          bi = i;
          bj = j;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (map[i] < 0) continue;
      for (std::size_t k = i + 1; k < n; ++k) {
        if (map[k] < 0) continue;
        const int g = scorer.gain(map, {{i, map[k]}, {k, map[i]}});
        if (g > best) {
          best = g;
          kind = kSwap;
          bi = i;
          bk = k;
        }
      }
    }
    if (kind == kNone) return;
    if (kind == kMove) {
      if (map[bi] >= 0) owner[static_cast<std::size_t>(map[bi])] = -1;
      map[bi] = bj;
      if (bj >= 0) owner[static_cast<std::size_t>(bj)] = static_cast<long>(bi);
    } else {
      std::swap(map[bi], map[bk]);
      owner[static_cast<std::size_t>(map[bi])] = static_cast<long>(bi);
      owner[static_cast<std::size_t>(map[bk])] = static_cast<long>(bk);
    }
  }
}

std::size_t pick(std::mt19937& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Fills unmapped gold nodes with random free pred nodes, preferring those
// that share at least one node-local triple. Nodes without local triples
// still get a partner so that relation triples can be matched.
void random_fill(const AlignmentScorer& scorer, std::vector<long>& map, std::vector<bool>& used,
                 std::mt19937& rng) {
  for (std::size_t i = 0; i < scorer.gold_size(); ++i) {
    if (map[i] >= 0) continue;
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < scorer.pred_size(); ++j) {
      if (!used[j] && scorer.node_weight(i, static_cast<long>(j)) > 0) candidates.push_back(j);
    }
    if (candidates.empty()) {
      for (std::size_t j = 0; j < scorer.pred_size(); ++j) {
        if (!used[j]) candidates.push_back(j);
      }
    }
    if (candidates.empty()) continue;
    const std::size_t j = candidates[pick(rng, candidates.size())];
    map[i] = static_cast<long>(j);
    used[j] = true;
  }
}

std::vector<long> seeded_start(const TripleSet& gold, const TripleSet& pred,
                               const AlignmentScorer& scorer, bool span_seeding,
                               std::mt19937& rng) {
  std::vector<long> map(gold.nodes.size(), -1);
  std::vector<bool> used(pred.nodes.size(), false);
  auto seed_by = [&](auto same) {
    for (std::size_t i = 0; i < gold.nodes.size(); ++i) {
      if (map[i] >= 0) continue;
      for (std::size_t j = 0; j < pred.nodes.size(); ++j) {
        if (!used[j] && same(gold.nodes[i], pred.nodes[j])) {
          map[i] = static_cast<long>(j);
          used[j] = true;
          break;
        }
      }
    }
  };
  if (span_seeding) {
    seed_by([](const TripleSet::NodeInfo& a, const TripleSet::NodeInfo& b) {
      return a.span == b.span && a.type == b.type && a.operation == b.operation;
    });
    // Same trigger, different type: still the best starting guess.
    seed_by([](const TripleSet::NodeInfo& a, const TripleSet::NodeInfo& b) {
      return a.span == b.span && a.operation == b.operation;
    });
  }
  seed_by([](const TripleSet::NodeInfo& a, const TripleSet::NodeInfo& b) {
    return a.surface == b.surface && a.type == b.type && a.operation == b.operation;
  });
  random_fill(scorer, map, used, rng);
  return map;
}

}  // namespace

std::size_t matched_triples(const TripleSet& gold, const TripleSet& pred, const Alignment& alignment) {
  AlignmentScorer scorer(gold, pred);
  std::vector<long> map;
  for (const auto& j : alignment.gold_to_pred) map.push_back(j ? static_cast<long>(*j) : -1);
  return static_cast<std::size_t>(scorer.total(map));
}

SmatchResult smatch(const TripleSet& gold, const TripleSet& pred, const SmatchOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("smatch: restarts must be >= 1");
  const AlignmentScorer scorer(gold, pred);
  std::mt19937 rng(options.seed);
  std::vector<long> best_map(gold.nodes.size(), -1);
  int best = -1;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<long> map;
    if (r == 0) {
      map = seeded_start(gold, pred, scorer, options.span_seeding, rng);
    } else {
      map.assign(gold.nodes.size(), -1);
      std::vector<bool> used(pred.nodes.size(), false);
      random_fill(scorer, map, used, rng);
    }
    hill_climb(scorer, map);
    const int score = scorer.total(map);
    if (score > best) {
      best = score;
      best_map = map;
    }
  }
  SmatchResult out;
  for (long j : best_map) {
    out.alignment.gold_to_pred.push_back(j < 0 ? std::nullopt
                                               : std::optional<std::size_t>(static_cast<std::size_t>(j)));
  }
  out.alignment.matched_triples = static_cast<std::size_t>(best);
  out.score = Prf::from_counts(out.alignment.matched_triples, gold.size(), pred.size());
  return out;
}

SmatchResult smatch(const PegGraph& gold, const PegGraph& pred, const SmatchOptions& options) {
  return smatch(triples_of(gold), triples_of(pred), options);
}

DecompositionReport decompose(const PegGraph& gold, const PegGraph& pred,
                              const SmatchOptions& options) {
  DecompositionReport r;
  r.smatch = smatch(gold, pred, options).score;
  r.argument_identification = smatch(argument_identification_triples(gold),
                                     argument_identification_triples(pred), options)
                                  .score;
  r.predicate_identification = smatch(predicate_identification_triples(gold),
                                      predicate_identification_triples(pred), options)
                                   .score;
  r.core_roles = smatch(core_role_triples(gold), core_role_triples(pred), options).score;
  r.reentrancies = smatch(reentrancy_triples(gold), reentrancy_triples(pred), options).score;
  return r;
}

// ---------------------------------------------------------------------------
// Span-exact relation scoring

namespace {

using SpanKey = std::tuple<Span, Role, Span>;

struct RelationTally {
  std::size_t tp_gold = 0;  // gold edges found in pred
  std::size_t tp_pred = 0;  // pred edges found in gold
  std::size_t gold = 0;
  std::size_t pred = 0;

  Prf prf() const {
    Prf p = Prf::from_counts(tp_gold, gold, pred);
    // Precision counts matched predictions on the prediction side.
    if (pred > 0) {
      p.precision = static_cast<double>(tp_pred) / static_cast<double>(pred);
      p.f1 = p.precision + p.recall == 0.0
                 ? 0.0
                 : 2.0 * p.precision * p.recall / (p.precision + p.recall);
    }
    return p;
  }
};

std::set<SpanKey> span_keys(const PegGraph& g) {
  std::set<SpanKey> out;
  for (const Edge& e : g.edges()) {
    out.emplace(g.mention_of(g.node(e.source)).span, e.role, g.mention_of(g.node(e.target)).span);
  }
  return out;
}

constexpr Role kReportRoles[] = {Role::kArg0,     Role::kArg1,    Role::kArg2,  Role::kSite,
                                 Role::kSetting,  Role::kUsage,   Role::kCoref, Role::kMeasure,
                                 Role::kModifier, Role::kLocatedAt, Role::kPartOf};

}  // namespace

const Prf& RelationReport::role(Role r) const {
  for (const RelationRow& row : per_role) {
    if (row.name == to_string(r)) return row.score;
  }
  if (r == Role::kSucc) return temporal;
  throw std::out_of_range("no row for role");
}

RelationReport relation_prf(const PegGraph& gold, const PegGraph& pred) {
  if (gold.document().id() != pred.document().id() ||
      gold.document().text() != pred.document().text()) {
    throw std::invalid_argument("relation_prf: gold annotates document '" + gold.document().id() +
                                "' but prediction annotates '" + pred.document().id() + "'");
  }
  const auto gold_keys = span_keys(gold);
  const auto pred_keys = span_keys(pred);
  std::map<Role, RelationTally> by_role;
  RelationTally core, non_core, intra, inter;
  const Partition gold_closure = coref_closure(gold);
  const Partition pred_closure = coref_closure(pred);

  auto account = [&](const PegGraph& g, const Partition& closure, const std::set<SpanKey>& other,
                     bool gold_side) {
    for (const Edge& e : g.edges()) {
      const SpanKey k{g.mention_of(g.node(e.source)).span, e.role,
                      g.mention_of(g.node(e.target)).span};
      const bool hit = other.count(k) > 0;
      std::vector<RelationTally*> buckets = {&by_role[e.role]};
      if (is_core(e.role)) {
        buckets.push_back(&core);
        buckets.push_back(closed_locality(g, closure, e) == Locality::kIntra ? &intra : &inter);
      } else if (e.role != Role::kSucc) {
        buckets.push_back(&non_core);
      }
      for (RelationTally* t : buckets) {
        if (gold_side) {
          ++t->gold;
          t->tp_gold += hit;
        } else {
          ++t->pred;
          t->tp_pred += hit;
        }
      }
    }
  };
  account(gold, gold_closure, pred_keys, true);
  account(pred, pred_closure, gold_keys, false);

  RelationReport r;
  for (Role role : kReportRoles) r.per_role.push_back({std::string(to_string(role)), by_role[role].prf()});
  r.core = core.prf();
  r.non_core = non_core.prf();
  r.temporal = by_role[Role::kSucc].prf();
  r.intra = intra.prf();
  r.inter = inter.prf();
  return r;
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const DecompositionReport& r) {
  return json::array({
      {{"metric", "Smatch"}, {"score", to_json(r.smatch)}},
      {{"metric", "Argument identification"}, {"score", to_json(r.argument_identification)}},
      {{"metric", "Predicate identification"}, {"score", to_json(r.predicate_identification)}},
      {{"metric", "Core roles"}, {"score", to_json(r.core_roles)}},
      {{"metric", "Re-entrancies"}, {"score", to_json(r.reentrancies)}},
  });
}

json to_json(const RelationReport& r) {
  json roles = json::array();
  for (const RelationRow& row : r.per_role) {
    roles.push_back({{"role", row.name}, {"score", to_json(row.score)}});
  }
  return {{"per_role", roles},
          {"core", to_json(r.core)},
          {"non_core", to_json(r.non_core)},
          {"temporal_ordering", to_json(r.temporal)},
          {"core_split", {{"intra_sentence", to_json(r.intra)}, {"inter_sentence", to_json(r.inter)}}}};
}

namespace {

std::string row_line(const std::string& name, const Prf& p, bool with_gold) {
  char buf[160];
  if (with_gold) {
    std::snprintf(buf, sizeof(buf), "%-28s %7.2f %7.2f %7.2f %8zu\n", name.c_str(),
                  100.0 * p.precision, 100.0 * p.recall, 100.0 * p.f1, p.gold);
  } else {
    std::snprintf(buf, sizeof(buf), "%-28s %7.2f %7.2f %7.2f\n", name.c_str(), 100.0 * p.precision,
                  100.0 * p.recall, 100.0 * p.f1);
  }
  return buf;
}

}  // namespace

std::string format_table(const DecompositionReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-28s %7s %7s %7s\n", "Metric", "P", "R", "F1");
  out += buf;
  out += row_line("Smatch", r.smatch, false);
  out += row_line("Argument identification", r.argument_identification, false);
  out += row_line("Predicate identification", r.predicate_identification, false);
  out += row_line("Core roles", r.core_roles, false);
  out += row_line("Re-entrancies", r.reentrancies, false);
  return out;
}

std::string format_table(const RelationReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-28s %7s %7s %7s %8s\n", "Relation", "P", "R", "F1", "# gold");
  out += buf;
  out += "Core\n";
  out += row_line("  All roles", r.core, true);
  for (std::size_t i = 0; i < 3; ++i) out += row_line("  " + r.per_role[i].name, r.per_role[i].score, true);
  out += "Non-Core\n";
  out += row_line("  All roles", r.non_core, true);
  for (std::size_t i = 3; i < r.per_role.size(); ++i) {
    out += row_line("  " + r.per_role[i].name, r.per_role[i].score, true);
  }
  out += row_line("Temporal Ordering", r.temporal, true);
  out += "Core roles by locality\n";
  out += row_line("  Intra-sentence", r.intra, true);
  out += row_line("  Inter-sentence", r.inter, true);
  return out;
}

}  // namespace peg

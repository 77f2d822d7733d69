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

#include "peg/simulator.hpp"

#include <algorithm>
#include <sstream>

#include "peg/corpus_io.hpp"
#include "peg/ontology.hpp"
#include "peg/text.hpp"

namespace peg {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Command syntax

namespace {

struct Verb {
  const char* name;
  Command::Kind kind;
  std::size_t arity;
};

constexpr Verb kVerbs[] = {
    {"ground", Command::Kind::kGround, 2}, {"link", Command::Kind::kLink, 3},
    {"exec", Command::Kind::kExec, 1},     {"coref", Command::Kind::kCoref, 2},
    {"undo", Command::Kind::kUndo, 0},     {"lint", Command::Kind::kLint, 0},
    {"show", Command::Kind::kShow, 0},
};

const Verb& verb_of(Command::Kind k) {
  for (const Verb& v : kVerbs) {
    if (v.kind == k) return v;
  }
  return kVerbs[0];
}

}  // namespace

std::string Command::text() const {
  std::string out = verb_of(kind).name;
  for (const std::string& a : args) out += " " + a;
  return out;
}

std::optional<Command> parse_command(std::string_view line) {
  const std::string body = trim(line);
  if (body.empty() || body[0] == '#') return std::nullopt;
  auto tokens = split_whitespace(body);
  for (const Verb& v : kVerbs) {
    if (tokens[0] != v.name) continue;
    if (tokens.size() - 1 != v.arity) {
      throw CommandSyntaxError("'" + tokens[0] + "' takes " + std::to_string(v.arity) +
                               " argument(s), got " + std::to_string(tokens.size() - 1));
    }
    Command c{v.kind, {tokens.begin() + 1, tokens.end()}};
    if (c.kind == Command::Kind::kLink && !parse_role(c.args[1])) {
      throw CommandSyntaxError("unknown role '" + c.args[1] + "'");
    }
    if (c.kind == Command::Kind::kGround && !parse_operation_type(c.args[1]) &&
        !parse_argument_type(c.args[1])) {
      throw CommandSyntaxError("unknown type '" + c.args[1] + "'");
    }
    return c;
  }
  throw CommandSyntaxError("unknown command '" + tokens[0] + "'");
}

std::vector<std::string> LabState::location_chain(const std::string& id) const {
  std::vector<std::string> chain;
  std::set<std::string> seen = {id};
  auto it = entities.find(id);
  while (it != entities.end() && it->second.location) {
    const std::string& next = *it->second.location;
    if (!seen.insert(next).second) break;
    chain.push_back(next);
    it = entities.find(next);
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Session

namespace {

Diagnostic error(std::string code, std::string message, Locus locus = {}) {
  return {Severity::kError, std::move(code), std::move(locus), std::move(message)};
}

Diagnostic warning(std::string code, std::string message, Locus locus = {}) {
  return {Severity::kWarning, std::move(code), std::move(locus), std::move(message)};
}

IssueResult rejected(Diagnostic d) { return {false, {std::move(d)}, ""}; }

}  // namespace

Session::Session(Document document) : document_(std::move(document)) {
  std::vector<const Mention*> ordered;
  for (const Mention& m : document_.mentions()) ordered.push_back(&m);
  std::sort(ordered.begin(), ordered.end(), [](const Mention* a, const Mention* b) {
    return std::tie(a->span, a->id) < std::tie(b->span, b->id);
  });
  for (std::size_t i = 0; i < ordered.size(); ++i) mention_rank_[ordered[i]->id] = i;
}

bool Session::operator==(const Session& o) const {
  return document_ == o.document_ && core_ == o.core_ && history_ == o.history_;
}

const Node* Session::resolve(const std::string& ref) const {
  for (const Node& n : core_.nodes) {
    if (n.id == ref) return &n;
  }
  for (const Node& n : core_.nodes) {
    if (n.mention == ref) return &n;
  }
  return nullptr;
}

std::string Session::ref_of(const Node& n) const { return n.mention; }

std::size_t Session::mention_rank(const std::string& mention_id) const {
  auto it = mention_rank_.find(mention_id);
  return it == mention_rank_.end() ? mention_rank_.size() : it->second;
}

bool Session::executed(const std::string& node_id) const {
  return std::find(core_.exec_order.begin(), core_.exec_order.end(), node_id) !=
         core_.exec_order.end();
}

std::vector<std::string> Session::dependents(const std::string& head,
                                             std::initializer_list<Role> roles) const {
  std::vector<std::string> out;
  for (const Edge& e : core_.edges) {
    if (e.source == head && std::find(roles.begin(), roles.end(), e.role) != roles.end())
      out.push_back(e.target);
  }
  return out;
}

bool Session::has_edge(const std::string& s, Role r, const std::string& t) const {
  return std::any_of(core_.edges.begin(), core_.edges.end(), [&](const Edge& e) {
    return e.source == s && e.role == r && e.target == t;
  });
}

bool Session::destroyed(const std::string& node_id) const {
  auto it = core_.state.entities.find(node_id);
  return it != core_.state.entities.end() && it->second.destroyed;
}

std::set<Role> Session::filled_roles(const std::string& op) const {
  std::set<Role> out;
  for (const Edge& e : core_.edges) {
    if (e.source == op) out.insert(e.role);
  }
  return out;
}

IssueResult Session::issue_line(std::string_view line) {
  auto cmd = parse_command(line);
  if (!cmd) return {true, {}, ""};
  return issue(*cmd);
}

IssueResult Session::issue(const Command& command) {
  IssueResult result;
  Core before = core_;
  switch (command.kind) {
    case Command::Kind::kGround: result = ground(command); break;
    case Command::Kind::kLink: result = link(command); break;
    case Command::Kind::kExec: result = exec(command); break;
    case Command::Kind::kCoref: result = coref(command); break;
    case Command::Kind::kUndo: return undo();
    case Command::Kind::kLint: {
      const LintReport r = lint(draft());
      std::ostringstream os;
      os << "components: " << r.component_count << ", isolated mentions:";
      for (const std::string& m : r.isolated_mentions) os << " " << m;
      if (r.isolated_mentions.empty()) os << " none";
      os << ", score: " << r.score;
      return {true, {}, os.str()};
    }
    case Command::Kind::kShow: return {true, {}, show()};
  }
  if (result.accepted) {
    history_.push_back(std::move(before));
    core_.log.push_back(command.text());
  }
  return result;
}

IssueResult Session::ground(const Command& c) {
  const std::string& mid = c.args[0];
  const Mention* m = document_.find_mention(mid);
  if (m == nullptr) return rejected(error("unknown-mention", "unknown mention " + mid));
  if (resolve(node_id_for(mid)) != nullptr) {
    return rejected(error("already-grounded", "mention " + mid + " is already grounded",
                          {.node = node_id_for(mid)}));
  }
  std::optional<Grounding> g;
  if (m->kind == MentionKind::kOperation) {
    if (auto t = parse_operation_type(c.args[1])) g = *t;
  } else if (auto t = parse_argument_type(c.args[1])) {
    g = *t;
  }
  if (!g) {
    return rejected(error("kind-mismatch", "mention " + mid + " (\"" + m->surface + "\") is an " +
                                               std::string(to_string(m->kind)) +
                                               " mention; " + c.args[1] + " is not an " +
                                               std::string(to_string(m->kind)) + " type"));
  }
  const std::string id = node_id_for(mid);
  core_.nodes.push_back({id, mid, *g});
  if (!is_operation(*g)) core_.state.entities[id];
  return {true, {}, ""};
}

IssueResult Session::link(const Command& c) {
  const Node* head = resolve(c.args[0]);
  const Node* dep = resolve(c.args[2]);
  const Role role = *parse_role(c.args[1]);
  for (const auto& [ref, node] : {std::pair{c.args[0], head}, std::pair{c.args[2], dep}}) {
    if (node == nullptr) return rejected(error("unknown-node", "no grounded node for " + ref));
    if (destroyed(node->id)) {
      return rejected(error("destroyed-entity", ref + " has been destroyed", {.node = node->id}));
    }
  }
  if (role == Role::kSucc) {
    return rejected(error("succ-managed", "succ edges follow execution order; use exec"));
  }
  if (head->id == dep->id) return rejected(error("self-loop", "cannot link a node to itself"));
  if (is_operation(head->grounding) && executed(head->id)) {
    return rejected(error("already-executed",
                          "operation " + c.args[0] + " has already been executed",
                          {.node = head->id}));
  }
  const Edge e{head->id, role, dep->id};
  if (has_edge(e.source, e.role, e.target)) {
    return rejected(error("duplicate-edge", "edge already present", {.edge = e}));
  }
  const Legality leg = edge_legal_stored(head->grounding, role, dep->grounding);
  if (!leg.legal) return rejected(error("illegal-edge", leg.message, {.edge = e}));
  core_.edges.push_back(e);
  IssueResult r{true, {}, ""};
  if (leg.relaxed) r.diagnostics.push_back(warning("relaxed-target", leg.message, {.edge = e}));
  return r;
}

IssueResult Session::coref(const Command& c) {
  const Node* a = resolve(c.args[0]);
  const Node* b = resolve(c.args[1]);
  for (const auto& [ref, node] : {std::pair{c.args[0], a}, std::pair{c.args[1], b}}) {
    if (node == nullptr) return rejected(error("unknown-node", "no grounded node for " + ref));
    if (destroyed(node->id)) {
      return rejected(error("destroyed-entity", ref + " has been destroyed", {.node = node->id}));
    }
  }
  if (a->id == b->id) return rejected(error("self-loop", "cannot co-refer a node to itself"));
  const Edge e{a->id, Role::kCoref, b->id};
  if (has_edge(a->id, Role::kCoref, b->id) || has_edge(b->id, Role::kCoref, a->id)) {
    return rejected(error("duplicate-edge", "co-reference already present", {.edge = e}));
  }
  const Legality leg = edge_legal(a->grounding, Role::kCoref, b->grounding);
  if (!leg.legal) return rejected(error("illegal-edge", leg.message, {.edge = e}));
  core_.edges.push_back(e);
  return {true, {}, ""};
}

IssueResult Session::exec(const Command& c) {
  const Node* op = resolve(c.args[0]);
  if (op == nullptr) return rejected(error("unknown-node", "no grounded node for " + c.args[0]));
  const auto* type = std::get_if<OperationType>(&op->grounding);
  if (type == nullptr) {
    return rejected(error("not-an-operation", c.args[0] + " is not an operation", {.node = op->id}));
  }
  if (executed(op->id)) {
    return rejected(error("already-executed", "operation " + c.args[0] + " was already executed",
                          {.node = op->id}));
  }
  const std::set<Role> filled = filled_roles(op->id);
  std::vector<std::string> missing;
  for (Role r : required_roles(*type)) {
    if (!filled.count(r)) missing.emplace_back(to_string(r));
  }
  if (!missing.empty()) {
    std::string list;
    for (const std::string& m : missing) list += (list.empty() ? "" : ", ") + m;
    return rejected(warning("missing-argument",
                            "missing argument: " + std::string(to_string(*type)) + " '" +
                                c.args[0] + "' requires " + list,
                            {.node = op->id}));
  }
  for (const Edge& e : core_.edges) {
    if (e.source == op->id && destroyed(e.target)) {
      return rejected(error("destroyed-entity",
                            "argument " + ref_of(*resolve(e.target)) + " has been destroyed",
                            {.edge = e}));
    }
  }
  LabState next = core_.state;
  IssueResult r{true, {}, ""};
  if (!apply_effects(*op, next, r.diagnostics)) {
    r.accepted = false;
    return r;
  }
  core_.state = std::move(next);
  if (!core_.exec_order.empty()) core_.edges.push_back({core_.exec_order.back(), Role::kSucc, op->id});
  core_.exec_order.push_back(op->id);
  return r;
}

bool Session::apply_effects(const Node& op, LabState& state, std::vector<Diagnostic>& diags) const {
  const auto type = std::get<OperationType>(op.grounding);
  const std::vector<std::string> args = dependents(op.id, {Role::kArg0, Role::kArg1, Role::kArg2});
  auto object = [&](const std::string& id) { return is_object(resolve(id)->grounding); };
  auto detach = [&](const std::string& id) {
    EntityState& e = state.entities[id];
    if (e.location) state.entities[*e.location].contents.erase(id);
    e.location.reset();
  };

  switch (type) {
    case OperationType::kTransfer: {
      const std::string site = dependents(op.id, {Role::kSite}).front();
      if (state.entities.at(site).sealed) {
        diags.push_back(warning("sealed-site", "transferring into sealed " + ref_of(*resolve(site)),
                                {.node = site}));
      }
      const auto site_chain = state.location_chain(site);
      for (const std::string& id : args) {
        if (!object(id)) continue;
        if (id == site || std::find(site_chain.begin(), site_chain.end(), id) != site_chain.end()) {
          diags.push_back(error("containment-cycle", "cannot move " + ref_of(*resolve(id)) +
                                                         " into " + ref_of(*resolve(site)) +
                                                         ", which it contains",
                                {.node = id}));
          return false;
        }
        // Contents travel with their container: only the moved entity's own
        // location changes.
        detach(id);
        state.entities[id].location = site;
        state.entities[site].contents.insert(id);
      }
      break;
    }
    case OperationType::kDestroy:
      for (const std::string& id : args) {
        EntityState& e = state.entities[id];
        detach(id);
        for (const std::string& inner : e.contents) state.entities[inner].location.reset();
        e.contents.clear();
        e.destroyed = true;
      }
      break;
    case OperationType::kCreate:
      for (const std::string& id : args) state.entities[id].exists = true;
      break;
    case OperationType::kSeal:
      for (const std::string& id : dependents(op.id, {Role::kArg0})) state.entities[id].sealed = true;
      break;
    case OperationType::kRemove: {
      const auto from = dependents(op.id, {Role::kArg1});
      for (const std::string& id : dependents(op.id, {Role::kArg0})) {
        const bool id_is_seal = resolve(id)->grounding == Grounding{ArgumentType::kSeal};
        if (from.empty()) {
          detach(id);
          continue;
        }
        for (const std::string& f : from) {
          if (state.entities[id].location == f) detach(id);
          const bool f_is_seal = resolve(f)->grounding == Grounding{ArgumentType::kSeal};
          // Taking a lid off a tube, or a tube out of its cover.
          if (id_is_seal) state.entities[f].sealed = false;
          if (f_is_seal) state.entities[id].sealed = false;
        }
      }
      break;
    }
    case OperationType::kMix: {
      // Mixed material: contents of mixed containers, or the entity itself.
      std::set<std::string> members;
      for (const std::string& id : args) {
        const EntityState& e = state.entities[id];
        if (e.contents.empty()) {
          members.insert(id);
        } else {
          members.insert(e.contents.begin(), e.contents.end());
        }
      }
      if (members.size() < 2) break;
      std::set<std::string> reps;
      for (const std::string& m : members) {
        if (const auto& mix = state.entities[m].mixture) reps.insert(*mix);
      }
      std::set<std::string> merged = members;
      for (const auto& [id, e] : state.entities) {
        if (e.mixture && reps.count(*e.mixture)) merged.insert(id);
      }
      const std::string rep = *merged.begin();
      for (const std::string& id : merged) state.entities[id].mixture = rep;
      break;
    }
    case OperationType::kConvert: {
      const auto from = dependents(op.id, {Role::kArg0});
      for (const std::string& id : dependents(op.id, {Role::kArg1})) {
        state.entities[id].derived_from = from.front();
      }
      break;
    }
    default:
      break;
  }
  return true;
}

IssueResult Session::undo() {
  if (history_.empty()) return rejected(error("nothing-to-undo", "nothing to undo"));
  core_ = std::move(history_.back());
  history_.pop_back();
  return {true, {}, ""};
}

PegGraph Session::draft() const { return build_graph(document_, core_.nodes, core_.edges); }

FinalizedGraph Session::finalize() const {
  std::vector<Diagnostic> pending;
  for (const Node& n : core_.nodes) {
    if (is_operation(n.grounding) && !executed(n.id)) {
      pending.push_back(error("unexecuted-operation", "operation " + n.mention +
                                                          " has not been executed",
                              {.node = n.id}));
    }
  }
  if (!pending.empty()) {
    std::string list;
    for (const Diagnostic& d : pending) list += " " + *d.locus.node;
    throw FinalizeError("unexecuted operations remain:" + list, std::move(pending));
  }
  PegGraph g = draft();
  std::vector<Diagnostic> diags = validate(g);
  if (has_errors(diags)) {
    throw FinalizeError("validation errors block finalization", errors_only(diags));
  }
  LintReport report = lint(g);
  return {std::move(g), std::move(report), std::move(diags)};
}

// ---------------------------------------------------------------------------
// Autocomplete

std::vector<std::string> Session::autocomplete(std::string_view partial) const {
  const std::vector<std::string> tokens = split_whitespace(partial);
  const bool trailing = !partial.empty() && std::isspace(static_cast<unsigned char>(partial.back()));
  std::vector<std::string> done = tokens;
  std::string prefix;
  if (!trailing && !done.empty()) {
    prefix = done.back();
    done.pop_back();
  }
  auto join = [&](const std::string& next) {
    std::string out;
    for (const std::string& t : done) out += t + " ";
    return out + next;
  };
  auto by_rank = [&](std::vector<const Node*> nodes) {
    std::sort(nodes.begin(), nodes.end(), [&](const Node* a, const Node* b) {
      return mention_rank(a->mention) < mention_rank(b->mention);
    });
    return nodes;
  };
  std::vector<std::string> candidates;
  auto offer = [&](const std::string& token) {
    if (token.compare(0, prefix.size(), prefix) == 0) candidates.push_back(join(token));
  };

  if (done.empty()) {
    for (const Verb& v : kVerbs) offer(v.name);
    return candidates;
  }
  const std::string& verb = done[0];
  const std::size_t pos = done.size();  // index of the token being completed

  auto live = [&](const Node& n) { return !destroyed(n.id); };
  std::vector<const Node*> nodes;
  for (const Node& n : core_.nodes) nodes.push_back(&n);
  nodes = by_rank(nodes);

  auto exec_ready = [&](const Node& n) {
    const auto* t = std::get_if<OperationType>(&n.grounding);
    if (t == nullptr || executed(n.id)) return false;
    const auto filled = filled_roles(n.id);
    for (Role r : required_roles(*t)) {
      if (!filled.count(r)) return false;
    }
    for (const Edge& e : core_.edges) {
      if (e.source == n.id && destroyed(e.target)) return false;
    }
    return true;
  };
  auto link_targets = [&](const Node& head, Role role) {
    std::vector<const Node*> out;
    for (const Node* d : nodes) {
      if (d->id == head.id || !live(*d) || has_edge(head.id, role, d->id)) continue;
      if (edge_legal_stored(head.grounding, role, d->grounding).legal) out.push_back(d);
    }
    return out;
  };
  auto link_head_ok = [&](const Node& n) {
    return live(n) && !(is_operation(n.grounding) && executed(n.id));
  };

  if (verb == "ground") {
    if (pos == 1) {
      std::vector<const Mention*> ms;
      for (const Mention& m : document_.mentions()) {
        if (resolve(node_id_for(m.id)) == nullptr) ms.push_back(&m);
      }
      std::sort(ms.begin(), ms.end(), [&](const Mention* a, const Mention* b) {
        return mention_rank(a->id) < mention_rank(b->id);
      });
      for (const Mention* m : ms) offer(m->id);
    } else if (pos == 2) {
      const Mention* m = document_.find_mention(done[1]);
      if (m == nullptr || resolve(node_id_for(m->id)) != nullptr) return {};
      if (m->kind == MentionKind::kOperation) {
        for (OperationType t : kAllOperationTypes) offer(std::string(to_string(t)));
      } else {
        for (ArgumentType t : kAllArgumentTypes) offer(std::string(to_string(t)));
      }
    }
  } else if (verb == "link") {
    if (pos == 1) {
      for (const Node* n : nodes) {
        if (!link_head_ok(*n)) continue;
        bool any = false;
        for (Role r : kAllRoles) {
          if (r != Role::kSucc && !link_targets(*n, r).empty()) any = true;
        }
        if (any) offer(ref_of(*n));
      }
    } else if (pos == 2) {
      const Node* head = resolve(done[1]);
      if (head == nullptr || !link_head_ok(*head)) return {};
      for (Role r : kAllRoles) {
        if (r != Role::kSucc && !link_targets(*head, r).empty()) offer(std::string(to_string(r)));
      }
    } else if (pos == 3) {
      const Node* head = resolve(done[1]);
      const auto role = parse_role(done[2]);
      if (head == nullptr || !role || *role == Role::kSucc || !link_head_ok(*head)) return {};
      for (const Node* d : link_targets(*head, *role)) offer(ref_of(*d));
    }
  } else if (verb == "exec") {
    if (pos == 1) {
      for (const Node* n : nodes) {
        if (exec_ready(*n)) offer(ref_of(*n));
      }
    }
  } else if (verb == "coref") {
    auto coref_ok = [&](const Node& n) { return live(n) && is_object(n.grounding); };
    if (pos == 1) {
      for (const Node* n : nodes) {
        if (coref_ok(*n)) offer(ref_of(*n));
      }
    } else if (pos == 2) {
      const Node* a = resolve(done[1]);
      if (a == nullptr || !coref_ok(*a)) return {};
      for (const Node* n : nodes) {
        if (n->id != a->id && coref_ok(*n) && !has_edge(a->id, Role::kCoref, n->id) &&
            !has_edge(n->id, Role::kCoref, a->id))
          offer(ref_of(*n));
      }
    }
  }
  return candidates;
}

// ---------------------------------------------------------------------------
// Views

json Session::state_json() const {
  json entities = json::array();
  std::vector<const Node*> args;
  for (const Node& n : core_.nodes) {
    if (!is_operation(n.grounding)) args.push_back(&n);
  }
  std::sort(args.begin(), args.end(), [&](const Node* a, const Node* b) {
    return mention_rank(a->mention) < mention_rank(b->mention);
  });
  for (const Node* n : args) {
    const EntityState& e = core_.state.entities.at(n->id);
    json j = {{"node", n->id},
              {"mention", n->mention},
              {"surface", document_.find_mention(n->mention)->surface},
              {"type", to_string(n->grounding)},
              {"exists", e.exists},
              {"destroyed", e.destroyed},
              {"sealed", e.sealed},
              {"location", e.location ? json(*e.location) : json(nullptr)},
              {"contents", e.contents},
              {"mixture", e.mixture ? json(*e.mixture) : json(nullptr)},
              {"derived_from", e.derived_from ? json(*e.derived_from) : json(nullptr)}};
    entities.push_back(std::move(j));
  }
  json ops = json::array();
  for (const Node& n : core_.nodes) {
    if (is_operation(n.grounding)) {
      ops.push_back({{"node", n.id},
                     {"mention", n.mention},
                     {"type", to_string(n.grounding)},
                     {"executed", executed(n.id)}});
    }
  }
  return {{"entities", entities}, {"operations", ops}, {"exec_order", core_.exec_order}};
}

json Session::to_json() const {
  return {{"document", document_.id()},
          {"log", core_.log},
          {"draft", peg::to_json(draft())},
          {"state", state_json()},
          {"history_depth", history_.size()}};
}

std::string Session::show() const {
  std::ostringstream os;
  os << "operations:\n";
  for (const Node& n : core_.nodes) {
    if (!is_operation(n.grounding)) continue;
    os << "  " << n.mention << " \"" << document_.find_mention(n.mention)->surface << "\" ("
       << to_string(n.grounding) << ")" << (executed(n.id) ? " executed" : " pending");
    for (const Edge& e : core_.edges) {
      if (e.source == n.id && e.role != Role::kSucc) {
        os << " " << to_string(e.role) << "=" << resolve(e.target)->mention;
      }
    }
    os << "\n";
  }
  os << "entities:\n";
  for (const auto& [id, e] : core_.state.entities) {
    const Node* n = resolve(id);
    os << "  " << n->mention << " \"" << document_.find_mention(n->mention)->surface << "\" ("
       << to_string(n->grounding) << ")";
    if (e.destroyed) os << " destroyed";
    if (e.sealed) os << " sealed";
    if (e.location) os << " in " << resolve(*e.location)->mention;
    if (!e.contents.empty()) {
      os << " contains";
      for (const std::string& c : e.contents) os << " " << resolve(c)->mention;
    }
    if (e.mixture) os << " mixture:" << resolve(*e.mixture)->mention;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Replay

Session replay(const Document& document, const std::vector<std::string>& lines) {
  Session s(document);
  std::size_t index = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::optional<Command> cmd;
    try {
      cmd = parse_command(lines[i]);
    } catch (const CommandSyntaxError& e) {
      throw ReplayError(index, i + 1,
                        "line " + std::to_string(i + 1) + ": " + e.what(),
                        {error("syntax", e.what(), {.command = index})});
    }
    if (!cmd) continue;
    IssueResult r = s.issue(*cmd);
    if (!r.accepted) {
      for (Diagnostic& d : r.diagnostics) d.locus.command = index;
      const std::string msg = r.diagnostics.empty() ? "rejected" : r.diagnostics.front().message;
      throw ReplayError(index, i + 1,
                        "command " + std::to_string(index) + " (line " + std::to_string(i + 1) +
                            ") rejected: " + msg,
                        std::move(r.diagnostics));
    }
    ++index;
  }
  return s;
}

Session replay_text(const Document& document, std::string_view log_text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= log_text.size()) {
    const std::size_t nl = log_text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < log_text.size()) lines.emplace_back(log_text.substr(start));
      break;
    }
    lines.emplace_back(log_text.substr(start, nl - start));
    start = nl + 1;
  }
  return replay(document, lines);
}

}  // namespace peg

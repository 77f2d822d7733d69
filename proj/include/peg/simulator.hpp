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

#ifndef PEG_SIMULATOR_HPP_
#define PEG_SIMULATOR_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "peg/core.hpp"
#include "peg/validator.hpp"

namespace peg {

// One line of the annotation language:
//   ground <mention> <type> | link <head> <role> <dependent> | exec <op>
//   coref <a> <b> | undo | lint | show
struct Command {
  enum class Kind { kGround, kLink, kExec, kCoref, kUndo, kLint, kShow };

  Kind kind = Kind::kShow;
  std::vector<std::string> args;

  std::string text() const;
  bool state_changing() const { return kind != Kind::kLint && kind != Kind::kShow; }
  bool operator==(const Command&) const = default;
};

// Unparseable command line (unknown verb, wrong arity, unknown role or type).
class CommandSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returns nullopt for blank lines and `#` comments.
std::optional<Command> parse_command(std::string_view line);

// Physical state of one argument entity.
struct EntityState {
  bool exists = true;
  bool destroyed = false;
  bool sealed = false;
  std::optional<std::string> location;
  std::set<std::string> contents;
  // Representative of the mixture class the entity was mixed into.
  std::optional<std::string> mixture;
  // Entity this one was converted from.
  std::optional<std::string> derived_from;

  bool operator==(const EntityState&) const = default;
};

// Keyed by argument node id.
struct LabState {
  std::map<std::string, EntityState> entities;

  // Follows location links up to the outermost container.
  std::vector<std::string> location_chain(const std::string& id) const;
  bool operator==(const LabState&) const = default;
};

struct IssueResult {
  bool accepted = false;
  std::vector<Diagnostic> diagnostics;
  // Rendered output of lint/show.
  std::string output;
};

struct FinalizedGraph {
  PegGraph graph;
  LintReport lint;
  std::vector<Diagnostic> warnings;
};

// Finalization blocked by unexecuted operations or validation errors.
class FinalizeError : public std::runtime_error {
 public:
  FinalizeError(const std::string& message, std::vector<Diagnostic> diagnostics)
      : std::runtime_error(message), diagnostics_(std::move(diagnostics)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Interactive annotation session over one document. Each accepted
// state-changing command is appended to the log; the session is a pure
// function of (document, log).
class Session {
 public:
  explicit Session(Document document);

  // Node ids are derived from mention ids.
  static std::string node_id_for(const std::string& mention_id) { return "n-" + mention_id; }

  IssueResult issue(const Command& command);
  // Parses and issues one line; blank/comment lines are accepted no-ops.
  // Throws CommandSyntaxError.
  IssueResult issue_line(std::string_view line);

  const Document& document() const { return document_; }
  const std::vector<std::string>& command_log() const { return core_.log; }
  const LabState& state() const { return core_.state; }
  const std::vector<Node>& nodes() const { return core_.nodes; }
  const std::vector<Edge>& edges() const { return core_.edges; }
  const std::vector<std::string>& exec_order() const { return core_.exec_order; }
  bool executed(const std::string& node_id) const;

  // Current draft as a graph (succ edges follow exec order).
  PegGraph draft() const;

  // Legal completions of a partial command line, ranked by document order
  // of the underlying mentions.
  std::vector<std::string> autocomplete(std::string_view partial) const;

  // Requires every operation to be executed and the draft to validate.
  FinalizedGraph finalize() const;

  // Canonical dump of the whole session (log, draft, state, history depth).
  nlohmann::json to_json() const;
  nlohmann::json state_json() const;
  std::string show() const;

  bool operator==(const Session& o) const;

 private:
  struct Core {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    LabState state;
    std::vector<std::string> exec_order;
    std::vector<std::string> log;

    bool operator==(const Core&) const = default;
  };

  const Node* resolve(const std::string& ref) const;
  std::string ref_of(const Node& n) const;
  std::size_t mention_rank(const std::string& mention_id) const;
  std::vector<std::string> dependents(const std::string& head, std::initializer_list<Role> roles) const;
  bool has_edge(const std::string& s, Role r, const std::string& t) const;
  bool destroyed(const std::string& node_id) const;
  std::set<Role> filled_roles(const std::string& op) const;

  IssueResult ground(const Command& c);
  IssueResult link(const Command& c);
  IssueResult exec(const Command& c);
  IssueResult coref(const Command& c);
  IssueResult undo();
  // Applies the state effects of executing `op`; returns false (with
  // diagnostics) when the effect would break a state invariant.
  bool apply_effects(const Node& op, LabState& state, std::vector<Diagnostic>& diags) const;

  Document document_;
  std::map<std::string, std::size_t> mention_rank_;
  Core core_;
  std::vector<Core> history_;
};

// Command log rejected during replay.
class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t index, std::size_t line, const std::string& message,
              std::vector<Diagnostic> diagnostics)
      : std::runtime_error(message),
        index_(index),
        line_(line),
        diagnostics_(std::move(diagnostics)) {}
  // Zero-based index among commands (comments and blank lines skipped).
  std::size_t index() const { return index_; }
  // One-based line number in the log text.
  std::size_t line() const { return line_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::size_t index_;
  std::size_t line_;
  std::vector<Diagnostic> diagnostics_;
};

Session replay(const Document& document, const std::vector<std::string>& lines);
// Splits log text into lines and replays it.
Session replay_text(const Document& document, std::string_view log_text);

}  // namespace peg

#endif  // PEG_SIMULATOR_HPP_

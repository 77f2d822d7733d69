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

#ifndef PEG_VALIDATOR_HPP_
#define PEG_VALIDATOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "peg/core.hpp"

namespace peg {

enum class Severity { kError, kWarning };
std::string_view to_string(Severity s);

// Where a diagnostic applies: a node, an edge, a command index, or nothing
// (document-level).
struct Locus {
  std::optional<std::string> node;
  std::optional<Edge> edge;
  std::optional<std::size_t> command;

  bool operator==(const Locus&) const = default;
};

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  Locus locus;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

nlohmann::json to_json(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diags);
std::vector<Diagnostic> errors_only(const std::vector<Diagnostic>& diags);

// Ontology check of a whole graph: one error per illegal edge, one per
// missing required role, a warning per relaxed-target edge.
std::vector<Diagnostic> validate(const PegGraph& g);

struct LintReport {
  std::size_t component_count = 0;
  std::vector<std::string> isolated_mentions;
  // component_count + |isolated_mentions|; lower is better.
  std::size_t score = 0;
};

nlohmann::json to_json(const LintReport& r);

LintReport lint(const PegGraph& g);

// Operation nodes without any incident ARG0/ARG1/ARG2 edge.
std::vector<std::string> semantic_underspecified_ops(const PegGraph& g);

}  // namespace peg

#endif  // PEG_VALIDATOR_HPP_

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

#ifndef PEG_ONTOLOGY_HPP_
#define PEG_ONTOLOGY_HPP_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "peg/types.hpp"

namespace peg {

// Result of an edge legality query. `rule` is a stable tag naming the rule
// that decided the outcome; `relaxed` marks edges accepted only through the
// relaxed setting/measure/usage target rule.
struct Legality {
  bool legal = false;
  bool relaxed = false;
  std::string rule;
  std::string message;
};

// Legality of (source, role, target) where `source` is the dependent
// argument and `target` the head it attaches to (for succ: the two
// operations, in either order).
Legality edge_legal(const Grounding& source, Role role, const Grounding& target);

// Same query for an edge as stored in a PegGraph (head -> dependent).
inline Legality edge_legal_stored(const Grounding& head, Role role, const Grounding& dependent) {
  return edge_legal(dependent, role, head);
}

std::set<Role> required_roles(OperationType op);
std::string_view core_role_semantics(OperationType op);

// Autoprotocol instruction names for an operation type; empty when the type
// has no counterpart.
const std::vector<std::string>& ap_instructions(OperationType op);

// Fraction of operations that are not `general`. Throws
// std::invalid_argument on an empty list.
double coverage_fraction(std::span<const OperationType> ops);

// Share of protocols whose coverage fraction is strictly above `threshold`.
double share_above(std::span<const double> fractions, double threshold);

// The compiled-in tables as JSON (operation/argument/role inventories,
// required roles, edge restrictions, Autoprotocol mapping).
nlohmann::json ontology_json();

}  // namespace peg

#endif  // PEG_ONTOLOGY_HPP_

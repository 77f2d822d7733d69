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

#ifndef PEG_LOWERING_HPP_
#define PEG_LOWERING_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "peg/core.hpp"
#include "peg/validator.hpp"

namespace peg {

enum class HoleReason { kVagueModifier, kMissingSetting };
std::string_view to_string(HoleReason r);

// A number followed by a unit, e.g. "30 minutes" -> (30, "minutes").
struct Quantity {
  double value = 0.0;
  std::string unit;

  bool operator==(const Quantity&) const = default;
};

std::optional<Quantity> parse_quantity(std::string_view text);

// Parameter kind implied by a measurement string ("duration", "temperature",
// "speed", "volume", "mass", "concentration"), if recognisable.
std::optional<std::string> classify_measurement(std::string_view text);

struct EntityRef {
  std::string node;
  std::string text;

  bool operator==(const EntityRef&) const = default;
};

struct Parameter {
  std::optional<std::string> value;  // verbatim; absent for holes
  std::optional<Quantity> quantity;
  std::optional<std::string> source;  // node the value or hint came from
  std::optional<HoleReason> hole;

  bool operator==(const Parameter&) const = default;
};

struct Hole {
  std::size_t instruction = 0;  // order_index
  std::string node;             // operation node
  std::string parameter;
  HoleReason reason = HoleReason::kMissingSetting;
  std::optional<std::string> source;  // absent when nothing in the text covers it
  std::optional<std::string> hint;    // modifier text, e.g. "gently"

  bool operator==(const Hole&) const = default;
};

struct ApInstruction {
  std::size_t order_index = 0;
  std::string node;
  std::string name;  // "unmapped:<type>" for operations without instructions
  std::vector<std::string> alt;
  std::map<std::string, std::vector<EntityRef>> operands;
  std::map<std::string, Parameter> parameters;

  bool mapped() const { return name.rfind("unmapped:", 0) != 0; }
  bool operator==(const ApInstruction&) const = default;
};

struct Program {
  std::string document;
  std::vector<ApInstruction> instructions;
  std::vector<Hole> holes;

  bool operator==(const Program&) const = default;
};

class LoweringError : public std::runtime_error {
 public:
  explicit LoweringError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Throws LoweringError when the graph has validation errors.
Program lower(const PegGraph& g);

nlohmann::json to_json(const Program& p);
// Canonical bytes: sorted keys, two-space indent, trailing newline.
std::string emit_json(const Program& p);

}  // namespace peg

#endif  // PEG_LOWERING_HPP_

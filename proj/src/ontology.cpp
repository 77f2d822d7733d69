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

#include "peg/ontology.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace peg {

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(OperationType t) {
  switch (t) {
    case OperationType::kTransfer: return "transfer";
    case OperationType::kTemperatureTreatment: return "temperature-treatment";
    case OperationType::kGeneral: return "general";
    case OperationType::kMix: return "mix";
    case OperationType::kSpin: return "spin";
    case OperationType::kCreate: return "create";
    case OperationType::kDestroy: return "destroy";
    case OperationType::kRemove: return "remove";
    case OperationType::kMeasure: return "measure";
    case OperationType::kWash: return "wash";
    case OperationType::kTime: return "time";
    case OperationType::kSeal: return "seal";
    case OperationType::kConvert: return "convert";
  }
  return "?";
}

std::string_view to_string(ArgumentType t) {
  switch (t) {
    case ArgumentType::kReagent: return "reagent";
    case ArgumentType::kMeasurement: return "measurement";
    case ArgumentType::kSetting: return "setting";
    case ArgumentType::kLocation: return "location";
    case ArgumentType::kModifier: return "modifier";
    case ArgumentType::kDevice: return "device";
    case ArgumentType::kMethod: return "method";
    case ArgumentType::kSeal: return "seal";
  }
  return "?";
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kArg0: return "ARG0";
    case Role::kArg1: return "ARG1";
    case Role::kArg2: return "ARG2";
    case Role::kSite: return "site";
    case Role::kSetting: return "setting";
    case Role::kUsage: return "usage";
    case Role::kCoref: return "co-ref";
    case Role::kLocatedAt: return "located-at";
    case Role::kMeasure: return "measure";
    case Role::kModifier: return "modifier";
    case Role::kPartOf: return "part-of";
    case Role::kSucc: return "succ";
  }
  return "?";
}

std::string_view to_string(const Grounding& g) {
  return std::visit([](auto t) { return to_string(t); }, g);
}

std::optional<OperationType> parse_operation_type(std::string_view s) {
  for (OperationType t : kAllOperationTypes) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<ArgumentType> parse_argument_type(std::string_view s) {
  for (ArgumentType t : kAllArgumentTypes) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<Role> parse_role(std::string_view s) {
  for (Role r : kAllRoles) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

RoleCategory category(Role r) {
  switch (r) {
    case Role::kArg0:
    case Role::kArg1:
    case Role::kArg2:
      return RoleCategory::kCore;
    case Role::kSucc:
      return RoleCategory::kTemporal;
    default:
      return RoleCategory::kNonCore;
  }
}

bool is_object(ArgumentType t) {
  return t == ArgumentType::kReagent || t == ArgumentType::kDevice || t == ArgumentType::kSeal ||
         t == ArgumentType::kLocation;
}

bool is_object(const Grounding& g) {
  const auto* a = std::get_if<ArgumentType>(&g);
  return a != nullptr && is_object(*a);
}

// ---------------------------------------------------------------------------
// Edge restrictions

namespace {

bool is_arg(const Grounding& g, ArgumentType t) {
  const auto* a = std::get_if<ArgumentType>(&g);
  return a != nullptr && *a == t;
}

bool is_op(const Grounding& g, OperationType t) {
  const auto* o = std::get_if<OperationType>(&g);
  return o != nullptr && *o == t;
}

Legality ok() { return {true, false, "ok", ""}; }

Legality reject(std::string rule, std::string message) {
  return {false, false, std::move(rule), std::move(message)};
}

std::string describe(Role r, const Grounding& s, const Grounding& t) {
  return std::string(to_string(r)) + " from " + std::string(to_string(s)) + " to " +
         std::string(to_string(t));
}

// Target categories used by the non-core rules.
enum Target : unsigned { kObject = 1, kOperation = 2, kMeasurementTarget = 4 };

unsigned target_class(const Grounding& g) {
  if (is_operation(g)) return kOperation;
  if (is_object(g)) return kObject;
  if (is_arg(g, ArgumentType::kMeasurement)) return kMeasurementTarget;
  return 0;
}

}  // namespace

Legality edge_legal(const Grounding& source, Role role, const Grounding& target) {
  switch (category(role)) {
    case RoleCategory::kTemporal:
      if (!is_operation(source) || !is_operation(target)) {
        return reject("succ-non-operation", "succ must connect two operations, got " +
                                                describe(role, source, target));
      }
      return ok();
    case RoleCategory::kCore:
      if (!is_operation(target)) {
        return reject("core-target-not-operation",
                      std::string(to_string(role)) + " must attach to an operation, got " +
                          describe(role, source, target));
      }
      if (role == Role::kArg1 && is_op(target, OperationType::kSeal)) {
        if (!is_arg(source, ArgumentType::kSeal)) {
          return reject("seal-arg1-not-seal", "ARG1 of seal must be seal entity, got " +
                                                  std::string(to_string(source)));
        }
        return ok();
      }
      if (!is_object(source)) {
        return reject("core-source-not-object",
                      std::string(to_string(role)) +
                          " must be filled by an object (reagent, device, seal, location), got " +
                          std::string(to_string(source)));
      }
      return ok();
    case RoleCategory::kNonCore:
      break;
  }

  // Non-core roles. site mirrors the core restriction (object -> operation).
  unsigned allowed_targets = 0;
  unsigned relaxed_targets = 0;
  bool source_ok = false;
  std::string source_desc;
  switch (role) {
    case Role::kSite:
      source_ok = is_object(source);
      source_desc = "an object";
      allowed_targets = kOperation;
      break;
    case Role::kCoref:
    case Role::kLocatedAt:
    case Role::kPartOf:
      source_ok = is_object(source);
      source_desc = "an object";
      allowed_targets = kObject;
      break;
    case Role::kMeasure:
      source_ok = is_arg(source, ArgumentType::kMeasurement);
      source_desc = "a measurement";
      allowed_targets = kObject;
      relaxed_targets = kOperation;
      break;
    case Role::kSetting:
      source_ok = is_arg(source, ArgumentType::kSetting);
      source_desc = "a setting";
      allowed_targets = kObject;
      relaxed_targets = kOperation;
      break;
    case Role::kModifier:
      source_ok = is_arg(source, ArgumentType::kModifier);
      source_desc = "a modifier";
      allowed_targets = kObject | kOperation | kMeasurementTarget;
      break;
    case Role::kUsage:
      source_ok = is_arg(source, ArgumentType::kMethod) || is_object(source);
      source_desc = "a method or an object";
      allowed_targets = kOperation;
      relaxed_targets = kObject;
      break;
    default:
      return reject("unknown-role", "role " + std::string(to_string(role)) + " is not allowed here");
  }
  if (!source_ok) {
    return reject("source-type", std::string(to_string(role)) + " source must be " + source_desc +
                                     ", got " + std::string(to_string(source)));
  }
  const unsigned tc = target_class(target);
  if (tc & allowed_targets) return ok();
  if (tc & relaxed_targets) {
    return {true, true, "relaxed-target",
            std::string(to_string(role)) + " attached to " + std::string(to_string(target)) +
                " (accepted under the relaxed target rule)"};
  }
  return reject("target-type", std::string(to_string(role)) + " cannot attach to " +
                                   std::string(to_string(target)));
}

// ---------------------------------------------------------------------------
// Required roles, semantics, Autoprotocol mapping

std::set<Role> required_roles(OperationType op) {
  switch (op) {
    case OperationType::kTransfer: return {Role::kArg0, Role::kSite};
    case OperationType::kConvert: return {Role::kArg0, Role::kArg1};
    default: return {Role::kArg0};
  }
}

std::string_view core_role_semantics(OperationType op) {
  switch (op) {
    case OperationType::kSpin:
      return "ARG0 centrifuged to produce solid phase ARG1 and/or liquid phase ARG2";
    case OperationType::kConvert: return "ARG0 converted to ARG1";
    case OperationType::kSeal: return "ARG0 sealed with ARG1";
    case OperationType::kCreate: return "ARG* are created";
    case OperationType::kGeneral: return "-";
    case OperationType::kDestroy: return "ARG* discarded";
    case OperationType::kMeasure: return "ARG* to be measured";
    case OperationType::kMix: return "ARG* are mixed";
    case OperationType::kRemove: return "ARG0 removed from ARG1";
    case OperationType::kTemperatureTreatment: return "ARG* to be heated/cooled";
    case OperationType::kTime: return "Wait after operation on ARG0";
    case OperationType::kTransfer: return "ARG* are sources, transferred to \"site\"";
    case OperationType::kWash: return "ARG0 washed with ARG1";
  }
  return "";
}

const std::vector<std::string>& ap_instructions(OperationType op) {
  static const std::map<OperationType, std::vector<std::string>> kTable = {
      {OperationType::kSpin, {"Spin"}},
      {OperationType::kConvert, {}},
      {OperationType::kSeal, {"Seal", "Cover"}},
      {OperationType::kCreate, {"Oligosynthesize", "Provision"}},
      {OperationType::kGeneral, {}},
      {OperationType::kDestroy, {}},
      {OperationType::kMeasure,
       {"Absorbance", "Fluorescence", "Luminescence", "IlluminaSeq", "SangerSeq",
        "MeasureConcentration", "MeasureMass", "MeasureVolume", "CountCells", "Spectrophotometry",
        "FlowCytometry", "FlowAnalyze", "ImagePlate"}},
      {OperationType::kMix, {"Agitate"}},
      {OperationType::kRemove, {"Unseal", "Uncover"}},
      {OperationType::kTemperatureTreatment, {"Thermocycle", "Incubate", "FlashFreeze"}},
      {OperationType::kTransfer,
       {"AcousticTransfer", "MagneticTransfer", "Dispense", "Provision", "LiquidHandle",
        "Autopick"}},
      {OperationType::kWash, {}},
      {OperationType::kTime, {}},
  };
  return kTable.at(op);
}

double coverage_fraction(std::span<const OperationType> ops) {
  if (ops.empty()) throw std::invalid_argument("coverage_fraction: empty operation list");
  const auto known = std::count_if(ops.begin(), ops.end(),
                                   [](OperationType t) { return t != OperationType::kGeneral; });
  return static_cast<double>(known) / static_cast<double>(ops.size());
}

double share_above(std::span<const double> fractions, double threshold) {
  if (fractions.empty()) return 0.0;
  const auto n = std::count_if(fractions.begin(), fractions.end(),
                               [threshold](double f) { return f > threshold; });
  return static_cast<double>(n) / static_cast<double>(fractions.size());
}

nlohmann::json ontology_json() {
  using nlohmann::json;
  json ops = json::array();
  for (OperationType t : kAllOperationTypes) {
    json req = json::array();
    for (Role r : required_roles(t)) req.push_back(to_string(r));
    ops.push_back({{"name", to_string(t)},
                   {"required_roles", req},
                   {"core_role_semantics", core_role_semantics(t)},
                   {"autoprotocol", ap_instructions(t)}});
  }
  json args = json::array();
  for (ArgumentType t : kAllArgumentTypes) {
    args.push_back({{"name", to_string(t)}, {"object", is_object(t)}});
  }
  json roles = json::array();
  for (Role r : kAllRoles) {
    const char* cat = is_core(r) ? "core" : (r == Role::kSucc ? "temporal" : "non-core");
    roles.push_back({{"name", to_string(r)}, {"category", cat}});
  }
  // Restrictions in (source, role, target) orientation: source is the
  // dependent argument, target the head.
  json restrictions = {
      {"ARG*", {{"source", {"Object"}}, {"target", {"Operation"}},
                {"exception", "ARG1 of seal must be a seal entity"}}},
      {"site", {{"source", {"Object"}}, {"target", {"Operation"}}}},
      {"co-ref", {{"source", {"Object"}}, {"target", {"Object"}}}},
      {"measure", {{"source", {"Measurement"}}, {"target", {"Object"}},
                   {"relaxed_target", {"Operation"}}}},
      {"setting", {{"source", {"Setting"}}, {"target", {"Object"}},
                   {"relaxed_target", {"Operation"}}}},
      {"modifier", {{"source", {"Modifier"}}, {"target", {"Object", "Operation", "Measurement"}}}},
      {"usage", {{"source", {"Method", "Object"}}, {"target", {"Operation"}},
                 {"relaxed_target", {"Object"}}}},
      {"located-at", {{"source", {"Object"}}, {"target", {"Object"}}}},
      {"part-of", {{"source", {"Object"}}, {"target", {"Object"}}}},
      {"succ", {{"source", {"Operation"}}, {"target", {"Operation"}}}},
  };
  return {{"operation_types", ops},
          {"argument_types", args},
          {"object_types", {"reagent", "device", "seal", "location"}},
          {"roles", roles},
          {"edge_restrictions", restrictions},
          {"edge_orientation", "stored edges point head -> dependent; restrictions use "
                               "(dependent, role, head)"}};
}

}  // namespace peg

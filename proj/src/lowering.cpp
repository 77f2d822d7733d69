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

#include "peg/lowering.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "peg/ontology.hpp"
#include "peg/text.hpp"

namespace peg {

using nlohmann::json;

std::string_view to_string(HoleReason r) {
  return r == HoleReason::kVagueModifier ? "vague-modifier" : "missing-setting";
}

namespace {

std::string join_messages(const std::vector<Diagnostic>& diags) {
  std::string out = "graph has validation errors";
  for (const Diagnostic& d : diags) out += "; " + d.message;
  return out;
}

}  // namespace

LoweringError::LoweringError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::optional<Quantity> parse_quantity(std::string_view text) {
  static const std::regex kPattern(R"(^\s*([0-9][0-9,]*(?:\.[0-9]+)?)\s*([^0-9\s.,](?:.*\S)?)\s*$)");
  std::cmatch m;
  if (!std::regex_match(text.data(), text.data() + text.size(), m, kPattern)) return std::nullopt;
  std::string number = m[1].str();
  number.erase(std::remove(number.begin(), number.end(), ','), number.end());
  return Quantity{std::stod(number), m[2].str()};
}

std::optional<std::string> classify_measurement(std::string_view text) {
  static const std::map<std::string, std::string> kUnits = {
      {"s", "duration"},          {"sec", "duration"},        {"secs", "duration"},
      {"second", "duration"},     {"seconds", "duration"},    {"min", "duration"},
      {"mins", "duration"},       {"minute", "duration"},     {"minutes", "duration"},
      {"h", "duration"},          {"hr", "duration"},         {"hrs", "duration"},
      {"hour", "duration"},       {"hours", "duration"},      {"day", "duration"},
      {"days", "duration"},       {"°c", "temperature"},      {"ºc", "temperature"},
      {"c", "temperature"},       {"° c", "temperature"},     {"degrees", "temperature"},
      {"°f", "temperature"},      {"k", "temperature"},       {"rpm", "speed"},
      {"g", "speed"},             {"xg", "speed"},            {"x g", "speed"},
      {"×g", "speed"},            {"× g", "speed"},           {"µl", "volume"},
      {"μl", "volume"},           {"ul", "volume"},           {"ml", "volume"},
      {"l", "volume"},            {"nl", "volume"},           {"mg", "mass"},
      {"µg", "mass"},             {"μg", "mass"},             {"ug", "mass"},
      {"ng", "mass"},             {"kg", "mass"},             {"m", "concentration"},
      {"mm", "concentration"},    {"µm", "concentration"},    {"μm", "concentration"},
      {"um", "concentration"},    {"nm", "concentration"},    {"%", "concentration"},
      {"x", "concentration"},
  };
  static const std::map<std::string, std::string> kWords = {
      {"overnight", "duration"},
      {"room temperature", "temperature"},
      {"rt", "temperature"},
      {"on ice", "temperature"},
      {"ice", "temperature"},
  };
  const std::string lowered = to_lower_ascii(trim(text));
  if (auto it = kWords.find(lowered); it != kWords.end()) return it->second;
  if (auto q = parse_quantity(lowered)) {
    if (auto it = kUnits.find(q->unit); it != kUnits.end()) return it->second;
    // "2 µl of" style trailing words: classify by the first token.
    const auto tokens = split_whitespace(q->unit);
    if (!tokens.empty()) {
      if (auto it = kUnits.find(tokens.front()); it != kUnits.end()) return it->second;
    }
  }
  return std::nullopt;
}

namespace {

// Numeric parameters an instruction cannot run without.
const std::vector<std::string>& required_parameters(OperationType op) {
  static const std::vector<std::string> kNone;
  static const std::map<OperationType, std::vector<std::string>> kTable = {
      {OperationType::kTemperatureTreatment, {"temperature", "duration"}},
      {OperationType::kSpin, {"speed", "duration"}},
  };
  auto it = kTable.find(op);
  return it == kTable.end() ? kNone : it->second;
}

// Parameter a vague modifier stands in for.
std::string modifier_parameter(OperationType op) {
  switch (op) {
    case OperationType::kMix:
    case OperationType::kSpin:
      return "speed";
    case OperationType::kTemperatureTreatment:
      return "temperature";
    default:
      return "mode";
  }
}

std::string operand_key(Role r) {
  switch (r) {
    case Role::kSite:
      return "destination";
    case Role::kUsage:
      return "usage";
    default:
      return std::string(to_string(r));
  }
}

std::string choose_name(const std::vector<std::string>& names, const std::string& surface,
                        std::vector<std::string>& alt) {
  const auto words = split_whitespace(to_lower_ascii(surface));
  const std::string trigger = words.empty() ? std::string() : words.front();
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (to_lower_ascii(names[i]) == trigger) {
      chosen = i;
      break;
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i != chosen) alt.push_back(names[i]);
  }
  return names[chosen];
}

std::string fresh_key(const std::map<std::string, Parameter>& params, const std::string& base) {
  if (!params.count(base)) return base;
  for (int k = 2;; ++k) {
    std::string key = base + "_" + std::to_string(k);
    if (!params.count(key)) return key;
  }
}

}  // namespace

Program lower(const PegGraph& g) {
  auto errors = errors_only(validate(g));
  if (!errors.empty()) throw LoweringError(std::move(errors));

  auto by_position = [&](const std::string& a, const std::string& b) {
    return g.mention_of(g.node(a)).span < g.mention_of(g.node(b)).span;
  };
  auto dependents = [&](const std::string& head, Role role) {
    std::vector<std::string> out;
    for (const Edge& e : g.edges()) {
      if (e.source == head && e.role == role) out.push_back(e.target);
    }
    std::sort(out.begin(), out.end(), by_position);
    return out;
  };
  auto surface = [&](const std::string& id) { return g.mention_of(g.node(id)).surface; };

  Program p;
  p.document = g.document().id();
  std::size_t index = 0;
  for (const std::string& op_id : g.topological_order()) {
    const Node& op = g.node(op_id);
    const OperationType type = std::get<OperationType>(op.grounding);
    ApInstruction ins;
    ins.order_index = index++;
    ins.node = op_id;
    const auto& names = ap_instructions(type);
    ins.name = names.empty() ? "unmapped:" + std::string(to_string(type))
                             : choose_name(names, surface(op_id), ins.alt);

    std::vector<std::string> operand_nodes;
    for (Role r : {Role::kArg0, Role::kArg1, Role::kArg2, Role::kSite, Role::kUsage}) {
      for (const std::string& d : dependents(op_id, r)) {
        ins.operands[operand_key(r)].push_back({d, surface(d)});
        operand_nodes.push_back(d);
      }
    }

    // Values: settings and measures of the operation, then measures of its
    // operands.
    std::vector<std::pair<Role, std::string>> values;
    for (Role r : {Role::kSetting, Role::kMeasure}) {
      for (const std::string& d : dependents(op_id, r)) values.emplace_back(r, d);
    }
    std::set<std::string> seen_operands;
    for (const std::string& o : operand_nodes) {
      if (!seen_operands.insert(o).second) continue;
      for (const std::string& d : dependents(o, Role::kMeasure)) values.emplace_back(Role::kMeasure, d);
    }
    for (const auto& [role, id] : values) {
      const std::string text = surface(id);
      const std::string base = classify_measurement(text).value_or(std::string(to_string(role)));
      Parameter param;
      param.value = text;
      param.quantity = parse_quantity(text);
      param.source = id;
      ins.parameters[fresh_key(ins.parameters, base)] = param;
    }

    for (const std::string& m : dependents(op_id, Role::kModifier)) {
      const std::string key = fresh_key(ins.parameters, modifier_parameter(type));
      Parameter param;
      param.source = m;
      param.hole = HoleReason::kVagueModifier;
      ins.parameters[key] = param;
      p.holes.push_back({ins.order_index, op_id, key, HoleReason::kVagueModifier, m, surface(m)});
    }

    for (const std::string& name : required_parameters(type)) {
      if (ins.parameters.count(name)) continue;
      Parameter param;
      param.hole = HoleReason::kMissingSetting;
      ins.parameters[name] = param;
      p.holes.push_back({ins.order_index, op_id, name, HoleReason::kMissingSetting, std::nullopt,
                         std::nullopt});
    }
    p.instructions.push_back(std::move(ins));
  }
  return p;
}

json to_json(const Program& p) {
  json instructions = json::array();
  for (const ApInstruction& ins : p.instructions) {
    json operands = json::object();
    for (const auto& [key, refs] : ins.operands) {
      json arr = json::array();
      for (const EntityRef& r : refs) arr.push_back({{"node", r.node}, {"text", r.text}});
      operands[key] = arr;
    }
    json params = json::object();
    for (const auto& [key, param] : ins.parameters) {
      json v = json::object();
      if (param.value) v["value"] = *param.value;
      if (param.quantity) v["quantity"] = {{"value", param.quantity->value}, {"unit", param.quantity->unit}};
      if (param.source) v["source"] = *param.source;
      if (param.hole) v["hole"] = to_string(*param.hole);
      params[key] = v;
    }
    instructions.push_back({{"order_index", ins.order_index},
                            {"node", ins.node},
                            {"name", ins.name},
                            {"alt", ins.alt},
                            {"operands", operands},
                            {"parameters", params}});
  }
  json holes = json::array();
  for (const Hole& h : p.holes) {
    holes.push_back({{"instruction", h.instruction},
                     {"node", h.node},
                     {"parameter", h.parameter},
                     {"reason", to_string(h.reason)},
                     {"source", h.source ? json(*h.source) : json(nullptr)},
                     {"hint", h.hint ? json(*h.hint) : json(nullptr)}});
  }
  return {{"format", "peg-program"},
          {"format_version", 1},
          {"document", p.document},
          {"instructions", instructions},
          {"holes", holes}};
}

std::string emit_json(const Program& p) { return to_json(p).dump(2) + "\n"; }

}  // namespace peg

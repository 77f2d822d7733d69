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

#ifndef PEG_TYPES_HPP_
#define PEG_TYPES_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace peg {

// Lab operation types (predicate groundings).
enum class OperationType {
  kTransfer,
  kTemperatureTreatment,
  kGeneral,
  kMix,
  kSpin,
  kCreate,
  kDestroy,
  kRemove,
  kMeasure,
  kWash,
  kTime,
  kSeal,
  kConvert,
};

// Argument types (argument groundings).
enum class ArgumentType {
  kReagent,
  kMeasurement,
  kSetting,
  kLocation,
  kModifier,
  kDevice,
  kMethod,
  kSeal,
};

// The closed edge-label inventory.
enum class Role {
  kArg0,
  kArg1,
  kArg2,
  kSite,
  kSetting,
  kUsage,
  kCoref,
  kLocatedAt,
  kMeasure,
  kModifier,
  kPartOf,
  kSucc,
};

enum class RoleCategory { kCore, kNonCore, kTemporal };

inline constexpr std::array<OperationType, 13> kAllOperationTypes = {
    OperationType::kTransfer, OperationType::kTemperatureTreatment, OperationType::kGeneral,
    OperationType::kMix,      OperationType::kSpin,                 OperationType::kCreate,
    OperationType::kDestroy,  OperationType::kRemove,               OperationType::kMeasure,
    OperationType::kWash,     OperationType::kTime,                 OperationType::kSeal,
    OperationType::kConvert,
};

inline constexpr std::array<ArgumentType, 8> kAllArgumentTypes = {
    ArgumentType::kReagent,  ArgumentType::kMeasurement, ArgumentType::kSetting,
    ArgumentType::kLocation, ArgumentType::kModifier,    ArgumentType::kDevice,
    ArgumentType::kMethod,   ArgumentType::kSeal,
};

inline constexpr std::array<Role, 12> kAllRoles = {
    Role::kArg0,    Role::kArg1,      Role::kArg2,    Role::kSite,
    Role::kSetting, Role::kUsage,     Role::kCoref,   Role::kLocatedAt,
    Role::kMeasure, Role::kModifier,  Role::kPartOf,  Role::kSucc,
};

std::string_view to_string(OperationType t);
std::string_view to_string(ArgumentType t);
std::string_view to_string(Role r);

std::optional<OperationType> parse_operation_type(std::string_view s);
std::optional<ArgumentType> parse_argument_type(std::string_view s);
std::optional<Role> parse_role(std::string_view s);

RoleCategory category(Role r);
inline bool is_core(Role r) { return category(r) == RoleCategory::kCore; }
// ARG0/ARG1/ARG2 and site: the roles through which an object can be reused.
inline bool is_reentrancy_role(Role r) { return is_core(r) || r == Role::kSite; }

// Object types are the argument types that denote physical things.
bool is_object(ArgumentType t);

// A node is grounded either to an operation type (predicates) or an argument
// type (arguments).
using Grounding = std::variant<OperationType, ArgumentType>;

inline bool is_operation(const Grounding& g) { return std::holds_alternative<OperationType>(g); }
bool is_object(const Grounding& g);
std::string_view to_string(const Grounding& g);

}  // namespace peg

#endif  // PEG_TYPES_HPP_

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

#include <gtest/gtest.h>

#include "peg/ontology.hpp"

namespace peg {
namespace {

TEST(OntologyTest, NamesRoundTrip) {
  for (OperationType t : kAllOperationTypes) EXPECT_EQ(parse_operation_type(to_string(t)), t);
  for (ArgumentType t : kAllArgumentTypes) EXPECT_EQ(parse_argument_type(to_string(t)), t);
  for (Role r : kAllRoles) EXPECT_EQ(parse_role(to_string(r)), r);
  EXPECT_FALSE(parse_role("ARG3").has_value());
  EXPECT_FALSE(parse_operation_type("Transfer").has_value());
}

TEST(OntologyTest, RoleCategories) {
  EXPECT_TRUE(is_core(Role::kArg0));
  EXPECT_TRUE(is_core(Role::kArg2));
  EXPECT_FALSE(is_core(Role::kSite));
  EXPECT_TRUE(is_reentrancy_role(Role::kSite));
  EXPECT_EQ(category(Role::kSucc), RoleCategory::kTemporal);
  EXPECT_EQ(category(Role::kCoref), RoleCategory::kNonCore);
}

TEST(OntologyTest, CoreEdgesRequireObjectDependents) {
  // Stored orientation: head operation -> dependent argument.
  EXPECT_TRUE(edge_legal_stored(OperationType::kTransfer, Role::kArg0, ArgumentType::kReagent).legal);
  EXPECT_TRUE(edge_legal_stored(OperationType::kMix, Role::kArg0, ArgumentType::kLocation).legal);
  const Legality bad = edge_legal_stored(OperationType::kMix, Role::kArg0, ArgumentType::kModifier);
  EXPECT_FALSE(bad.legal);
  EXPECT_FALSE(bad.message.empty());
  EXPECT_FALSE(edge_legal_stored(ArgumentType::kReagent, Role::kArg0, ArgumentType::kReagent).legal);
}

TEST(OntologyTest, SealTakesSealEntityAsArg1) {
  EXPECT_TRUE(edge_legal_stored(OperationType::kSeal, Role::kArg1, ArgumentType::kSeal).legal);
  const Legality l = edge_legal_stored(OperationType::kSeal, Role::kArg1, ArgumentType::kReagent);
  EXPECT_FALSE(l.legal);
  EXPECT_EQ(l.rule, "seal-arg1-not-seal");
}

TEST(OntologyTest, SuccOnlyBetweenOperations) {
  EXPECT_TRUE(edge_legal(OperationType::kMix, Role::kSucc, OperationType::kSpin).legal);
  EXPECT_FALSE(edge_legal(OperationType::kMix, Role::kSucc, ArgumentType::kReagent).legal);
}

TEST(OntologyTest, RelaxedTargetsAreLegalButFlagged) {
  const Legality setting = edge_legal_stored(OperationType::kTemperatureTreatment, Role::kSetting,
                                             ArgumentType::kSetting);
  EXPECT_TRUE(setting.legal);
  EXPECT_TRUE(setting.relaxed);
  const Legality measure = edge_legal_stored(ArgumentType::kReagent, Role::kMeasure,
                                             ArgumentType::kMeasurement);
  EXPECT_TRUE(measure.legal);
  EXPECT_FALSE(measure.relaxed);
}

TEST(OntologyTest, RequiredRoles) {
  EXPECT_EQ(required_roles(OperationType::kTransfer), (std::set<Role>{Role::kArg0, Role::kSite}));
  EXPECT_EQ(required_roles(OperationType::kConvert), (std::set<Role>{Role::kArg0, Role::kArg1}));
  EXPECT_EQ(required_roles(OperationType::kMix), (std::set<Role>{Role::kArg0}));
}

TEST(OntologyTest, AutoprotocolMapping) {
  EXPECT_EQ(ap_instructions(OperationType::kMix), (std::vector<std::string>{"Agitate"}));
  EXPECT_EQ(ap_instructions(OperationType::kSpin), (std::vector<std::string>{"Spin"}));
  EXPECT_EQ(ap_instructions(OperationType::kTransfer).size(), 6u);
  EXPECT_EQ(ap_instructions(OperationType::kMeasure).size(), 13u);
  EXPECT_TRUE(ap_instructions(OperationType::kGeneral).empty());
  EXPECT_TRUE(ap_instructions(OperationType::kWash).empty());
}

TEST(OntologyTest, Coverage) {
  const std::vector<OperationType> ops = {OperationType::kTransfer, OperationType::kGeneral,
                                          OperationType::kMix, OperationType::kSpin};
  EXPECT_DOUBLE_EQ(coverage_fraction(ops), 0.75);
  EXPECT_THROW(coverage_fraction(std::vector<OperationType>{}), std::invalid_argument);
  const std::vector<double> fractions = {1.0, 0.95, 0.8, 0.5};
  EXPECT_DOUBLE_EQ(share_above(fractions, 0.9), 0.5);
  EXPECT_DOUBLE_EQ(share_above(fractions, 0.7), 0.75);
}

TEST(OntologyTest, JsonExportListsInventories) {
  const auto j = ontology_json();
  EXPECT_EQ(j["operation_types"].size(), 13u);
  EXPECT_EQ(j["argument_types"].size(), 8u);
  EXPECT_EQ(j["roles"].size(), 12u);
}

}  // namespace
}  // namespace peg

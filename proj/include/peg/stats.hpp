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

#ifndef PEG_STATS_HPP_
#define PEG_STATS_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "peg/core.hpp"

namespace peg {

struct RelationCounts {
  std::size_t intra = 0;
  std::size_t inter = 0;
  std::size_t total = 0;
  // ARG*/site edges into reentrant arguments; zero for other roles.
  std::size_t reentrancy = 0;

  RelationCounts& operator+=(const RelationCounts& o);
  bool operator==(const RelationCounts&) const = default;
};

struct CorpusStats {
  // Relation breakdown. Locality is the raw sentence locality of the two
  // trigger spans.
  std::map<Role, RelationCounts> per_role;
  RelationCounts core;
  RelationCounts non_core;
  RelationCounts temporal;
  RelationCounts grand_total;

  // ARG*/site edges that are cross-sentence once co-reference closure is
  // applied, and the number of ARG*/site edges considered.
  std::size_t arg_site_total = 0;
  std::size_t arg_site_inter_closed = 0;

  std::map<OperationType, std::size_t> operation_types;
  std::map<ArgumentType, std::size_t> argument_types;

  std::size_t operations = 0;
  std::size_t ops_without_core = 0;
  // Core and non-core edges with an operation endpoint.
  std::size_t op_arguments = 0;
  double avg_args_per_op = 0.0;

  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::string tokenization = "whitespace";

  // Per-document share of non-general operations (documents with operations).
  std::vector<double> coverage;
};

CorpusStats corpus_stats(std::span<const PegGraph> graphs);

nlohmann::json to_json(const CorpusStats& s);
// Plain-text tables: relation breakdown, type frequencies, arguments per
// operation, corpus size, coverage.
std::string format_tables(const CorpusStats& s);

}  // namespace peg

#endif  // PEG_STATS_HPP_

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

#ifndef PEG_BRAT_HPP_
#define PEG_BRAT_HPP_

#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "peg/core.hpp"

namespace peg {

// Errors in BRAT input, located by file and line.
class BratError : public std::runtime_error {
 public:
  BratError(std::string code, std::string file, std::size_t line, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
        code_(std::move(code)),
        file_(std::move(file)),
        line_(line) {}

  const std::string& code() const { return code_; }
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string code_;
  std::string file_;
  std::size_t line_;
};

// WLP label algebra, loaded from TSV rows
// `entity <label> <operation|argument> <type>` and
// `relation <label> <role|legacy> <role-name|->`.
struct LabelMap {
  struct EntityRule {
    MentionKind kind;
    Grounding suggested;
  };
  std::map<std::string, EntityRule> entities;
  std::map<std::string, Role> roles;
  std::set<std::string> legacy;

  static LabelMap parse(std::string_view tsv);
  static const LabelMap& builtin();
};

// A within-sentence WLP relation that maps onto the role inventory; endpoints
// are mention ids (head -> dependent).
struct PrepopulatedEdge {
  std::string source;
  Role role;
  std::string target;

  bool operator==(const PrepopulatedEdge&) const = default;
};

// A WLP relation with no PEG counterpart, kept verbatim.
struct LegacyRelation {
  std::string id;
  std::string label;
  std::string source;
  std::string target;

  bool operator==(const LegacyRelation&) const = default;
};

struct ImportedDocument {
  Document document;
  std::map<std::string, Grounding> suggested_types;
  std::vector<PrepopulatedEdge> edges;
  std::vector<LegacyRelation> legacy;
  std::vector<std::string> warnings;
};

// Parses one .txt/.ann pair. Sentences are the non-empty lines of the text.
ImportedDocument import_brat_pair(const std::string& doc_id, const std::string& txt,
                                  const std::string& ann, const LabelMap& labels = LabelMap::builtin(),
                                  const std::string& ann_name = "input.ann");

// Imports every <name>.txt/<name>.ann pair in `dir`, sorted by name.
std::vector<ImportedDocument> import_brat(const std::filesystem::path& dir,
                                          const LabelMap& labels = LabelMap::builtin());

nlohmann::json to_json(const ImportedDocument& doc);

}  // namespace peg

#endif  // PEG_BRAT_HPP_

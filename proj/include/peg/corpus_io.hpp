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

#ifndef PEG_CORPUS_IO_HPP_
#define PEG_CORPUS_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "peg/core.hpp"

namespace peg {

inline constexpr int kPegFormatVersion = 1;

// Malformed input files. `code` is one of "bad-json", "version-mismatch",
// "missing-field", "unknown-role", "unknown-type", "unknown-kind",
// "offset-out-of-bounds", or a GraphError code raised while building.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

nlohmann::json to_json(const Document& doc);
Document document_from_json(const nlohmann::json& j);

// PegFile: {"format_version", "document", "nodes", "edges"}. Nodes are
// ordered by mention position, edges by (source, role, target) position.
nlohmann::json to_json(const PegGraph& g);
PegGraph graph_from_json(const nlohmann::json& j);

// Canonical bytes: sorted keys, two-space indent, trailing newline.
std::string save_peg(const PegGraph& g);
PegGraph load_peg(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

PegGraph load_peg_file(const std::filesystem::path& path);
// Accepts a PegFile, an imported document file, or a bare document object.
Document load_document_file(const std::filesystem::path& path);

std::string canonical_dump(const nlohmann::json& j);

}  // namespace peg

#endif  // PEG_CORPUS_IO_HPP_

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

#ifndef PEG_TEXT_HPP_
#define PEG_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace peg {

// Character offsets throughout the toolkit count Unicode scalar values, not
// bytes. Utf8Index maps scalar offsets to byte offsets for one string.
class Utf8Index {
 public:
  explicit Utf8Index(std::string_view text);

  // Number of scalar values in the text.
  std::size_t size() const { return byte_offsets_.size() - 1; }

  // Byte offset of scalar offset `pos`; pos == size() maps to text.size().
  std::size_t byte_offset(std::size_t pos) const { return byte_offsets_.at(pos); }

  // Slice [start, end) in scalar offsets. Throws std::out_of_range.
  std::string slice(std::string_view text, std::size_t start, std::size_t end) const;

 private:
  std::vector<std::size_t> byte_offsets_;
};

std::size_t utf8_length(std::string_view text);
std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);

}  // namespace peg

#endif  // PEG_TEXT_HPP_

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

#include "peg/brat.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "peg/label_map_data.hpp"
#include "peg/corpus_io.hpp"
#include "peg/ontology.hpp"
#include "peg/text.hpp"

namespace peg {

using nlohmann::json;

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// "Acts-on2" -> "Acts-on"; BRAT numbers repeated event roles.
std::string strip_role_index(std::string s) {
  while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

std::optional<std::size_t> parse_index(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(
                                                                  static_cast<unsigned char>(c)); }))
    return std::nullopt;
  return std::stoul(s);
}

}  // namespace

LabelMap LabelMap::parse(std::string_view tsv) {
  LabelMap map;
  std::size_t line_no = 0;
  for (const std::string& raw : split(tsv, '\n')) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 4) {
      throw BratError("bad-label-map", "label map", line_no, "expected 4 tab-separated columns");
    }
    if (cols[0] == "entity") {
      const auto kind = parse_mention_kind(cols[2]);
      if (!kind) throw BratError("bad-label-map", "label map", line_no, "bad kind " + cols[2]);
      std::optional<Grounding> g;
      if (*kind == MentionKind::kOperation) {
        if (auto t = parse_operation_type(cols[3])) g = *t;
      } else if (auto t = parse_argument_type(cols[3])) {
        g = *t;
      }
      if (!g) throw BratError("bad-label-map", "label map", line_no, "bad type " + cols[3]);
      map.entities[cols[1]] = {*kind, *g};
    } else if (cols[0] == "relation") {
      if (cols[2] == "legacy") {
        map.legacy.insert(cols[1]);
      } else if (auto r = parse_role(cols[3]); cols[2] == "role" && r) {
        map.roles[cols[1]] = *r;
      } else {
        throw BratError("bad-label-map", "label map", line_no, "bad relation row");
      }
    } else {
      throw BratError("bad-label-map", "label map", line_no, "unknown row kind " + cols[0]);
    }
  }
  return map;
}

const LabelMap& LabelMap::builtin() {
  static const LabelMap map = parse(detail::kWlpLabelMapTsv);
  return map;
}

ImportedDocument import_brat_pair(const std::string& doc_id, const std::string& txt,
                                  const std::string& ann, const LabelMap& labels,
                                  const std::string& ann_name) {
  const Utf8Index index(txt);

  // One sentence per non-blank line.
  std::vector<Span> sentences;
  {
    std::size_t line_start = 0;
    for (std::size_t pos = 0; pos <= index.size(); ++pos) {
      const bool at_end = pos == index.size();
      if (!at_end && txt[index.byte_offset(pos)] != '\n') continue;
      std::size_t end = pos;
      if (end > line_start && txt[index.byte_offset(end - 1)] == '\r') --end;
      if (!trim(index.slice(txt, line_start, end)).empty()) sentences.push_back({line_start, end});
      line_start = pos + 1;
    }
  }
  auto sentence_of = [&](Span s) {
    return std::any_of(sentences.begin(), sentences.end(),
                       [&](const Span& sent) { return s.start >= sent.start && s.end <= sent.end; });
  };

  ImportedDocument out;
  std::vector<Mention> mentions;
  std::map<std::string, std::size_t> mention_line;
  std::map<std::string, std::string> event_trigger;

  struct PendingRelation {
    std::size_t line;
    std::string id;
    std::string label;
    std::string source;
    std::string target;
  };
  std::vector<PendingRelation> relations;

  std::size_t line_no = 0;
  for (const std::string& raw : split(ann, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    const auto cols = split(line, '\t');
    const std::string& id = cols[0];
    auto fail = [&](const std::string& code, const std::string& msg) -> BratError {
      return BratError(code, ann_name, line_no, msg);
    };
    switch (id[0]) {
      case 'T': {
        if (cols.size() < 3) throw fail("malformed-line", id + ": expected 3 tab-separated fields");
        const auto head = split_whitespace(cols[1]);
        if (head.size() < 3) throw fail("malformed-line", id + ": missing offsets");
        // Fragments "s e;s e" (discontinuous annotations are joined by a space).
        const std::string offsets = cols[1].substr(head[0].size() + 1);
        std::vector<Span> frags;
        for (const std::string& f : split(offsets, ';')) {
          const auto pair = split_whitespace(f);
          if (pair.size() != 2) throw fail("malformed-line", id + ": bad offset fragment");
          auto s = parse_index(pair[0]);
          auto e = parse_index(pair[1]);
          if (!s || !e) throw fail("malformed-line", id + ": non-numeric offset");
          frags.push_back({*s, *e});
        }
        std::string joined;
        for (const Span& f : frags) {
          if (f.start >= f.end || f.end > index.size()) {
            throw fail("offset-mismatch", id + ": span [" + std::to_string(f.start) + ", " +
                                              std::to_string(f.end) + ") outside text of length " +
                                              std::to_string(index.size()));
          }
          if (!joined.empty()) joined += ' ';
          joined += index.slice(txt, f.start, f.end);
        }
        if (joined != cols[2]) {
          throw fail("offset-mismatch", id + ": annotated text \"" + cols[2] +
                                            "\" does not match \"" + joined + "\" at offsets " +
                                            offsets);
        }
        const Span hull{frags.front().start, frags.back().end};
        if (!sentence_of(hull)) {
          throw fail("offset-mismatch", id + ": span crosses a sentence boundary");
        }
        MentionKind kind = MentionKind::kArgument;
        auto rule = labels.entities.find(head[0]);
        if (rule != labels.entities.end()) {
          kind = rule->second.kind;
          out.suggested_types.emplace(id, rule->second.suggested);
        } else {
          out.warnings.push_back(ann_name + ":" + std::to_string(line_no) + ": unmapped label " +
                                 head[0] + " on " + id + " imported as argument");
        }
        if (mention_line.count(id)) throw fail("duplicate-id", "duplicate annotation id " + id);
        mention_line[id] = line_no;
        mentions.push_back({id, hull, index.slice(txt, hull.start, hull.end), kind});
        break;
      }
      case 'E': {
        if (cols.size() < 2) throw fail("malformed-line", id + ": expected 2 tab-separated fields");
        const auto args = split_whitespace(cols[1]);
        if (args.empty()) throw fail("malformed-line", id + ": empty event");
        const auto trig = split(args[0], ':');
        if (trig.size() != 2) throw fail("malformed-line", id + ": bad trigger " + args[0]);
        event_trigger[id] = trig[1];
        for (std::size_t i = 1; i < args.size(); ++i) {
          const auto kv = split(args[i], ':');
          if (kv.size() != 2) throw fail("malformed-line", id + ": bad argument " + args[i]);
          relations.push_back({line_no, id + "." + std::to_string(i), strip_role_index(kv[0]),
                               trig[1], kv[1]});
        }
        break;
      }
      case 'R': {
        if (cols.size() < 2) throw fail("malformed-line", id + ": expected 2 tab-separated fields");
        const auto args = split_whitespace(cols[1]);
        if (args.size() != 3) throw fail("malformed-line", id + ": expected label and two args");
        const auto a1 = split(args[1], ':');
        const auto a2 = split(args[2], ':');
        if (a1.size() != 2 || a2.size() != 2) throw fail("malformed-line", id + ": bad arguments");
        relations.push_back({line_no, id, args[0], a1[1], a2[1]});
        break;
      }
      case '*': {
        if (cols.size() < 2) break;
        const auto args = split_whitespace(cols[1]);
        for (std::size_t i = 2; i < args.size(); ++i) {
          relations.push_back({line_no, "*" + std::to_string(line_no), args[0], args[1], args[i]});
        }
        break;
      }
      default:
        // Attributes, notes and normalizations carry nothing we import.
        break;
    }
  }

  std::set<std::tuple<std::string, Role, std::string>> seen;
  for (PendingRelation& r : relations) {
    for (std::string* end : {&r.source, &r.target}) {
      if (auto ev = event_trigger.find(*end); ev != event_trigger.end()) *end = ev->second;
      if (!mention_line.count(*end)) {
        throw BratError("orphan-id", ann_name, r.line,
                        r.id + " references missing annotation " + *end);
      }
    }
    if (auto role = labels.roles.find(r.label); role != labels.roles.end()) {
      if (seen.emplace(r.source, role->second, r.target).second && r.source != r.target) {
        out.edges.push_back({r.source, role->second, r.target});
      }
      continue;
    }
    if (!labels.legacy.count(r.label)) {
      out.warnings.push_back(ann_name + ":" + std::to_string(r.line) + ": unmapped relation " +
                             r.label + " kept as legacy");
    }
    out.legacy.push_back({r.id, r.label, r.source, r.target});
  }

  try {
    out.document = Document(doc_id, txt, std::move(sentences), std::move(mentions));
  } catch (const GraphError& e) {
    throw BratError(e.code(), ann_name, 0, e.what());
  }
  return out;
}

std::vector<ImportedDocument> import_brat(const std::filesystem::path& dir,
                                          const LabelMap& labels) {
  std::vector<std::filesystem::path> anns;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".ann") anns.push_back(entry.path());
  }
  std::sort(anns.begin(), anns.end());
  std::vector<ImportedDocument> out;
  for (const auto& ann : anns) {
    auto txt = ann;
    txt.replace_extension(".txt");
    if (!std::filesystem::exists(txt)) {
      throw BratError("missing-text", ann.string(), 0, "no matching .txt file");
    }
    out.push_back(import_brat_pair(ann.stem().string(), read_file(txt), read_file(ann), labels,
                                   ann.string()));
  }
  return out;
}

json to_json(const ImportedDocument& doc) {
  json types = json::object();
  for (const auto& [id, g] : doc.suggested_types) types[id] = to_string(g);
  json edges = json::array();
  for (const auto& e : doc.edges) {
    edges.push_back({{"source", e.source}, {"role", to_string(e.role)}, {"target", e.target}});
  }
  json legacy = json::array();
  for (const auto& r : doc.legacy) {
    legacy.push_back({{"id", r.id}, {"label", r.label}, {"source", r.source}, {"target", r.target}});
  }
  return {{"format_version", kPegFormatVersion},
          {"document", to_json(doc.document)},
          {"prepopulated", {{"suggested_types", types}, {"edges", edges}, {"legacy", legacy}}},
          {"warnings", doc.warnings}};
}

}  // namespace peg

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

#include "peg/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "peg/ontology.hpp"
#include "peg/text.hpp"

namespace peg {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw FormatError("missing-field", std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

template <typename T>
T get(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const json::type_error& e) {
    throw FormatError("missing-field", std::string("field \"") + name + "\": " + e.what());
  }
}

std::size_t get_offset(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw FormatError("offset-out-of-bounds",
                      std::string("field \"") + name + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Document& doc) {
  json sentences = json::array();
  for (const Span& s : doc.sentences()) sentences.push_back({s.start, s.end});
  std::vector<const Mention*> mentions;
  for (const Mention& m : doc.mentions()) mentions.push_back(&m);
  std::sort(mentions.begin(), mentions.end(), [](const Mention* a, const Mention* b) {
    return std::tie(a->span, a->id) < std::tie(b->span, b->id);
  });
  json ms = json::array();
  for (const Mention* m : mentions) {
    ms.push_back({{"id", m->id},
                  {"start", m->span.start},
                  {"end", m->span.end},
                  {"surface", m->surface},
                  {"kind", to_string(m->kind)}});
  }
  return {{"id", doc.id()}, {"text", doc.text()}, {"sentences", sentences}, {"mentions", ms}};
}

Document document_from_json(const json& j) {
  std::vector<Span> sentences;
  for (const json& s : field(j, "sentences")) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() ||
        !s[1].is_number_integer() || s[0].get<long long>() < 0 || s[1].get<long long>() < 0) {
      throw FormatError("offset-out-of-bounds", "sentence spans must be [start, end] pairs");
    }
    sentences.push_back({s[0].get<std::size_t>(), s[1].get<std::size_t>()});
  }
  std::vector<Mention> mentions;
  for (const json& m : field(j, "mentions")) {
    const std::string kind_name = get<std::string>(m, "kind");
    const auto kind = parse_mention_kind(kind_name);
    if (!kind) throw FormatError("unknown-kind", "unknown mention kind \"" + kind_name + "\"");
    mentions.push_back({get<std::string>(m, "id"),
                        {get_offset(m, "start"), get_offset(m, "end")},
                        get<std::string>(m, "surface"),
                        *kind});
  }
  try {
    return Document(get<std::string>(j, "id"), get<std::string>(j, "text"), std::move(sentences),
                    std::move(mentions));
  } catch (const GraphError& e) {
    throw FormatError(e.code(), e.what());
  }
}

json to_json(const PegGraph& g) {
  std::vector<const Node*> nodes;
  for (const Node& n : g.nodes()) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [&g](const Node* a, const Node* b) {
    return std::tie(g.mention_of(*a).span, a->id) < std::tie(g.mention_of(*b).span, b->id);
  });
  std::map<std::string, std::size_t> position;
  json ns = json::array();
  for (const Node* n : nodes) {
    const std::size_t pos = position.size();
    position[n->id] = pos;
    ns.push_back({{"id", n->id}, {"mention", n->mention}, {"type", to_string(n->grounding)}});
  }
  std::vector<const Edge*> edges;
  for (const Edge& e : g.edges()) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [&position](const Edge* a, const Edge* b) {
    return std::make_tuple(position[a->source], a->role, position[a->target]) <
           std::make_tuple(position[b->source], b->role, position[b->target]);
  });
  json es = json::array();
  for (const Edge* e : edges) {
    es.push_back({{"source", e->source}, {"role", to_string(e->role)}, {"target", e->target}});
  }
  return {{"format_version", kPegFormatVersion},
          {"document", to_json(g.document())},
          {"nodes", ns},
          {"edges", es}};
}

PegGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("bad-json", "PEG file must be a JSON object");
  const json& version = field(j, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kPegFormatVersion) {
    throw FormatError("version-mismatch", "unsupported format_version " + version.dump() +
                                              " (expected " + std::to_string(kPegFormatVersion) +
                                              ")");
  }
  Document doc = document_from_json(field(j, "document"));
  std::vector<Node> nodes;
  for (const json& n : field(j, "nodes")) {
    const std::string mention = get<std::string>(n, "mention");
    const std::string type = get<std::string>(n, "type");
    const Mention* m = doc.find_mention(mention);
    // "seal" names both an operation and an argument type; the mention kind
    // disambiguates.
    std::optional<Grounding> grounding;
    const bool op = m != nullptr ? m->kind == MentionKind::kOperation
                                 : parse_operation_type(type).has_value();
    if (op) {
      if (auto t = parse_operation_type(type)) grounding = *t;
    } else if (auto t = parse_argument_type(type)) {
      grounding = *t;
    }
    if (!grounding) {
      throw FormatError("unknown-type", "node " + get<std::string>(n, "id") + ": unknown " +
                                            (op ? "operation" : "argument") + " type \"" + type +
                                            "\"");
    }
    nodes.push_back({get<std::string>(n, "id"), mention, *grounding});
  }
  std::vector<Edge> edges;
  for (const json& e : field(j, "edges")) {
    const std::string role_name = get<std::string>(e, "role");
    const auto role = parse_role(role_name);
    if (!role) throw FormatError("unknown-role", "unknown role \"" + role_name + "\"");
    edges.push_back({get<std::string>(e, "source"), *role, get<std::string>(e, "target")});
  }
  try {
    return build_graph(std::move(doc), std::move(nodes), std::move(edges));
  } catch (const GraphError& e) {
    throw FormatError(e.code(), e.what());
  }
}

std::string save_peg(const PegGraph& g) { return canonical_dump(to_json(g)); }

PegGraph load_peg(std::string_view bytes) {
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded()) throw FormatError("bad-json", "malformed JSON");
  return graph_from_json(j);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

PegGraph load_peg_file(const std::filesystem::path& path) {
  try {
    return load_peg(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(e.code(), path.string() + ": " + e.what());
  }
}

Document load_document_file(const std::filesystem::path& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw FormatError("bad-json", path.string() + ": malformed JSON");
  try {
    return document_from_json(j.contains("document") ? j.at("document") : j);
  } catch (const FormatError& e) {
    throw FormatError(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace peg

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

#include "peg/service.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "peg/corpus_io.hpp"
#include "peg/ontology.hpp"

namespace peg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kDocumentHeader = "# document: ";

Reply error_reply(int status, const std::string& code, const std::string& message) {
  return {status, {{"error", code}, {"message", message}}};
}

json diagnostics_json(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const Diagnostic& d : diags) out.push_back(to_json(d));
  return out;
}

std::string session_name(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "s-%06zu", n);
  return buf;
}

void append_line(const fs::path& path, const std::string& line) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  out << line << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to " + path.string());
}

}  // namespace

std::pair<std::shared_ptr<const Session>, std::size_t> SessionService::SessionEntry::read() const {
  std::lock_guard lock(snapshot_guard);
  return {snapshot, revision};
}

SessionService::SessionService(fs::path corpus_dir, fs::path state_dir)
    : corpus_dir_(std::move(corpus_dir)), state_dir_(std::move(state_dir)) {
  load_corpus();
  fs::create_directories(state_dir_);
  resume_sessions();
}

void SessionService::load_corpus() {
  if (!fs::is_directory(corpus_dir_)) {
    throw std::runtime_error("corpus directory not found: " + corpus_dir_.string());
  }
  std::vector<fs::path> files;
  bool has_brat = false;
  for (const auto& entry : fs::directory_iterator(corpus_dir_)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
    if (entry.path().extension() == ".ann") has_brat = true;
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    Document doc;
    try {
      doc = load_document_file(f);
    } catch (const std::exception&) {
      continue;  // not a document (e.g. a stats or program file)
    }
    documents_.try_emplace(doc.id(), DocumentEntry{doc, std::nullopt});
  }
  if (has_brat) {
    for (ImportedDocument& imp : import_brat(corpus_dir_)) {
      const std::string id = imp.document.id();
      if (documents_.count(id)) continue;
      Document doc = imp.document;
      documents_.emplace(id, DocumentEntry{std::move(doc), std::move(imp)});
    }
  }
}

void SessionService::resume_sessions() {
  std::vector<fs::path> logs;
  for (const auto& entry : fs::directory_iterator(state_dir_)) {
    if (entry.path().extension() == ".log") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const fs::path& path : logs) {
    const std::string text = read_file(path);
    if (text.rfind(kDocumentHeader, 0) != 0) {
      throw std::runtime_error(path.string() + ": missing document header");
    }
    const std::size_t eol = text.find('\n');
    const std::string doc_id =
        text.substr(std::char_traits<char>::length(kDocumentHeader),
                    eol == std::string::npos ? std::string::npos
                                             : eol - std::char_traits<char>::length(kDocumentHeader));
    auto doc = documents_.find(doc_id);
    if (doc == documents_.end()) {
      throw std::runtime_error(path.string() + ": unknown document '" + doc_id + "'");
    }
    auto entry = std::make_shared<SessionEntry>();
    entry->id = path.stem().string();
    entry->document_id = doc_id;
    entry->log_path = path;
    entry->snapshot = std::make_shared<const Session>(replay_text(doc->second.document, text));
    std::size_t count = 0;
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      const std::string line = text.substr(start, end - start);
      if (parse_command(line)) {
        ++count;
        entry->last_line = line;
      }
      start = end + 1;
    }
    entry->revision = count;
    sessions_[entry->id] = entry;
    const std::string digits = entry->id.substr(entry->id.find('-') + 1);
    next_session_ = std::max(next_session_, static_cast<std::size_t>(std::stoul(digits)) + 1);
  }
}

std::shared_ptr<SessionService::SessionEntry> SessionService::find(const std::string& id) const {
  std::shared_lock lock(sessions_guard_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionService::session_count() const {
  std::shared_lock lock(sessions_guard_);
  return sessions_.size();
}

Reply SessionService::list_documents() const {
  json docs = json::array();
  for (const auto& [id, entry] : documents_) {
    docs.push_back({{"id", id},
                    {"sentences", entry.document.sentences().size()},
                    {"mentions", entry.document.mentions().size()}});
  }
  return {200, {{"documents", docs}}};
}

Reply SessionService::get_document(const std::string& id) const {
  auto it = documents_.find(id);
  if (it == documents_.end()) return error_reply(404, "unknown-document", "no document '" + id + "'");
  json body = to_json(it->second.document);
  if (it->second.imported) {
    const json imported = to_json(*it->second.imported);
    if (imported.contains("prepopulated")) body["prepopulated"] = imported["prepopulated"];
  }
  return {200, body};
}

Reply SessionService::ontology() const { return {200, ontology_json()}; }

Reply SessionService::create_session(const json& request) {
  if (!request.is_object() || !request.contains("document_id") || !request["document_id"].is_string()) {
    return error_reply(422, "malformed-request", "expected {\"document_id\": string}");
  }
  const std::string doc_id = request["document_id"];
  auto doc = documents_.find(doc_id);
  if (doc == documents_.end()) {
    return error_reply(404, "unknown-document", "no document '" + doc_id + "'");
  }
  auto entry = std::make_shared<SessionEntry>();
  entry->document_id = doc_id;
  entry->snapshot = std::make_shared<const Session>(doc->second.document);
  {
    std::unique_lock lock(sessions_guard_);
    entry->id = session_name(next_session_++);
    entry->log_path = state_dir_ / (entry->id + ".log");
    append_line(entry->log_path, kDocumentHeader + doc_id);
    sessions_[entry->id] = entry;
  }
  return {201, {{"session_id", entry->id}, {"document_id", doc_id}, {"revision", 0}}};
}

Reply SessionService::command(const std::string& session, const json& request) {
  auto entry = find(session);
  if (!entry) return error_reply(404, "unknown-session", "no session '" + session + "'");
  if (!request.is_object() || !request.contains("line") || !request["line"].is_string()) {
    return error_reply(422, "malformed-request", "expected {\"line\": string}");
  }
  const std::string line = request["line"];
  std::optional<std::size_t> expected;
  if (request.contains("expected_revision")) {
    const json& rev = request["expected_revision"];
    if (!rev.is_number_integer() || rev.get<long long>() < 0) {
      return error_reply(422, "malformed-request", "expected_revision must be a non-negative integer");
    }
    expected = request["expected_revision"].get<std::size_t>();
  }

  std::optional<Command> cmd;
  try {
    cmd = parse_command(line);
  } catch (const CommandSyntaxError& e) {
    return error_reply(422, "malformed-command", e.what());
  }
  if (!cmd) return error_reply(422, "malformed-command", "empty command");

  std::lock_guard writer(entry->writer);
  const auto [snapshot, revision] = entry->read();
  if (expected && *expected != revision) {
    // A retry of the command that produced the current revision.
    if (*expected + 1 == revision && entry->last_line == line) {
      return {200, {{"accepted", true}, {"revision", revision}, {"replayed", true},
                    {"diagnostics", json::array()}}};
    }
    return {409, {{"error", "revision-conflict"},
                  {"message", "expected revision " + std::to_string(*expected) + ", current is " +
                                  std::to_string(revision)},
                  {"revision", revision}}};
  }

  auto next = std::make_shared<Session>(*snapshot);
  IssueResult r = next->issue(*cmd);
  json body = {{"accepted", r.accepted},
               {"diagnostics", diagnostics_json(r.diagnostics)},
               {"output", r.output}};
  if (!r.accepted) {
    body["revision"] = revision;
    return {409, body};
  }
  std::size_t new_revision = revision;
  if (cmd->state_changing()) {
    append_line(entry->log_path, line);
    new_revision = revision + 1;
    std::lock_guard lock(entry->snapshot_guard);
    entry->snapshot = std::move(next);
    entry->revision = new_revision;
    entry->last_line = line;
  }
  body["revision"] = new_revision;
  return {200, body};
}

Reply SessionService::state(const std::string& session) const {
  auto entry = find(session);
  if (!entry) return error_reply(404, "unknown-session", "no session '" + session + "'");
  const auto [snap, revision] = entry->read();
  json body = snap->state_json();
  body["revision"] = revision;
  body["session_id"] = session;
  return {200, body};
}

Reply SessionService::peg(const std::string& session) const {
  auto entry = find(session);
  if (!entry) return error_reply(404, "unknown-session", "no session '" + session + "'");
  const auto [snap, revision] = entry->read();
  try {
    return {200, to_json(snap->draft())};
  } catch (const GraphError& e) {
    return error_reply(409, e.code(), e.what());
  }
}

Reply SessionService::autocomplete(const std::string& session, const std::string& prefix) const {
  auto entry = find(session);
  if (!entry) return error_reply(404, "unknown-session", "no session '" + session + "'");
  const auto [snap, revision] = entry->read();
  return {200, {{"prefix", prefix}, {"completions", snap->autocomplete(prefix)}, {"revision", revision}}};
}

Reply SessionService::lint(const std::string& session) const {
  auto entry = find(session);
  if (!entry) return error_reply(404, "unknown-session", "no session '" + session + "'");
  const auto [snap, revision] = entry->read();
  try {
    json body = to_json(peg::lint(snap->draft()));
    body["revision"] = revision;
    return {200, body};
  } catch (const GraphError& e) {
    return error_reply(409, e.code(), e.what());
  }
}

Reply SessionService::finalize(const std::string& session) {
  auto entry = find(session);
  if (!entry) return error_reply(404, "unknown-session", "no session '" + session + "'");
  const auto [snap, revision] = entry->read();
  try {
    FinalizedGraph f = snap->finalize();
    json body = {{"peg", to_json(f.graph)},
                 {"lint", to_json(f.lint)},
                 {"warnings", diagnostics_json(f.warnings)},
                 {"revision", revision}};
    write_file(state_dir_ / (session + ".peg.json"), save_peg(f.graph));
    return {200, body};
  } catch (const FinalizeError& e) {
    return {409, {{"error", "not-finalizable"},
                  {"message", e.what()},
                  {"diagnostics", diagnostics_json(e.diagnostics())},
                  {"revision", revision}}};
  }
}

}  // namespace peg

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

#ifndef PEG_SERVICE_HPP_
#define PEG_SERVICE_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "json.hpp"
#include "peg/brat.hpp"
#include "peg/simulator.hpp"

namespace peg {

// Transport-independent reply: HTTP status plus JSON body.
struct Reply {
  int status = 200;
  nlohmann::json body;
};

// Annotation sessions over a corpus directory. Every session is an
// append-only command log in `state_dir`; logs are replayed on start-up, so
// a restarted service resumes where it stopped.
//
// Commands are serialised per session. Readers take the current immutable
// snapshot and never wait for a command in progress.
class SessionService {
 public:
  // Loads documents from `corpus_dir` (*.json document/PEG files and BRAT
  // .txt/.ann pairs) and resumes sessions found in `state_dir`.
  SessionService(std::filesystem::path corpus_dir, std::filesystem::path state_dir);

  Reply list_documents() const;
  Reply get_document(const std::string& id) const;
  Reply ontology() const;

  Reply create_session(const nlohmann::json& request);
  // request: {"line": "...", "expected_revision": n (optional)}.
  Reply command(const std::string& session, const nlohmann::json& request);
  Reply state(const std::string& session) const;
  Reply peg(const std::string& session) const;
  Reply autocomplete(const std::string& session, const std::string& prefix) const;
  Reply lint(const std::string& session) const;
  Reply finalize(const std::string& session);

  std::size_t session_count() const;

 private:
  struct DocumentEntry {
    Document document;
    std::optional<ImportedDocument> imported;
  };

  struct SessionEntry {
    std::string id;
    std::string document_id;
    std::filesystem::path log_path;
    std::mutex writer;  // serialises commands
    mutable std::mutex snapshot_guard;
    std::shared_ptr<const Session> snapshot;
    std::size_t revision = 0;
    std::optional<std::string> last_line;

    std::pair<std::shared_ptr<const Session>, std::size_t> read() const;
  };

  std::shared_ptr<SessionEntry> find(const std::string& id) const;
  void load_corpus();
  void resume_sessions();

  std::filesystem::path corpus_dir_;
  std::filesystem::path state_dir_;
  std::map<std::string, DocumentEntry> documents_;

  mutable std::shared_mutex sessions_guard_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
  std::size_t next_session_ = 1;
};

}  // namespace peg

#endif  // PEG_SERVICE_HPP_

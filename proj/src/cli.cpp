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

#include "peg/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peg/brat.hpp"
#include "peg/corpus_io.hpp"
#include "peg/evaluation.hpp"
#include "peg/http_server.hpp"
#include "peg/lowering.hpp"
#include "peg/ontology.hpp"
#include "peg/simulator.hpp"
#include "peg/stats.hpp"
#include "peg/validator.hpp"

namespace peg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

std::string describe(const Diagnostic& d) {
  std::string where;
  if (d.locus.edge) {
    where = " [" + d.locus.edge->source + " " + std::string(to_string(d.locus.edge->role)) + " " +
            d.locus.edge->target + "]";
  } else if (d.locus.node) {
    where = " [" + *d.locus.node + "]";
  }
  if (d.locus.command) where += " (command " + std::to_string(*d.locus.command) + ")";
  return std::string(to_string(d.severity)) + " " + d.code + where + ": " + d.message;
}

json diagnostics_json(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const Diagnostic& d : diags) out.push_back(to_json(d));
  return out;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool json_output = false;

  int fail(int code, const std::string& tag, const std::string& message) const {
    if (json_output) {
      err << json{{"error", tag}, {"message", message}}.dump() << "\n";
    } else {
      err << "pegtool: " << message << "\n";
    }
    return code;
  }
};

// Runs `body`, mapping input errors onto exit code 2.
template <typename F>
int guarded(const Context& ctx, F body) {
  try {
    return body();
  } catch (const FormatError& e) {
    return ctx.fail(kBadInput, e.code(), e.what());
  } catch (const GraphError& e) {
    return ctx.fail(kBadInput, e.code(), e.what());
  } catch (const BratError& e) {
    return ctx.fail(kBadInput, e.code(), e.what());
  } catch (const ReplayError& e) {
    std::string message = "replay failed at line " + std::to_string(e.line()) + ": " + e.what();
    for (const Diagnostic& d : e.diagnostics()) message += "\n  " + describe(d);
    return ctx.fail(kBadInput, "replay", message);
  } catch (const std::exception& e) {
    return ctx.fail(kBadInput, "error", e.what());
  }
}

int cmd_validate(const Context& ctx, const std::string& path) {
  return guarded(ctx, [&] {
    const PegGraph g = load_peg_file(path);
    const auto diags = validate(g);
    const bool ok = !has_errors(diags);
    if (ctx.json_output) {
      ctx.out << json{{"valid", ok}, {"diagnostics", diagnostics_json(diags)}}.dump(2) << "\n";
    } else {
      for (const Diagnostic& d : diags) ctx.out << describe(d) << "\n";
      ctx.out << (ok ? "valid" : "invalid") << "\n";
    }
    return ok ? kOk : kCheckFailed;
  });
}

int cmd_lint(const Context& ctx, const std::string& path) {
  return guarded(ctx, [&] {
    const LintReport r = lint(load_peg_file(path));
    if (ctx.json_output) {
      ctx.out << to_json(r).dump(2) << "\n";
    } else {
      ctx.out << "components: " << r.component_count << "\n";
      ctx.out << "isolated mentions: " << r.isolated_mentions.size();
      for (const auto& m : r.isolated_mentions) ctx.out << " " << m;
      ctx.out << "\nscore: " << r.score << "\n";
    }
    return kOk;
  });
}

struct ScoreArgs {
  std::string gold;
  std::string pred;
  bool decompose = false;
  bool relations = false;
  std::uint32_t seed = 0;
  int restarts = 4;
};

int cmd_score(const Context& ctx, const ScoreArgs& a) {
  return guarded(ctx, [&] {
    const PegGraph gold = load_peg_file(a.gold);
    const PegGraph pred = load_peg_file(a.pred);
    SmatchOptions opts;
    opts.seed = a.seed;
    opts.restarts = a.restarts;
    json report;
    std::string text;
    if (a.decompose) {
      const DecompositionReport d = decompose(gold, pred, opts);
      report["decomposition"] = to_json(d);
      report["smatch"] = to_json(d.smatch);
      text += format_table(d);
    } else {
      const SmatchResult s = smatch(gold, pred, opts);
      report["smatch"] = to_json(s.score);
      char buf[128];
      std::snprintf(buf, sizeof(buf), "Smatch P=%.4f R=%.4f F1=%.4f\n", s.score.precision,
                    s.score.recall, s.score.f1);
      text += buf;
    }
    if (a.relations) {
      const RelationReport r = relation_prf(gold, pred);
      report["relations"] = to_json(r);
      text += "\n" + format_table(r);
    }
    report["options"] = {{"seed", a.seed}, {"restarts", a.restarts}};
    if (ctx.json_output) {
      ctx.out << report.dump(2) << "\n";
    } else {
      ctx.out << text;
    }
    return kOk;
  });
}

void print_issue(const Context& ctx, const IssueResult& r) {
  for (const Diagnostic& d : r.diagnostics) ctx.out << "  " << describe(d) << "\n";
  if (!r.output.empty()) ctx.out << r.output << (r.output.back() == '\n' ? "" : "\n");
  if (!r.accepted) ctx.out << "  (rejected)\n";
}

int write_finalized(const Context& ctx, const Session& s, const std::string& out_path) {
  try {
    const FinalizedGraph f = s.finalize();
    write_file(out_path, save_peg(f.graph));
    if (ctx.json_output) {
      ctx.out << json{{"output", out_path},
                      {"lint", to_json(f.lint)},
                      {"warnings", diagnostics_json(f.warnings)},
                      {"commands", s.command_log().size()}}
                     .dump(2)
              << "\n";
    } else {
      for (const Diagnostic& d : f.warnings) ctx.out << describe(d) << "\n";
      ctx.out << "wrote " << out_path << " (" << f.graph.nodes().size() << " nodes, "
              << f.graph.edges().size() << " edges, lint score " << f.lint.score << ")\n";
    }
    return kOk;
  } catch (const FinalizeError& e) {
    std::string message = e.what();
    for (const Diagnostic& d : e.diagnostics()) message += "\n  " + describe(d);
    return ctx.fail(kCheckFailed, "not-finalizable", message);
  }
}

int cmd_simulate(const Context& ctx, const std::string& doc_path, const std::string& script,
                 const std::string& out_path) {
  return guarded(ctx, [&] {
    const Document doc = load_document_file(doc_path);
    if (!script.empty()) {
      const Session s = replay_text(doc, read_file(script));
      return write_finalized(ctx, s, out_path);
    }
    Session s(doc);
    ctx.out << "document " << doc.id() << ": " << doc.mentions().size()
            << " mentions. Type commands; `quit` or end of input finalizes.\n";
    std::string line;
    while (ctx.out << "> " << std::flush, std::getline(ctx.in, line)) {
      if (line == "quit" || line == "exit") break;
      if (line.rfind("complete ", 0) == 0) {
        for (const auto& c : s.autocomplete(line.substr(9))) ctx.out << "  " << c << "\n";
        continue;
      }
      try {
        print_issue(ctx, s.issue_line(line));
      } catch (const CommandSyntaxError& e) {
        ctx.out << "  syntax error: " << e.what() << "\n";
      }
    }
    ctx.out << "\n";
    return write_finalized(ctx, s, out_path);
  });
}

int cmd_lower(const Context& ctx, const std::string& path, const std::string& out_path, bool strict) {
  return guarded(ctx, [&] {
    const PegGraph g = load_peg_file(path);
    Program p;
    try {
      p = lower(g);
    } catch (const LoweringError& e) {
      std::string message = e.what();
      return ctx.fail(kCheckFailed, "validation-errors", message);
    }
    const std::string bytes = emit_json(p);
    if (out_path.empty() || out_path == "-") {
      ctx.out << bytes;
    } else {
      write_file(out_path, bytes);
      if (ctx.json_output) {
        ctx.out << json{{"output", out_path},
                        {"instructions", p.instructions.size()},
                        {"holes", to_json(p)["holes"]}}
                       .dump(2)
                << "\n";
      } else {
        ctx.out << "wrote " << out_path << " (" << p.instructions.size() << " instructions, "
                << p.holes.size() << " holes)\n";
        for (const Hole& h : p.holes) {
          ctx.out << "  hole " << to_string(h.reason) << ": instruction " << h.instruction << " "
                  << h.parameter << (h.hint ? " (\"" + *h.hint + "\")" : std::string()) << "\n";
        }
      }
    }
    if (strict && !p.holes.empty()) {
      return ctx.fail(kCheckFailed, "holes", std::to_string(p.holes.size()) + " unfilled holes");
    }
    return kOk;
  });
}

int cmd_stats(const Context& ctx, const std::string& dir) {
  return guarded(ctx, [&] {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.size() > 9 && name.ends_with(".peg.json")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) return ctx.fail(kBadInput, "empty-corpus", "no *.peg.json files in " + dir);
    std::vector<PegGraph> graphs;
    for (const auto& f : files) graphs.push_back(load_peg_file(f));
    const CorpusStats s = corpus_stats(graphs);
    if (ctx.json_output) {
      ctx.out << to_json(s).dump(2) << "\n";
    } else {
      ctx.out << format_tables(s);
    }
    return kOk;
  });
}

int cmd_import_brat(const Context& ctx, const std::string& dir, const std::string& out_dir) {
  return guarded(ctx, [&] {
    const auto docs = import_brat(dir);
    fs::create_directories(out_dir);
    json summary = json::array();
    for (const ImportedDocument& d : docs) {
      const fs::path out = fs::path(out_dir) / (d.document.id() + ".doc.json");
      write_file(out, canonical_dump(to_json(d)));
      for (const auto& w : d.warnings) {
        if (!ctx.json_output) ctx.err << d.document.id() << ": " << w << "\n";
      }
      summary.push_back({{"document", d.document.id()},
                         {"output", out.string()},
                         {"mentions", d.document.mentions().size()},
                         {"prepopulated_edges", d.edges.size()},
                         {"legacy_relations", d.legacy.size()},
                         {"warnings", d.warnings}});
    }
    if (ctx.json_output) {
      ctx.out << summary.dump(2) << "\n";
    } else {
      ctx.out << "imported " << docs.size() << " documents into " << out_dir << "\n";
    }
    return kOk;
  });
}

int cmd_serve(const Context& ctx, const std::string& host, int port, std::string corpus,
              std::string state_dir) {
  if (corpus.empty()) {
    if (const char* env = std::getenv("PEG_CORPUS_DIR")) corpus = env;
  }
  if (corpus.empty()) return ctx.fail(kBadInput, "usage", "serve needs --corpus or PEG_CORPUS_DIR");
  if (state_dir.empty()) state_dir = (fs::path(corpus) / ".sessions").string();
  return guarded(ctx, [&] {
    SessionService service(corpus, state_dir);
    httplib::Server server;
    register_routes(server, service);
    ctx.out << "serving " << corpus << " on http://" << host << ":" << port << "\n" << std::flush;
    if (!server.listen(host, port)) {
      return ctx.fail(kBadInput, "listen", "cannot listen on " + host + ":" + std::to_string(port));
    }
    return kOk;
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Process execution graph toolkit", "pegtool"};
  app.require_subcommand(1);
  Context ctx{in, out, err};
  app.add_flag("--json", ctx.json_output, "Machine-readable output");

  std::string peg_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a PEG file against the ontology");
  validate_cmd->add_option("peg", peg_path, "PEG file")->required();

  auto* lint_cmd = app.add_subcommand("lint", "Connected-components report of a PEG file");
  lint_cmd->add_option("peg", peg_path, "PEG file")->required();

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Smatch of a predicted PEG against a gold PEG");
  score_cmd->add_option("--gold", score.gold, "Gold PEG file")->required();
  score_cmd->add_option("--pred", score.pred, "Predicted PEG file")->required();
  score_cmd->add_flag("--decompose", score.decompose, "Fine-grained Smatch decomposition");
  score_cmd->add_flag("--relations", score.relations, "Span-exact per-relation scores");
  score_cmd->add_option("--seed", score.seed, "Hill-climbing seed");
  score_cmd->add_option("--restarts", score.restarts, "Hill-climbing restarts")->check(CLI::PositiveNumber);

  std::string doc_path, script, out_path = "out.peg.json";
  auto* simulate_cmd = app.add_subcommand("simulate", "Run an annotation session");
  simulate_cmd->add_option("document", doc_path, "Document file")->required();
  simulate_cmd->add_option("--script", script, "Command log to replay (REPL when absent)");
  simulate_cmd->add_option("-o,--output", out_path, "Where to write the finalized PEG");

  std::string program_path;
  bool strict = false;
  auto* lower_cmd = app.add_subcommand("lower", "Lower a PEG to an instruction program");
  lower_cmd->add_option("peg", peg_path, "PEG file")->required();
  lower_cmd->add_option("-o,--output", program_path, "Program file (stdout when absent)");
  lower_cmd->add_flag("--strict", strict, "Fail when the program has holes");

  std::string dir;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics over *.peg.json files");
  stats_cmd->add_option("dir", dir, "Corpus directory")->required();

  std::string import_out;
  auto* import_cmd = app.add_subcommand("import-brat", "Import WLP BRAT annotations");
  import_cmd->add_option("dir", dir, "Directory of .txt/.ann pairs")->required();
  import_cmd->add_option("-o,--output", import_out, "Output directory")->required();

  int port = 8080;
  std::string host = "127.0.0.1", corpus, state_dir;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP session service");
  serve_cmd->add_option("--port", port, "Port");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--corpus", corpus, "Corpus directory (default: $PEG_CORPUS_DIR)");
  serve_cmd->add_option("--state-dir", state_dir, "Session log directory (default: <corpus>/.sessions)");

  auto* ontology_cmd = app.add_subcommand("export-ontology", "Print the ontology as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  if (*validate_cmd) return cmd_validate(ctx, peg_path);
  if (*lint_cmd) return cmd_lint(ctx, peg_path);
  if (*score_cmd) return cmd_score(ctx, score);
  if (*simulate_cmd) return cmd_simulate(ctx, doc_path, script, out_path);
  if (*lower_cmd) return cmd_lower(ctx, peg_path, program_path, strict);
  if (*stats_cmd) return cmd_stats(ctx, dir);
  if (*import_cmd) return cmd_import_brat(ctx, dir, import_out);
  if (*serve_cmd) return cmd_serve(ctx, host, port, corpus, state_dir);
  if (*ontology_cmd) {
    out << ontology_json().dump(2) << "\n";
    return kOk;
  }
  return kBadInput;
}

}  // namespace peg

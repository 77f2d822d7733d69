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

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracle/smatch_oracle.hpp"
#include "peg/brat.hpp"
#include "peg/corpus_io.hpp"
#include "peg/evaluation.hpp"
#include "peg/lowering.hpp"
#include "peg/simulator.hpp"
#include "peg/stats.hpp"
#include "peg/validator.hpp"
#include "support/generators.hpp"

namespace {

using nlohmann::json;
using testing_support::fixture;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= budget_s) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  char timing[64];
  std::snprintf(timing, sizeof(timing), "%.3fs / %.0fs", secs, budget_s);
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << timing << ")"
            << (o.detail.empty() ? "" : "  " + o.detail) << std::endl;
  if (!o.pass) ++failures;
}

json fixture_json(const std::string& name) { return json::parse(peg::read_file(fixture(name))); }

void drop_edges(json& peg, const std::function<bool(const json&)>& pred) {
  auto& edges = peg["edges"];
  edges.erase(std::remove_if(edges.begin(), edges.end(), pred), edges.end());
}

std::vector<std::string> codes(const std::vector<peg::Diagnostic>& diags) {
  std::vector<std::string> out;
  for (const auto& d : diags) out.push_back(d.code);
  return out;
}

Outcome fixture_fidelity() {
  Outcome o;
  for (const char* name : {"fig1.peg.json", "fig3.peg.json"}) {
    const auto errors = peg::errors_only(peg::validate(peg::load_peg_file(fixture(name))));
    o.check(errors.empty(), std::string(name) + " has validation errors");
  }
  {
    json g = fixture_json("fig1.peg.json");
    drop_edges(g, [](const json& e) { return e["source"] == "n-T4" && e["role"] == "ARG0"; });
    const auto errors = peg::errors_only(peg::validate(peg::graph_from_json(g)));
    o.check(codes(errors) == std::vector<std::string>{"missing-required-role"} &&
                errors[0].locus.node == "n-T4",
            "dropping swirl ARG0 did not yield exactly missing-required-role on n-T4");
  }
  {
    json g = fixture_json("fig3.peg.json");
    drop_edges(g, [](const json& e) { return e["source"] == "n-T8" && e["role"] == "site"; });
    const auto errors = peg::errors_only(peg::validate(peg::graph_from_json(g)));
    o.check(codes(errors) == std::vector<std::string>{"missing-required-role"} &&
                errors[0].locus.node == "n-T8",
            "dropping a transfer site did not yield exactly missing-required-role on n-T8");
  }
  {
    json g = fixture_json("fig1.peg.json");
    g["edges"].push_back({{"source", "n-T4"}, {"role", "succ"}, {"target", "n-T1"}});
    std::string code;
    try {
      peg::graph_from_json(g);
    } catch (const peg::FormatError& e) {
      code = e.code();
    }
    o.check(code == "succ-cycle", "succ 2-cycle reported as '" + code + "'");
  }
  return o;
}

Outcome simulator_round_trip() {
  Outcome o;
  for (const char* name : {"fig1", "fig3"}) {
    const std::string base = fixture(name);
    const peg::Document doc = peg::load_document_file(base + ".doc.json");
    const std::string log = peg::read_file(base + ".log");
    const peg::Session replayed = peg::replay_text(doc, log);

    peg::Session interactive(doc);
    std::istringstream in(log);
    std::string line;
    while (std::getline(in, line)) interactive.issue_line(line);

    const peg::PegGraph gold = peg::load_peg_file(base + ".peg.json");
    const peg::PegGraph got = replayed.finalize().graph;
    const double f1 = peg::smatch(gold, got).score.f1;
    o.check(f1 == 1.0, std::string(name) + " Smatch F1 = " + std::to_string(f1));
    o.check(replayed.to_json().dump() == interactive.to_json().dump(),
            std::string(name) + " replay differs from interactive issuance");
    o.check(peg::save_peg(got) == peg::save_peg(interactive.finalize().graph),
            std::string(name) + " finalized bytes differ");
  }
  return o;
}

Outcome smatch_oracle() {
  Outcome o;
  peg::SmatchOptions opts;
  opts.seed = 0;
  opts.restarts = 4;
  std::mt19937 rng(0);
  std::size_t pairs = 0;
  auto compare = [&](const peg::PegGraph& g, const peg::PegGraph& p, const std::string& label) {
    const auto want = oracle::smatch(peg::to_json(g), peg::to_json(p));
    const auto got = peg::smatch(g, p, opts).score;
    ++pairs;
    o.check(got.f1 == want.f1, label + ": hill-climbing " + std::to_string(got.f1) + " vs oracle " +
                                   std::to_string(want.f1));
  };
  for (const char* name : {"fig1.peg.json", "fig3.peg.json"}) {
    const peg::PegGraph g = peg::load_peg_file(fixture(name));
    compare(g, g, name);
    for (int k = 0; k < 5; ++k) compare(g, testing_support::perturb(rng, g), std::string(name) + " perturbed");
  }
  for (int i = 0; i < 200; ++i) {
    const peg::PegGraph g = testing_support::random_graph(rng, 8);
    compare(g, testing_support::perturb(rng, g), "random pair " + std::to_string(i));
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs equal";
  return o;
}

Outcome decomposition_sanity() {
  Outcome o;
  for (const char* name : {"fig1.peg.json", "fig3.peg.json"}) {
    const peg::PegGraph g = peg::load_peg_file(fixture(name));
    const peg::DecompositionReport r = peg::decompose(g, g);
    for (const peg::Prf& p : {r.smatch, r.argument_identification, r.predicate_identification, r.core_roles,
                              r.reentrancies}) {
      o.check(p.f1 == 1.0, std::string(name) + " identical pair metric below 1.0");
    }
  }
  const json gold = fixture_json("fig3.peg.json");
  json pred = gold;
  const auto reentrant = peg::reentrant_nodes(peg::graph_from_json(gold));
  drop_edges(pred, [&](const json& e) {
    const std::string role = e["role"];
    return peg::is_reentrancy_role(*peg::parse_role(role)) && reentrant.count(e["target"].get<std::string>());
  });
  const peg::DecompositionReport r = peg::decompose(peg::graph_from_json(gold), peg::graph_from_json(pred));
  const double reent_drop = 1.0 - r.reentrancies.f1;
  const double pred_drop = 1.0 - r.predicate_identification.f1;
  o.check(reent_drop > pred_drop, "reentrancy drop " + std::to_string(reent_drop) +
                                      " not above predicate-identification drop " + std::to_string(pred_drop));
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "reentrancy F1 %.3f < predicate F1 %.3f", r.reentrancies.f1,
                  r.predicate_identification.f1);
    o.detail = buf;
  }
  return o;
}

Outcome validator_guarantee() {
  Outcome o;
  std::mt19937 rng(0);
  int finalized = 0;
  for (int i = 0; i < 1000; ++i) {
    const peg::Session s = testing_support::random_session(rng, 4 + i % 9, "s" + std::to_string(i));
    peg::FinalizedGraph f;
    try {
      f = s.finalize();
    } catch (const peg::FinalizeError&) {
      continue;
    }
    ++finalized;
    o.check(!peg::has_errors(peg::validate(f.graph)), "session " + std::to_string(i) + " finalized with errors");
    o.check(peg::semantic_underspecified_ops(f.graph).empty(),
            "session " + std::to_string(i) + " has under-specified operations");
  }
  o.check(finalized >= 900, "only " + std::to_string(finalized) + " of 1000 sessions finalized");
  if (o.pass) o.detail = std::to_string(finalized) + "/1000 sessions finalized, all valid";
  return o;
}

Outcome lowering() {
  Outcome o;
  const peg::PegGraph g = peg::load_peg_file(fixture("fig1.peg.json"));
  const peg::Program p = peg::lower(g);
  o.check(p.instructions.size() == 3, "expected 3 instructions");
  if (p.instructions.size() == 3) {
    o.check(p.instructions[0].node == "n-T1" && p.instructions[1].node == "n-T4" &&
                p.instructions[2].node == "n-T6",
            "instructions not in succ order");
  }
  std::size_t vague = 0, missing = 0;
  for (const peg::Hole& h : p.holes) {
    if (h.reason == peg::HoleReason::kVagueModifier) {
      ++vague;
      o.check(h.hint == "gently", "vague-modifier hole is not 'gently'");
    } else {
      ++missing;
      o.check(h.parameter == "temperature" && h.node == "n-T6", "missing-setting hole is not incubation temperature");
    }
  }
  o.check(vague == 1 && missing == 1, "expected one hole of each kind");
  o.check(peg::emit_json(p) == peg::emit_json(peg::lower(g)), "emit_json not byte-stable");
  o.check(peg::emit_json(p) == peg::read_file(fixture("fig1.program.json")), "differs from golden program");
  return o;
}

bool within(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

Outcome stats() {
  Outcome o;
  if (const char* dir = std::getenv("PEG_XWLP_DIR")) {
    std::vector<peg::PegGraph> graphs;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
      const std::string n = e.path().filename().string();
      if (n.size() > 9 && n.ends_with(".peg.json")) graphs.push_back(peg::load_peg_file(e.path()));
    }
    const peg::CorpusStats s = peg::corpus_stats(graphs);
    const double reent = static_cast<double>(s.core.reentrancy + s.per_role.at(peg::Role::kSite).reentrancy);
    o.check(within(s.grand_total.total, 20013, 0.01), "grand total " + std::to_string(s.grand_total.total));
    o.check(within(s.grand_total.intra, 15940, 0.01), "intra " + std::to_string(s.grand_total.intra));
    o.check(within(s.grand_total.inter, 4073, 0.01), "inter " + std::to_string(s.grand_total.inter));
    o.check(within(reent, 2085, 0.01), "reentrancies " + std::to_string(reent));
    o.check(within(s.avg_args_per_op, 3.01, 0.01), "avg args/op " + std::to_string(s.avg_args_per_op));
    if (o.pass) o.detail = "X-WLP corpus at " + std::string(dir);
    return o;
  }
  for (const char* name : {"fig1", "fig3"}) {
    const std::vector<peg::PegGraph> graphs = {peg::load_peg_file(fixture(std::string(name) + ".peg.json"))};
    const json got = peg::to_json(peg::corpus_stats(graphs));
    const json want = json::parse(peg::read_file(fixture(std::string(name) + ".stats.json")));
    std::function<void(const json&, const json&, const std::string&)> walk =
        [&](const json& w, const json& g, const std::string& path) {
          if (w.is_object()) {
            for (const auto& [k, v] : w.items()) {
              if (!g.contains(k)) {
                o.check(false, path + "." + k + " missing");
                continue;
              }
              walk(v, g[k], path + "." + k);
            }
          } else {
            o.check(w == g, path + ": " + g.dump() + " != hand tally " + w.dump());
          }
        };
    walk(want, got, name);
  }
  if (o.pass) o.detail = "corpus not available (PEG_XWLP_DIR unset); fixture hand tallies match";
  return o;
}

Outcome brat_import() {
  Outcome o;
  const auto docs = peg::import_brat(fixture("brat"));
  o.check(docs.size() == 1, "expected one document");
  if (docs.size() != 1) return o;
  const peg::ImportedDocument& d = docs[0];
  const peg::Document gold = peg::load_document_file(fixture("fig1.doc.json"));
  o.check(d.document.mentions() == gold.mentions(), "mentions differ from the Figure 1 document");
  o.check(d.legacy.size() == 1 && d.legacy[0].label == "Count", "legacy relations not preserved");
  o.check(d.edges.size() == 4, "expected 4 pre-populated edges");
  std::string ann = peg::read_file(fixture("brat/fig1.ann"));
  ann.replace(ann.find("13 26"), 5, "13 27");
  try {
    peg::import_brat_pair("fig1", peg::read_file(fixture("brat/fig1.txt")), ann, peg::LabelMap::builtin(),
                          "fig1.ann");
    o.check(false, "corrupted offsets accepted");
  } catch (const peg::BratError& e) {
    o.check(e.code() == "offset-mismatch" && e.line() == 3, std::string("unexpected error: ") + e.what());
  }
  return o;
}

}  // namespace

int main() {
  criterion("Fixture fidelity", 1, fixture_fidelity);
  criterion("Simulator round-trip", 1, simulator_round_trip);
  criterion("Smatch oracle equivalence", 60, smatch_oracle);
  criterion("Decomposition sanity", 60, decomposition_sanity);
  criterion("Validator guarantee", 300, validator_guarantee);
  criterion("Lowering", 60, lowering);
  criterion("Stats", 60, stats);
  criterion("BRAT import", 60, brat_import);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}

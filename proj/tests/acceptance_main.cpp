// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 2's ortholatin n=6 UNSAT check is guarded: it runs only
// when an external solver is configured (COMBENCH_SOLVER), since it takes
// minutes; everything else uses the embedded engine.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "combench/certify.hpp"
#include "combench/generate.hpp"
#include "combench/harness.hpp"
#include "combench/metrics.hpp"
#include "combench/parse.hpp"
#include "combench/sandbox.hpp"
#include "combench/verify.hpp"
#include "equivalence_suite.hpp"
#include "golden_traces.hpp"
#include "parse_corpus.hpp"

using namespace combench;
using namespace combench::testing;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, const std::vector<std::string>& errors) {
  if (errors.empty()) {
    std::printf("PASS criterion %d: %s\n", criterion, what.c_str());
  } else {
    ++failures;
    std::printf("FAIL criterion %d: %s\n", criterion, what.c_str());
    for (const auto& e : errors) std::printf("       - %s\n", e.c_str());
  }
}

Polarity certify(const std::string& family, const Params& p, double budget = 300.0) {
  auto handle = SolverHandle::embedded(budget);
  return certify_polarity(registry_lookup(family), p, {}, handle, budget).polarity;
}

// --- criterion 1: family oracle equivalence -----------------------------------

void criterion1() {
  std::vector<std::string> errors;
  for (const auto& pt : equivalence_points())
    for (const auto& e : run_equivalence_point(pt)) errors.push_back(e);
  report(1, "family oracle equivalence (brute force vs CNF pipeline)", errors);
}

// --- criterion 2: golden combinatorial facts -----------------------------------

void criterion2() {
  std::vector<std::string> errors;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) errors.push_back(what);
  };
  for (int n = 2; n <= 8; ++n) {
    bool want_sat = n % 4 == 0 || n % 4 == 3;
    expect(certify("langford", {{"n", n}}) == (want_sat ? Polarity::Sat : Polarity::Unsat),
           "langford n=" + std::to_string(n));
  }
  expect(certify("van_der_waerden", {{"n", 8}, {"k", 2}, {"L", 3}}) == Polarity::Sat,
         "van der Waerden (2,3) n=8 should be SAT");
  expect(certify("van_der_waerden", {{"n", 9}, {"k", 2}, {"L", 3}}) == Polarity::Unsat,
         "van der Waerden (2,3) must flip to UNSAT at n=9");
  expect(certify("ramsey", {{"n", 5}, {"r", 3}, {"s", 3}}) == Polarity::Sat,
         "ramsey (3,3) n=5 should be SAT");
  expect(certify("ramsey", {{"n", 6}, {"r", 3}, {"s", 3}}) == Polarity::Unsat,
         "ramsey (3,3) must flip to UNSAT at n=6");
  for (int n : {2, 3})
    expect(certify("queens", {{"n", n}}) == Polarity::Unsat,
           "queens n=" + std::to_string(n) + " should be UNSAT");
  for (int n = 4; n <= 10; ++n)
    expect(certify("queens", {{"n", n}}) == Polarity::Sat,
           "queens n=" + std::to_string(n) + " should be SAT");
  expect(check_witness(registry_lookup("magic_sequence"), {{"n", 4}}, {}, {2, 0, 2, 0}).ok,
         "magic_sequence n=4 must admit [2,0,2,0]");
  expect(check_witness(registry_lookup("costas_array"), {{"n", 10}}, {},
                       {0, 1, 3, 7, 4, 9, 8, 6, 2, 5})
             .ok,
         "costas n=10 must accept the stored witness");
  expect(check_witness(registry_lookup("all_interval"), {{"n", 11}}, {},
                       {0, 10, 1, 9, 2, 8, 3, 7, 4, 6, 5})
             .ok,
         "all_interval n=11 must accept the stored witness");

  const char* ext = std::getenv("COMBENCH_SOLVER");
  if (ext && *ext) {
    auto handle = SolverHandle::external(ext, 1800.0);
    auto outcome = certify_polarity(registry_lookup("ortholatin"), {{"n", 6}}, {}, handle, 1800.0);
    expect(outcome.polarity == Polarity::Unsat, "ortholatin n=6 should be UNSAT (external solver)");
  } else {
    std::printf("  note: ortholatin n=6 UNSAT skipped (set COMBENCH_SOLVER to run it)\n");
  }
  report(2, "golden combinatorial facts (exact, tolerance zero)", errors);
}

// --- criterion 3: verifier contract replication ---------------------------------

void criterion3() {
  std::vector<std::string> errors;
  auto handle = SolverHandle::embedded(60.0);
  for (const auto& t : golden_traces()) {
    Verdict v = verify(t.instance, t.submission, handle);
    std::ostringstream why;
    if (v.correct != t.correct || v.satisfiability_correct != t.satisfiability_correct ||
        v.solution_correct != t.solution_correct || v.failure_bucket != t.bucket ||
        v.validation_details != t.validation_details) {
      why << t.name << ": got " << v.to_json().dump();
      errors.push_back(why.str());
    }
  }
  report(3, "stored traces replay to their recorded verdicts and buckets", errors);
}

// --- criterion 4: parser cascade -------------------------------------------------

void criterion4() {
  std::vector<std::string> errors;
  auto corpus = parse_corpus();
  if (corpus.size() != 30) errors.push_back("corpus must have 30 cases");
  for (const auto& c : corpus) {
    auto out = parse_response(c.text);
    if (c.expect_stage == 0) {
      if (out.ok) errors.push_back(c.name + ": expected ParseFailure");
      continue;
    }
    if (!out.ok) {
      errors.push_back(c.name + ": expected stage " + std::to_string(c.expect_stage));
      continue;
    }
    if (out.stage != c.expect_stage)
      errors.push_back(c.name + ": wrong stage " + std::to_string(out.stage));
    if (out.submission.satisfiable != *c.expect_sat) errors.push_back(c.name + ": wrong claim");
    if (c.expect_solution.has_value() != out.submission.solution.has_value() ||
        (c.expect_solution && *c.expect_solution != *out.submission.solution))
      errors.push_back(c.name + ": wrong solution");
  }
  report(4, "30-case parser cascade corpus, zero deviations", errors);
}

// --- criterion 5: metric identities ----------------------------------------------

EvalItem synth_item(bool sat, bool correct, bool polarity_ok, int rounds, bool forced) {
  EvalItem i;
  i.id = "s";
  i.family = "queens";
  i.backend_class = "pycsp";
  i.sat = sat;
  i.verdict.ground_truth_satisfiable = sat;
  i.verdict.correct = correct;
  i.verdict.satisfiability_correct = polarity_ok;
  i.verdict.solution_correct = correct;
  i.verdict.failure_bucket = correct ? FailureBucket::None
                                     : (polarity_ok ? FailureBucket::WrongSolution
                                                    : FailureBucket::WrongPolarity);
  i.rounds = rounds;
  i.forced = forced;
  i.explicit_submission = !forced;
  return i;
}

void criterion5() {
  std::vector<std::string> errors;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) errors.push_back(what);
  };
  {
    // sim@k monotone with sim@budget = accuracy; accuracy <= sat_acc;
    // bucket counts partition |D|
    EvalRun run;
    run.condition = "tools";
    run.budget = 8;
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      bool sat = rng.below(2);
      bool pol = rng.below(2);
      bool ok = pol && rng.below(2);
      run.items.push_back(
          synth_item(sat, ok, pol, 1 + static_cast<int>(rng.below(8)), rng.below(5) == 0));
    }
    double prev = -1;
    for (int k = 1; k <= 8; ++k) {
      double s = sim_at_k(run, k);
      expect(s >= prev, "sim@k must be monotone");
      prev = s;
    }
    expect(std::abs(sim_at_k(run, 8) - accuracy(run)) < 1e-12, "sim@budget must equal accuracy");
    expect(accuracy(run) <= sat_acc(run) + 1e-12, "accuracy must not exceed sat_acc");
    size_t total = 0;
    for (const auto& [b, c] : bucket_counts(run)) total += c;
    expect(total == run.items.size(), "failure buckets must partition the run");
  }
  {
    // always-UNSAT accuracy equals the UNSAT fraction exactly
    EvalRun run;
    run.condition = "no_tools";
    for (int i = 0; i < 7; ++i) run.items.push_back(synth_item(true, false, false, 1, false));
    for (int i = 0; i < 3; ++i) run.items.push_back(synth_item(false, true, true, 1, false));
    expect(accuracy(run) == 0.30, "always-UNSAT accuracy must equal the UNSAT fraction");
  }
  {
    // rescue-rate zero-denominator convention
    EvalRun run;
    run.condition = "tools";
    run.items.push_back(synth_item(true, true, true, 1, false));
    expect(rescue_rate(run) == 0.0, "rescue rate must be 0 with no forced submissions");
  }
  {
    // published arithmetic: 220/329 = 66.9%, 62.9 - 8.5 = 54.4 pp, 67/88 = 76.1%
    EvalRun a;
    for (int i = 0; i < 220; ++i) a.items.push_back(synth_item(true, true, true, 1, false));
    for (int i = 0; i < 109; ++i) a.items.push_back(synth_item(true, false, false, 1, false));
    expect(format_pct(accuracy(a)) == "66.9", "220/329 must format to 66.9");
    EvalRun b;
    for (int i = 0; i < 28; ++i) b.items.push_back(synth_item(true, true, true, 1, false));
    for (int i = 0; i < 179; ++i) b.items.push_back(synth_item(true, false, true, 1, false));
    for (int i = 0; i < 122; ++i) b.items.push_back(synth_item(true, false, false, 1, false));
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", witness_gap_pp(b));
    expect(format_pct(sat_acc(b)) == "62.9" && format_pct(accuracy(b)) == "8.5" &&
               std::strcmp(buf, "54.4") == 0,
           "witness gap arithmetic must reproduce 62.9 - 8.5 = 54.4 pp");
    EvalRun c;
    c.condition = "tools";
    for (int i = 0; i < 67; ++i) c.items.push_back(synth_item(true, true, true, 8, true));
    for (int i = 0; i < 21; ++i) c.items.push_back(synth_item(true, false, false, 8, true));
    for (int i = 0; i < 241; ++i) c.items.push_back(synth_item(true, true, true, 2, false));
    expect(format_pct(rescue_rate(c)) == "76.1", "67/88 forced must format to 76.1");
  }
  report(5, "metric identities and published arithmetic on synthetic runs", errors);
}

// --- criterion 6: generation determinism and the difficulty dial ------------------

Profile easy_profile() {
  Profile p;
  p.seed = 2024;
  p.solver_budget_s = 300.0;
  auto add = [&](const std::string& fam, std::map<std::string, ParamDomain> params, int count) {
    FamilyProfile fp;
    fp.family = fam;
    fp.count = count;
    fp.params = std::move(params);
    p.families.push_back(fp);
  };
  add("queens", {{"n", ParamDomain{{4, 5, 6}}}}, 3);
  add("langford", {{"n", ParamDomain{{3, 4}}}}, 2);
  add("all_interval", {{"n", ParamDomain{{5, 6}}}}, 2);
  add("magic_sequence", {{"n", ParamDomain{{4, 5}}}}, 2);
  add("pysms_min_girth", {{"v", ParamDomain{{6}}}, {"min_girth", ParamDomain{{4}}}}, 1);
  return p;
}

Profile cranked_profile() {
  Profile p;
  p.seed = 2024;
  p.solver_budget_s = 300.0;
  auto add = [&](const std::string& fam, std::map<std::string, ParamDomain> params, int count) {
    FamilyProfile fp;
    fp.family = fam;
    fp.count = count;
    fp.params = std::move(params);
    p.families.push_back(fp);
  };
  add("sudoku", {{"n", ParamDomain{{3}}}, {"fill_pct", ParamDomain{{20}}}}, 2);
  add("costas_array", {{"n", ParamDomain{{9, 10}}}}, 2);
  add("social_golfers",
      {{"groups", ParamDomain{{4}}}, {"group_size", ParamDomain{{3}}}, {"weeks", ParamDomain{{4}}}},
      1);
  add("bibd", {{"v", ParamDomain{{7}}}, {"k", ParamDomain{{3}}}, {"lambda", ParamDomain{{1}}}}, 1);
  add("quasigroup_idempotent", {{"n", ParamDomain{{8}}}}, 1);
  add("langford", {{"n", ParamDomain{{11, 12}}}}, 2);
  add("pysms_chromatic_girth",
      {{"v", ParamDomain{{12}}},
       {"chromatic_max", ParamDomain{{3}}},
       {"min_girth", ParamDomain{{5}}},
       {"min_edges", ParamDomain{{15}}}},
      1);
  return p;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

void criterion6() {
  std::vector<std::string> errors;
  auto a = generate(easy_profile());
  auto b = generate(easy_profile());
  if (dataset_to_jsonl(a.records) != dataset_to_jsonl(b.records))
    errors.push_back("same profile+seed must be byte-identical");
  if (a.records.empty()) errors.push_back("easy profile generated nothing");
  auto cranked = generate(cranked_profile());
  if (cranked.records.empty()) errors.push_back("cranked profile generated nothing");
  double easy_p50 = median(a.stats.certify_seconds);
  double hard_p50 = median(cranked.stats.certify_seconds);
  std::printf("  median certify time: easy %.4fs, cranked %.4fs\n", easy_p50, hard_p50);
  if (!(hard_p50 > easy_p50))
    errors.push_back("cranked profile must raise the median certify time");
  report(6, "generation determinism and the difficulty dial", errors);
}

// --- criterion 7: sandbox hermeticity ---------------------------------------------

void criterion7() {
  std::vector<std::string> errors;
  auto policy = SandboxPolicy::from_env();
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) errors.push_back(what);
  };
  {
    auto r = execute_script(policy, "import socket\nsocket.socket()");
    expect(!r.ok && r.failure == "policy", "network probe must be denied");
  }
  {
    auto r = execute_script(policy, "import subprocess\nsubprocess.run(['true'])");
    expect(!r.ok && r.failure == "policy", "child-spawn probe must be denied");
  }
  {
    auto r = execute_script(policy, "import os\nos.fork()");
    expect(!r.ok && r.failure == "policy", "fork probe must be denied");
  }
  {
    auto r = execute_script(policy, "import math_constraint");
    expect(!r.ok && r.failure == "policy", "denied-import probe must be denied");
  }
  {
    auto r = execute_script(policy, "print('y' * 200000)");
    expect(r.ok && r.stdout_truncated && r.stdout_text.size() == policy.output_limit,
           "oversized output must be truncated at the limit");
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    auto r = execute_script(policy, "while True:\n    pass\n", 1.0);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(!r.ok && r.failure == "timeout", "runaway script must time out");
    expect(std::abs(elapsed - 1.0) <= 0.2,
           "timeout must be enforced within 200 ms of the budget (got " +
               std::to_string(elapsed) + "s)");
  }
  report(7, "sandbox hermeticity probes", errors);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s (%d failing) in %.1fs\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES",
              failures, elapsed);
  return failures == 0 ? 0 : 1;
}

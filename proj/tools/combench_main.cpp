#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "combench/certify.hpp"
#include "combench/generate.hpp"
#include "combench/harness.hpp"
#include "combench/metrics.hpp"
#include "combench/verify.hpp"

using namespace combench;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  double idx = p * static_cast<double>(v.size() - 1);
  size_t lo = static_cast<size_t>(idx);
  size_t hi = std::min(lo + 1, v.size() - 1);
  double frac = idx - static_cast<double>(lo);
  return v[lo] * (1 - frac) + v[hi] * frac;
}

SolverHandle solver_from_flags(const std::string& external, double budget) {
  if (!external.empty()) return SolverHandle::external(external, budget);
  return SolverHandle::from_env(budget);
}

int cmd_generate(const std::string& profile_path, const std::string& output, int workers,
                 std::optional<uint64_t> seed_override, bool wall_timing,
                 const std::string& external_solver) {
  Profile profile = Profile::load(profile_path);
  if (seed_override) profile.seed = *seed_override;
  if (wall_timing) profile.record_wall_time = true;
  GenerateOptions opts;
  opts.workers = workers;
  opts.output_path = output;
  opts.external_solver = external_solver;
  auto result = generate(profile, opts);
  size_t sat = 0;
  std::set<std::string> families;
  for (const auto& r : result.records) {
    sat += r.satisfiable ? 1 : 0;
    families.insert(r.family);
  }
  auto& t = result.stats.certify_seconds;
  double mx = t.empty() ? 0.0 : *std::max_element(t.begin(), t.end());
  std::printf("n      Types  SAT           p50     p90     p99     Max\n");
  std::printf("%-6zu %-6zu %zu (%s%%)   %-7.2f %-7.2f %-7.2f %.2f\n", result.records.size(),
              families.size(), sat,
              format_pct(result.records.empty()
                             ? 0.0
                             : static_cast<double>(sat) / static_cast<double>(result.records.size()))
                  .c_str(),
              percentile(t, 0.50), percentile(t, 0.90), percentile(t, 0.99), mx);
  std::printf("dropped: %zu timeout, %zu invalid-params\n", result.stats.dropped_timeout,
              result.stats.dropped_invalid_params);
  std::printf("wrote %s\n", output.c_str());
  return kExitOk;
}

int cmd_certify(const std::string& dataset_path, double budget,
                const std::string& external_solver) {
  auto dataset = dataset_from_jsonl_file(dataset_path);
  auto handle = solver_from_flags(external_solver, budget);
  size_t mismatches = 0, timeouts = 0;
  for (const auto& rec : dataset) {
    const auto& spec = registry_lookup(rec.family);
    auto outcome = certify_polarity(spec, rec.params, rec.variable_data, handle, budget);
    if (outcome.polarity == Polarity::Timeout) {
      ++timeouts;
      std::printf("%s TIMEOUT\n", rec.id.c_str());
      continue;
    }
    bool sat = outcome.polarity == Polarity::Sat;
    if (sat != rec.satisfiable) {
      ++mismatches;
      std::printf("%s MISMATCH recorded=%s recertified=%s\n", rec.id.c_str(),
                  rec.satisfiable ? "SAT" : "UNSAT", sat ? "SAT" : "UNSAT");
    }
  }
  std::printf("%zu records, %zu mismatches, %zu timeouts\n", dataset.size(), mismatches, timeouts);
  return mismatches == 0 ? kExitOk : kExitData;
}

int cmd_verify(const std::string& dataset_path, const std::string& submissions_path,
               const std::string& output, const std::string& external_solver) {
  auto dataset = dataset_from_jsonl_file(dataset_path);
  std::map<std::string, const InstanceRecord*> by_id;
  for (const auto& r : dataset) by_id[r.id] = &r;
  std::ifstream in(submissions_path);
  if (!in) throw DataError("cannot open submissions: " + submissions_path);
  std::ofstream out(output, std::ios::trunc);
  if (!out) throw DataError("cannot write verdicts: " + output);
  auto handle = solver_from_flags(external_solver, 60.0);

  std::map<FailureBucket, size_t> buckets;
  std::string line;
  size_t total = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++total;
    json record;
    std::string id;
    Verdict verdict;
    try {
      json j = json::parse(line);
      id = j.value("id", "");
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        record["id"] = id;
        record["error"] = "unknown instance id";
        out << record.dump() << '\n';
        ++buckets[FailureBucket::Other];
        continue;
      }
      const InstanceRecord& inst = *it->second;
      bool truncated = j.value("truncated", false);
      if (j.contains("response")) {
        auto parsed = parse_response(j.at("response").get<std::string>());
        verdict = parsed.ok ? verify(inst, parsed.submission, handle)
                            : unparsed_verdict(inst, parsed.error, truncated, false);
      } else {
        auto parsed = parse_response(j.dump());
        verdict = parsed.ok ? verify(inst, parsed.submission, handle)
                            : unparsed_verdict(inst, parsed.error, truncated, false);
      }
    } catch (const json::exception& e) {
      record["id"] = id;
      record["error"] = e.what();
      verdict.failure_bucket = FailureBucket::Parse;
      verdict.validation_details = std::string("malformed submission line: ") + e.what();
      record["verdict"] = verdict.to_json();
      out << record.dump() << '\n';
      ++buckets[verdict.failure_bucket];
      continue;
    }
    record["id"] = id;
    record["verdict"] = verdict.to_json();
    out << record.dump() << '\n';
    ++buckets[verdict.failure_bucket];
  }
  std::printf("Accept  Wrong pol.  Wrong sol.  Length  Parse  Max rounds  Other\n");
  std::printf("%-7zu %-11zu %-11zu %-7zu %-6zu %-11zu %zu\n", buckets[FailureBucket::None],
              buckets[FailureBucket::WrongPolarity], buckets[FailureBucket::WrongSolution],
              buckets[FailureBucket::Length], buckets[FailureBucket::Parse],
              buckets[FailureBucket::MaxRounds], buckets[FailureBucket::Other]);
  std::printf("%zu submissions graded -> %s\n", total, output.c_str());
  return kExitOk;
}

AgentFactory agent_from_config(const std::string& config) {
  std::string type = config;
  bool submit_tool = true;
  if (config.size() > 5 && config.substr(config.size() - 5) == ".json") {
    std::ifstream in(config);
    if (!in) throw DataError("cannot open agent config: " + config);
    json j;
    in >> j;
    type = j.at("type").get<std::string>();
    submit_tool = j.value("submit_tool", true);
  }
  if (type == "always_unsat") return always_unsat_factory(submit_tool);
  if (type == "oracle") return oracle_factory(submit_tool);
  throw DataError("unknown agent type: " + type + " (expected always_unsat|oracle)");
}

int cmd_evaluate(const std::string& dataset_path, const std::string& agent_config,
                 const std::string& condition, int budget, const std::string& traces_out,
                 const std::string& external_solver) {
  auto dataset = dataset_from_jsonl_file(dataset_path);
  auto factory = agent_from_config(agent_config);
  auto handle = solver_from_flags(external_solver, 60.0);
  EpisodeOptions opts;
  opts.round_budget = budget;
  opts.sandbox = SandboxPolicy::from_env();
  std::ofstream out(traces_out, std::ios::trunc);
  if (!out) throw DataError("cannot write traces: " + traces_out);
  size_t correct = 0;
  for (const auto& inst : dataset) {
    auto agent = factory(inst);
    Trace trace = run_episode(*agent, inst, condition, handle, opts);
    correct += trace.verdict.correct ? 1 : 0;
    out << trace.to_json().dump() << '\n';
  }
  std::printf("%zu episodes, accuracy %s%% -> %s\n", dataset.size(),
              format_pct(dataset.empty()
                             ? 0.0
                             : static_cast<double>(correct) / static_cast<double>(dataset.size()))
                  .c_str(),
              traces_out.c_str());
  return kExitOk;
}

int cmd_replay(const std::string& traces_path, const std::vector<int>& ks, int budget,
               bool forced_at_budget) {
  auto traces = traces_from_jsonl_file(traces_path);
  if (traces.empty()) throw DataError("empty trace file");
  EvalRun run;
  run.label = "replay";
  run.condition = "tools";
  run.budget = budget;
  for (const auto& t : traces) {
    EvalItem item;
    item.id = t.instance_id;
    item.verdict = t.verdict;
    item.rounds = static_cast<int>(t.rounds.size());
    item.forced = t.forced_submit;
    item.explicit_submission = t.explicit_submission;
    run.items.push_back(std::move(item));
  }
  SimOptions sim;
  sim.forced_at_budget = forced_at_budget;
  std::string header, values;
  for (int k : ks) {
    header += "sim@" + std::to_string(k) + "  ";
    values += format_pct(sim_at_k(run, k, sim)) + "  ";
  }
  std::printf("%s\n%s\n", header.c_str(), values.c_str());
  return kExitOk;
}

int cmd_report(const std::string& dataset_path, const std::string& traces_path,
               const std::string& out_dir, const std::string& label, const std::string& condition,
               int budget) {
  auto dataset = dataset_from_jsonl_file(dataset_path);
  auto traces = traces_from_jsonl_file(traces_path);
  EvalRun run = make_run(label, condition, dataset, traces, budget);
  auto report = compute_report(run);
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/summary.txt", std::ios::trunc);
    out << render_text_report(report);
  }
  for (const auto& [name, csv] : render_csv_tables(report)) {
    std::ofstream out(out_dir + "/" + name + ".csv", std::ios::trunc);
    out << csv;
  }
  std::printf("%s", render_text_report(report).c_str());
  return kExitOk;
}

int cmd_admit(const std::string& dataset_path, const std::string& outcomes_path,
              const std::string& output) {
  auto dataset = dataset_from_jsonl_file(dataset_path);
  std::map<std::string, std::map<std::string, bool>> outcomes;
  {
    std::ifstream in(outcomes_path);
    if (!in) throw DataError("cannot open outcomes: " + outcomes_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      auto& m = outcomes[j.at("id").get<std::string>()];
      for (const auto& [agent, ok] : j.at("cohort").items()) m[agent] = ok.get<bool>();
    }
  }
  std::vector<InstanceRecord> admitted;
  for (const auto& rec : dataset) {
    auto it = outcomes.find(rec.id);
    if (it == outcomes.end()) continue;  // no cohort data: not admitted
    if (admit(rec, it->second)) admitted.push_back(rec);
  }
  write_dataset(admitted, output);
  std::printf("admitted %zu of %zu -> %s\n", admitted.size(), dataset.size(), output.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generator-verifier toolkit for combinatorial decision benchmarks"};
  app.require_subcommand(1);

  std::string profile_path, dataset_path, output, submissions_path, traces_path, out_dir;
  std::string outcomes_path;
  std::string agent_config = "oracle", condition = "no_tools", label = "agent";
  std::string external_solver;
  int workers = 1, budget = 8;
  bool wall_timing = false, forced_at_budget = false;
  double certify_budget = 3600.0;
  std::optional<uint64_t> seed_override;
  std::vector<int> ks{1, 2, 4, 8};

  auto* gen = app.add_subcommand("generate", "manufacture a dataset from a profile");
  gen->add_option("--profile", profile_path, "profile JSON path")->required();
  gen->add_option("--output", output, "dataset JSONL path")->required();
  gen->add_option("--workers", workers, "parallel workers");
  uint64_t seed_raw = 0;
  auto* seed_opt = gen->add_option("--seed", seed_raw, "override the profile seed");
  gen->add_flag("--timing", wall_timing, "record wall-clock solver time per record");
  gen->add_option("--solver", external_solver, "external DIMACS solver command");

  auto* cert = app.add_subcommand("certify", "re-certify a dataset's polarities");
  cert->add_option("--dataset", dataset_path, "dataset JSONL path")->required();
  cert->add_option("--budget", certify_budget, "per-instance budget in seconds");
  cert->add_option("--solver", external_solver, "external DIMACS solver command");

  auto* ver = app.add_subcommand("verify", "grade submissions against a dataset");
  ver->add_option("--dataset", dataset_path)->required();
  ver->add_option("--submissions", submissions_path)->required();
  ver->add_option("--output", output, "verdicts JSONL path")->required();
  ver->add_option("--solver", external_solver);

  auto* eval = app.add_subcommand("evaluate", "run an agent over a dataset");
  eval->add_option("--dataset", dataset_path)->required();
  eval->add_option("--agent", agent_config, "always_unsat | oracle | config.json");
  eval->add_option("--condition", condition)->check(CLI::IsMember({"no_tools", "tools"}));
  eval->add_option("--budget", budget, "tool round budget");
  eval->add_option("--traces", traces_path, "traces JSONL output")->required();
  eval->add_option("--solver", external_solver);

  auto* rep = app.add_subcommand("replay", "sim@k over stored traces");
  rep->add_option("--traces", traces_path)->required();
  rep->add_option("--k", ks, "budgets to replay");
  rep->add_option("--budget", budget, "original round budget");
  rep->add_flag("--forced-at-budget", forced_at_budget,
                "count force-submitted traces at the full budget");

  auto* repo = app.add_subcommand("report", "full metric report from traces");
  repo->add_option("--dataset", dataset_path)->required();
  repo->add_option("--traces", traces_path)->required();
  repo->add_option("--output-dir", out_dir)->required();
  repo->add_option("--label", label);
  repo->add_option("--condition", condition)->check(CLI::IsMember({"no_tools", "tools"}));
  repo->add_option("--budget", budget);

  auto* adm = app.add_subcommand("admit", "keep instances at least one cohort agent failed");
  adm->add_option("--dataset", dataset_path)->required();
  adm->add_option("--outcomes", outcomes_path, "per-instance cohort outcomes JSONL")->required();
  adm->add_option("--output", output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (seed_opt->count()) seed_override = seed_raw;
    if (gen->parsed())
      return cmd_generate(profile_path, output, workers, seed_override, wall_timing,
                          external_solver);
    if (cert->parsed()) return cmd_certify(dataset_path, certify_budget, external_solver);
    if (ver->parsed()) return cmd_verify(dataset_path, submissions_path, output, external_solver);
    if (eval->parsed())
      return cmd_evaluate(dataset_path, agent_config, condition, budget, traces_path,
                          external_solver);
    if (rep->parsed()) return cmd_replay(traces_path, ks, budget, forced_at_budget);
    if (repo->parsed())
      return cmd_report(dataset_path, traces_path, out_dir, label, condition, budget);
    if (adm->parsed()) return cmd_admit(dataset_path, outcomes_path, output);
  } catch (const BackendFailure& e) {
    std::fprintf(stderr, "solver backend failure: %s\n", e.what());
    return kExitSolver;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}

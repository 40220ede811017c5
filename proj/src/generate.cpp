#include "combench/generate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "combench/cnf.hpp"
#include "combench/errors.hpp"
#include "combench/rng.hpp"

namespace combench {

using nlohmann::json;

// --- profile -------------------------------------------------------------------

static ParamDomain domain_from_json(const json& j) {
  ParamDomain d;
  if (j.is_number_integer()) {
    d.values.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const auto& v : j) d.values.push_back(v.get<int>());
  } else if (j.is_object() && j.contains("min") && j.contains("max")) {
    for (int v = j.at("min").get<int>(); v <= j.at("max").get<int>(); ++v) d.values.push_back(v);
  } else {
    throw DataError("parameter domain must be an int, an array, or {min, max}");
  }
  if (d.values.empty()) throw DataError("empty parameter domain");
  return d;
}

Profile Profile::from_json(const json& j) {
  Profile p;
  p.seed = j.value("seed", 0ULL);
  p.solver_budget_s = j.value("solver_budget_s", 3600.0);
  p.solver_conflict_budget = j.value("solver_conflict_budget", 0ULL);
  p.record_wall_time = j.value("record_wall_time", false);
  if (!j.contains("families") || !j.at("families").is_array() || j.at("families").empty())
    throw DataError("profile needs a non-empty families array");
  for (const auto& f : j.at("families")) {
    FamilyProfile fp;
    fp.family = f.at("family").get<std::string>();
    registry_lookup(fp.family);  // raises UnknownFamily early
    fp.count = f.value("count", 1);
    if (fp.count < 1) throw DataError("count must be >= 1");
    fp.mode = f.value("mode", "sweep");
    if (fp.mode != "sweep" && fp.mode != "random") throw DataError("mode must be sweep|random");
    fp.hint_probability = f.value("hint_probability", 0.0);
    fp.hint_fraction = f.value("hint_fraction", 0.25);
    if (f.contains("params"))
      for (const auto& [k, v] : f.at("params").items()) fp.params[k] = domain_from_json(v);
    p.families.push_back(std::move(fp));
  }
  return p;
}

Profile Profile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open profile: " + path);
  json j;
  in >> j;
  return from_json(j);
}

// --- record serialization --------------------------------------------------------

json InstanceRecord::to_json() const {
  json j;
  j["id"] = id;
  j["family"] = family;
  j["params"] = json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["variable_data"] = variable_data.is_null() ? json() : variable_data;
  j["prompt"] = prompt;
  j["polarity"] = satisfiable ? "SAT" : "UNSAT";
  j["witness"] = witness ? json(*witness) : json();
  if (hints.empty()) {
    j["hints"] = json();
  } else {
    j["hints"] = json::array();
    for (const auto& h : hints) j["hints"].push_back({{"pos", h.pos}, {"var", h.var}, {"value", h.value}});
  }
  json d;
  d["solver_effort"] = difficulty.solver_effort;
  d["vars"] = difficulty.vars;
  d["constraints"] = difficulty.constraints;
  if (difficulty.edge_count) d["edge_count"] = *difficulty.edge_count;
  d["log10_space"] = difficulty.log10_space;
  if (difficulty.solver_time_s) d["solver_time_s"] = *difficulty.solver_time_s;
  j["difficulty"] = d;
  j["contract_version"] = contract_version;
  return j;
}

InstanceRecord InstanceRecord::from_json(const json& j) {
  InstanceRecord r;
  r.id = j.at("id").get<std::string>();
  r.family = j.at("family").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<int>();
  if (j.contains("variable_data") && !j.at("variable_data").is_null())
    r.variable_data = j.at("variable_data");
  r.prompt = j.at("prompt").get<std::string>();
  std::string pol = j.at("polarity").get<std::string>();
  if (pol != "SAT" && pol != "UNSAT") throw DataError("polarity must be SAT or UNSAT");
  r.satisfiable = pol == "SAT";
  if (j.contains("witness") && !j.at("witness").is_null())
    r.witness = j.at("witness").get<std::vector<int>>();
  if (j.contains("hints") && !j.at("hints").is_null())
    for (const auto& h : j.at("hints"))
      r.hints.push_back(Hint{h.at("pos").get<int>(), h.at("var").get<std::string>(),
                             h.at("value").get<int>()});
  const auto& d = j.at("difficulty");
  r.difficulty.solver_effort = d.value("solver_effort", 0ULL);
  r.difficulty.vars = d.value("vars", size_t{0});
  r.difficulty.constraints = d.value("constraints", size_t{0});
  if (d.contains("edge_count")) r.difficulty.edge_count = d.at("edge_count").get<int>();
  r.difficulty.log10_space = d.value("log10_space", 0.0);
  if (d.contains("solver_time_s")) r.difficulty.solver_time_s = d.at("solver_time_s").get<double>();
  r.contract_version = j.value("contract_version", "1");
  return r;
}

std::string dataset_to_jsonl(const std::vector<InstanceRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) out << r.to_json().dump() << '\n';
  return out.str();
}

std::vector<InstanceRecord> dataset_from_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path);
  std::vector<InstanceRecord> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(InstanceRecord::from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw DataError("dataset line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_dataset(const std::vector<InstanceRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write dataset: " + path);
  out << dataset_to_jsonl(records);
}

// --- hints ---------------------------------------------------------------------

static std::string hint_block(const std::vector<Hint>& hints) {
  std::string block = "\n\nPartial assignment (fixed values that must be respected):";
  for (const auto& h : hints) block += "\n- " + h.var + "=" + std::to_string(h.value);
  block += "\nReturn a complete solution consistent with these fixed assignments.";
  return block;
}

InstanceRecord attach_hints(const InstanceRecord& record, uint64_t seed, double fraction,
                            const SolverHandle& solver) {
  if (!record.satisfiable || !record.witness)
    throw NotSatisfiable("hints require a SAT record with a reference witness");
  if (fraction <= 0.0) return record;
  const FamilySpec& spec = registry_lookup(record.family);
  if (!spec.build_model) return record;  // edge-list and native-only layouts are not hinted
  BuildOutput built = spec.build_model(record.params, record.variable_data);
  if (built.hint_vars.empty()) return record;

  // Recover a full reference solution consistent with the witness: pin the
  // witness and let the solver fill in the auxiliary decision variables.
  auto pins = built.pins_for_witness(*record.witness);
  if (!pins) throw DataError("stored witness does not fit the family layout");
  auto pinned = assert_values(built.model, *pins);
  auto compiled = compile_to_cnf(pinned);
  auto r = solve(solver, compiled.cnf, 60.0);
  if (r.status != SolveStatus::Sat)
    throw DataError("stored witness does not re-solve; cannot derive hints");
  auto solution = compiled.varmap.decode_dense(r.model);

  size_t want = static_cast<size_t>(fraction * static_cast<double>(built.hint_vars.size()) + 0.5);
  want = std::min(std::max<size_t>(want, 1), built.hint_vars.size());
  std::vector<size_t> order(built.hint_vars.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  order.resize(want);
  std::sort(order.begin(), order.end());  // hint lines follow model variable order

  std::map<VarId, int> witness_pos;
  for (size_t i = 0; i < built.witness_vars.size(); ++i)
    witness_pos[built.witness_vars[i]] = static_cast<int>(i);

  InstanceRecord out = record;
  out.hints.clear();
  for (size_t idx : order) {
    VarId v = built.hint_vars[idx];
    Hint h;
    auto it = witness_pos.find(v);
    h.pos = it == witness_pos.end() ? -1 : it->second;
    h.var = built.model.var(v).name;
    h.value = solution[static_cast<size_t>(v)];
    out.hints.push_back(h);
  }
  out.prompt = spec.render_prompt(record.params, record.variable_data) + hint_block(out.hints);
  auto marker = out.id.rfind("_nh");
  if (marker != std::string::npos) out.id = out.id.substr(0, marker) + "_h" + out.id.substr(marker + 3);
  return out;
}

bool admit(const InstanceRecord&, const std::map<std::string, bool>& cohort_correct) {
  if (cohort_correct.empty()) throw EmptyCohort("admission needs at least one cohort outcome");
  for (const auto& [agent, correct] : cohort_correct)
    if (!correct) return true;
  return false;
}

// --- generation ------------------------------------------------------------------

namespace {

struct Candidate {
  size_t ordinal;  // global candidate index, stable across runs
  const FamilyProfile* fp;
  size_t index_in_family;
};

Params params_for(const FamilyProfile& fp, const FamilySpec& spec, size_t index, Rng& rng) {
  Params p;
  if (fp.mode == "sweep") {
    // Cartesian product in schema order, cycling when count exceeds it
    size_t radix = index;
    for (const auto& ps : spec.param_schema) {
      auto it = fp.params.find(ps.name);
      if (it == fp.params.end()) throw DataError("profile missing domain for " + ps.name);
      const auto& vals = it->second.values;
      p[ps.name] = vals[radix % vals.size()];
      radix /= vals.size();
    }
  } else {
    for (const auto& ps : spec.param_schema) {
      auto it = fp.params.find(ps.name);
      if (it == fp.params.end()) throw DataError("profile missing domain for " + ps.name);
      const auto& vals = it->second.values;
      p[ps.name] = vals[rng.below(vals.size())];
    }
  }
  return p;
}

std::string canonical_params(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) s += k + "=" + std::to_string(v) + ";";
  return s;
}

std::string short_params(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) {
    if (!s.empty()) s += "_";
    s += k + std::to_string(v);
  }
  return s;
}

struct WorkerState {
  std::vector<InstanceRecord> records;
  GenerateStats stats;
};

}  // namespace

GenerateResult generate(const Profile& profile, const GenerateOptions& opts) {
  // Candidate list is fixed up front; every candidate derives its own RNG
  // stream from (seed, family, index), so resuming or re-partitioning across
  // workers can never shift another candidate's randomness.
  std::vector<Candidate> candidates;
  {
    size_t ordinal = 0;
    for (const auto& fp : profile.families)
      for (size_t i = 0; i < static_cast<size_t>(fp.count); ++i)
        candidates.push_back(Candidate{ordinal++, &fp, i});
  }

  int workers = std::max(1, opts.workers);
  Rng master(profile.seed);

  auto checkpoint_path = [&](int w) {
    return opts.output_path + ".ckpt" + std::to_string(w);
  };
  auto part_path = [&](int w) { return opts.output_path + ".part" + std::to_string(w); };

  std::vector<WorkerState> states(static_cast<size_t>(workers));
  std::mutex stop_mutex;
  size_t accepted_total = 0;

  auto run_worker = [&](int w) {
    WorkerState& st = states[static_cast<size_t>(w)];
    size_t resume_cursor = 0;
    std::ofstream part;
    if (!opts.output_path.empty()) {
      // resume: reload accepted records and skip processed candidates
      std::ifstream ck(checkpoint_path(w));
      if (ck) {
        json j;
        ck >> j;
        resume_cursor = j.value("cursor", size_t{0});
        std::ifstream pf(part_path(w));
        std::string line;
        while (pf && std::getline(pf, line))
          if (!line.empty()) st.records.push_back(InstanceRecord::from_json(json::parse(line)));
      }
      part.open(part_path(w), std::ios::app);
    }
    SolverHandle handle = opts.external_solver.empty()
                              ? SolverHandle::embedded(profile.solver_budget_s)
                              : SolverHandle::external(opts.external_solver, profile.solver_budget_s);
    handle.conflict_budget = profile.solver_conflict_budget;

    for (const Candidate& cand : candidates) {
      if (static_cast<int>(cand.ordinal % static_cast<size_t>(workers)) != w) continue;
      if (cand.ordinal < resume_cursor) continue;
      {
        std::lock_guard<std::mutex> lock(stop_mutex);
        if (accepted_total >= opts.stop_after_accepted) break;
      }
      const FamilyProfile& fp = *cand.fp;
      const FamilySpec& spec = registry_lookup(fp.family);
      Rng cand_rng = master.fork(fp.family).fork(cand.index_in_family);

      Rng prng = cand_rng.fork("params");
      Params params = params_for(fp, spec, cand.index_in_family, prng);
      std::string why;
      if (!spec.validate_params(params, &why)) {
        ++st.stats.dropped_invalid_params;
        continue;
      }
      VData vdata;
      uint64_t data_seed = cand_rng.fork("vdata").next();
      if (spec.needs_variable_data) vdata = spec.sample_variable_data(params, data_seed);

      auto t0 = std::chrono::steady_clock::now();
      CertifyOutcome outcome;
      try {
        outcome = certify_polarity(spec, params, vdata, handle, profile.solver_budget_s);
      } catch (const DomainTooLarge&) {
        ++st.stats.dropped_invalid_params;
        continue;
      }
      double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (outcome.polarity == Polarity::Timeout) {
        ++st.stats.dropped_timeout;  // timeouts are dropped, never released
        continue;
      }

      InstanceRecord rec;
      rec.family = fp.family;
      rec.params = params;
      rec.variable_data = vdata;
      rec.satisfiable = outcome.polarity == Polarity::Sat;
      if (rec.satisfiable) rec.witness = outcome.witness;
      rec.prompt = spec.render_prompt(params, vdata);
      rec.difficulty.solver_effort = outcome.solver_effort;
      rec.difficulty.vars = outcome.model_vars;
      rec.difficulty.constraints = outcome.model_constraints;
      if (!vdata.is_null() && vdata.contains("edges"))
        rec.difficulty.edge_count = static_cast<int>(vdata.at("edges").size());
      if (outcome.model_vars > 0) {
        rec.difficulty.log10_space = outcome.log10_space;
      } else {
        auto ws = spec.witness_schema(params, vdata);
        double dom = static_cast<double>(ws.value_hi - ws.value_lo + 1);
        rec.difficulty.log10_space = static_cast<double>(ws.max_len) * std::log10(dom);
      }
      if (profile.record_wall_time) rec.difficulty.solver_time_s = wall;

      std::string variant = "v" + std::to_string(cand.index_in_family);
      uint64_t h = stable_hash64(fp.family + "|" + canonical_params(params) + "|" +
                                 std::to_string(profile.seed) + "|" + variant);
      char hex[17];
      std::snprintf(hex, sizeof hex, "%08llx", static_cast<unsigned long long>(h & 0xffffffffULL));
      rec.id = fp.family + "_" + short_params(params) + "__" + variant + "_nh_" + hex;

      if (rec.satisfiable && fp.hint_probability > 0.0) {
        Rng hrng = cand_rng.fork("hints");
        if (hrng.unit() < fp.hint_probability)
          rec = attach_hints(rec, hrng.next(), fp.hint_fraction, handle);
      }

      st.stats.certify_seconds.push_back(wall);
      ++st.stats.accepted;
      st.records.push_back(rec);
      {
        std::lock_guard<std::mutex> lock(stop_mutex);
        ++accepted_total;
      }
      if (!opts.output_path.empty()) {
        part << rec.to_json().dump() << '\n';
        part.flush();
        std::ofstream ck(checkpoint_path(w), std::ios::trunc);
        json j;
        j["worker"] = w;
        j["cursor"] = cand.ordinal + 1;
        json ids = json::array();
        for (const auto& r : st.records) ids.push_back(r.id);
        j["accepted"] = ids;
        ck << j.dump() << '\n';
      }
    }
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
    for (auto& t : threads) t.join();
  }

  GenerateResult out;
  for (auto& st : states) {
    out.stats.accepted += st.stats.accepted;
    out.stats.dropped_timeout += st.stats.dropped_timeout;
    out.stats.dropped_invalid_params += st.stats.dropped_invalid_params;
    out.stats.certify_seconds.insert(out.stats.certify_seconds.end(),
                                     st.stats.certify_seconds.begin(),
                                     st.stats.certify_seconds.end());
    out.records.insert(out.records.end(), st.records.begin(), st.records.end());
  }
  // dedup by id; order is generation order for one worker, id-sorted otherwise
  std::map<std::string, InstanceRecord> by_id;
  for (auto& r : out.records) by_id.emplace(r.id, std::move(r));
  out.records.clear();
  if (workers == 1) {
    // by_id may have dropped duplicates; rebuild in original order
    std::vector<InstanceRecord> ordered;
    std::map<std::string, bool> seen;
    for (auto& st : states)
      for (auto& r : st.records)
        if (!seen[r.id]) {
          seen[r.id] = true;
          ordered.push_back(r);
        }
    out.records = std::move(ordered);
  } else {
    for (auto& [id, r] : by_id) out.records.push_back(std::move(r));
  }
  out.stats.accepted = out.records.size();
  if (!opts.output_path.empty() && out.records.size() >= opts.stop_after_accepted) {
    // partial run: keep parts and checkpoints for resumption
  } else if (!opts.output_path.empty()) {
    write_dataset(out.records, opts.output_path);
    for (int w = 0; w < workers; ++w) {
      std::remove(part_path(w).c_str());
      std::remove(checkpoint_path(w).c_str());
    }
  }
  return out;
}

}  // namespace combench

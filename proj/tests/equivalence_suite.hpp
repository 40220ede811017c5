#pragma once

// Family oracle equivalence: for every family providing build_model, at tiny
// parameter points, (1) exhaustive enumeration of the ConstraintModel agrees
// with the CNF pipeline on the full solution set, and (2) the hand-written
// witness checker agrees with the model, by exhaustive witness enumeration
// where feasible and by decoded-solution checks everywhere.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "combench/certify.hpp"
#include "combench/cnf.hpp"
#include "combench/families.hpp"
#include "combench/solver.hpp"
#include "oracle.hpp"

namespace combench::testing {

struct EquivalencePoint {
  std::string family;
  Params params;
  uint64_t data_seed = 0;  // used when the family samples variable data
  // exhaustive witness-space sweep is attempted only below this cap
  long long witness_sweep_cap = 200000;
};

inline std::vector<EquivalencePoint> equivalence_points() {
  return {
      {"all_interval", {{"n", 4}}},
      {"all_interval", {{"n", 5}}},
      {"antimagic_square", {{"n", 2}}},
      {"bibd", {{"v", 3}, {"k", 2}, {"lambda", 1}}},
      {"costas_array", {{"n", 3}}},
      {"costas_array", {{"n", 4}}},
      {"debruijn", {{"b", 2}, {"n", 2}}},
      {"golomb", {{"n", 3}, {"length", 3}}},
      {"golomb", {{"n", 3}, {"length", 2}}},
      {"graceful_graph", {{"k", 2}, {"p", 2}}},
      {"graph_k_coloring", {{"n", 5}, {"k", 2}, {"m", 5}}, 11},
      {"hadamard", {{"n", 3}}},
      {"hamilton_cycle", {{"n", 5}, {"m", 7}}, 13},
      {"knight_tour", {{"n", 3}}},
      {"langford", {{"n", 3}}},
      {"latin_square_completion", {{"n", 3}, {"fill_pct", 30}}, 17},
      {"magic_sequence", {{"n", 3}}},
      {"magic_sequence", {{"n", 4}}},
      {"magic_square", {{"n", 3}}},
      {"max_clique", {{"n", 5}, {"k", 2}, {"m", 6}}, 19},
      {"max_independent_set", {{"n", 5}, {"k", 2}, {"m", 6}}, 23},
      {"non_transitive_dice", {{"dice", 3}, {"faces", 1}}},
      {"non_transitive_dice", {{"dice", 3}, {"faces", 2}}},
      {"number_partitioning", {{"n", 4}, {"k", 2}}},
      {"ortholatin", {{"n", 2}}},
      {"ortholatin", {{"n", 3}}},
      {"pigeons", {{"n", 2}}},
      {"quasigroup_idempotent", {{"n", 2}}},
      {"quasigroup_idempotent", {{"n", 3}}},
      {"queens", {{"n", 4}}},
      {"queens", {{"n", 5}}},
      {"ramsey", {{"n", 4}, {"r", 3}, {"s", 3}}},
      {"ramsey", {{"n", 5}, {"r", 3}, {"s", 3}}},
      {"social_golfers", {{"groups", 2}, {"group_size", 2}, {"weeks", 2}}},
      {"sudoku", {{"n", 2}, {"fill_pct", 30}}, 29},
      {"van_der_waerden", {{"n", 5}, {"k", 2}, {"L", 3}}},
      {"vertex_cover", {{"n", 5}, {"k", 2}, {"m", 5}}, 31},
      {"pysms_chromatic_girth",
       {{"v", 5}, {"chromatic_max", 2}, {"min_girth", 4}, {"min_edges", 3}}},
      {"pysms_clique_coloring",
       {{"v", 4}, {"max_clique", 2}, {"chromatic_max", 3}, {"min_degree", 1}}},
      {"pysms_contains_cliques", {{"v", 4}, {"cliques", 2}, {"clique_size", 2}}},
      {"pysms_degree_bounds", {{"v", 4}, {"min_degree", 1}, {"max_degree", 2}}},
      {"pysms_girth_degree",
       {{"v", 5}, {"min_girth", 4}, {"min_degree", 1}, {"max_degree", 3}}},
      {"pysms_min_girth", {{"v", 5}, {"min_girth", 4}}},
      {"pysms_mtf", {{"v", 5}}},
      {"pysms_ramsey", {{"v", 4}, {"clique_avoid", 3}, {"indset_avoid", 3}}},
      {"pysms_min_degree", {{"v", 4}, {"min_degree", 2}}},
      {"pysms_num_edges_bounds", {{"v", 4}, {"min_edges", 2}, {"max_edges", 4}}},
  };
}

// Runs one point; returns error strings (empty = pass).
inline std::vector<std::string> run_equivalence_point(const EquivalencePoint& pt) {
  std::vector<std::string> errors;
  auto err = [&](const std::string& what) {
    errors.push_back(pt.family + ": " + what);
  };
  const FamilySpec& spec = registry_lookup(pt.family);
  if (!spec.build_model) {
    err("no build_model");
    return errors;
  }
  VData vdata;
  if (spec.needs_variable_data) vdata = spec.sample_variable_data(pt.params, pt.data_seed);
  BuildOutput built = spec.build_model(pt.params, vdata);

  // Route A: exhaustive enumeration of the model
  auto brute = BruteForce(built.model).solution_set();

  // Route B: CNF pipeline with projection on the decision indicators
  auto compiled = compile_to_cnf(built.model);
  std::vector<int> proj;
  for (const auto& v : built.model.vars())
    for (int val : v.domain) proj.push_back(compiled.varmap.atom(v.id, val));
  auto handle = SolverHandle::embedded(120.0);
  auto en = enumerate_models(handle, compiled.cnf, 200000, 120.0, proj);
  if (!en.complete) {
    err("CNF enumeration did not complete");
    return errors;
  }
  std::set<std::vector<int>> cnf_set;
  for (const auto& model : en.models) cnf_set.insert(compiled.varmap.decode_dense(model));
  if (cnf_set != brute) {
    std::ostringstream ss;
    ss << "solution sets differ: brute " << brute.size() << " vs cnf " << cnf_set.size();
    err(ss.str());
    return errors;
  }

  // Every decoded solution's witness must pass the hand-written checker.
  std::set<std::vector<int>> witness_set;
  for (const auto& sol : brute) witness_set.insert(built.witness_from_assignment(sol));
  for (const auto& w : witness_set) {
    auto res = check_witness(spec, pt.params, vdata, w);
    if (!res.ok) {
      err("decoded witness rejected by checker: " + res.reason);
      return errors;
    }
  }

  // Exhaustive witness sweep when the envelope is small enough:
  // {w : check_witness(w)} must equal the decoded witness set.
  WitnessSchema schema = spec.witness_schema(pt.params, vdata);
  if (schema.edge_pairs) {
    int v = 0;
    for (const auto& [name, value] : pt.params)
      if (name == "v") v = value;
    int pairs = v * (v - 1) / 2;
    if (pairs <= 20) {
      std::vector<std::pair<int, int>> all;
      for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b) all.emplace_back(a, b);
      size_t accepted = 0;
      for (uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
        std::vector<int> flat;
        for (int e = 0; e < pairs; ++e)
          if ((mask >> e) & 1) {
            flat.push_back(all[static_cast<size_t>(e)].first);
            flat.push_back(all[static_cast<size_t>(e)].second);
          }
        bool ok = check_witness(spec, pt.params, vdata, flat).ok;
        if (ok) ++accepted;
        if (ok != witness_set.count(flat)) {
          err("checker/model disagreement on an edge set");
          return errors;
        }
      }
      (void)accepted;
    }
  } else if (schema.min_len == schema.max_len) {
    long long len = schema.min_len;
    long long domain = schema.value_hi - schema.value_lo + 1;
    double total = std::pow(static_cast<double>(domain), static_cast<double>(len));
    if (total <= static_cast<double>(pt.witness_sweep_cap)) {
      std::vector<int> w(static_cast<size_t>(len), schema.value_lo);
      for (;;) {
        bool ok = check_witness(spec, pt.params, vdata, w).ok;
        if (ok != static_cast<bool>(witness_set.count(w))) {
          err("checker/model disagreement on a witness candidate");
          return errors;
        }
        // odometer
        size_t i = 0;
        while (i < w.size()) {
          if (w[i] < schema.value_hi) {
            ++w[i];
            break;
          }
          w[i] = schema.value_lo;
          ++i;
        }
        if (i == w.size()) break;
      }
    }
  }
  return errors;
}

}  // namespace combench::testing

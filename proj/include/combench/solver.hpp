#pragma once

#include <optional>
#include <string>
#include <vector>

#include "combench/cnf.hpp"

namespace combench {

enum class SolveStatus { Sat, Unsat, Timeout };

struct SolveResult {
  SolveStatus status = SolveStatus::Timeout;
  std::vector<bool> model;  // 1-indexed by atom; valid when Sat
  double elapsed_s = 0.0;
  uint64_t conflicts = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
};

// Uniform interface to complete SAT solving. A handle serves one solve call at
// a time; create one handle per concurrent caller.
struct SolverHandle {
  // When set, DIMACS is written to a temp file and `external_cmd <file>` is
  // invoked; the solver must print `s SATISFIABLE`/`s UNSATISFIABLE` and
  // `v ...` lines. Empty means the embedded CDCL engine.
  std::string external_cmd;
  double default_budget_s = 3600.0;
  // Deterministic effort cap for the embedded engine (0 = unlimited). Counted
  // in conflicts; hitting it reports Timeout.
  uint64_t conflict_budget = 0;

  static SolverHandle embedded(double budget_s = 3600.0) {
    return SolverHandle{"", budget_s, 0};
  }
  static SolverHandle external(std::string cmd, double budget_s = 3600.0) {
    return SolverHandle{std::move(cmd), budget_s, 0};
  }
  // Picks up COMBENCH_SOLVER from the environment when present.
  static SolverHandle from_env(double budget_s = 3600.0);
};

SolveResult solve(const SolverHandle& handle, const CnfFormula& cnf,
                  std::optional<double> budget_s = std::nullopt);

struct EnumerateResult {
  std::vector<std::vector<bool>> models;
  bool complete = false;   // true when the model set was exhausted
  bool timed_out = false;  // partial results are flagged, never silently truncated
};

// Enumerates up to `limit` models distinct on `projection` atoms (all atoms
// when empty) via blocking clauses.
EnumerateResult enumerate_models(const SolverHandle& handle, const CnfFormula& cnf, size_t limit,
                                 std::optional<double> budget_s = std::nullopt,
                                 const std::vector<int>& projection = {});

}  // namespace combench

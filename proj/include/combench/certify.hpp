#pragma once

#include <optional>
#include <vector>

#include "combench/families.hpp"
#include "combench/solver.hpp"

namespace combench {

enum class Polarity { Sat, Unsat, Timeout };

struct CertifyOutcome {
  Polarity polarity = Polarity::Timeout;
  std::vector<int> witness;            // present when Sat
  std::vector<int> reference_solution; // full model assignment when available (drives hints)
  double elapsed_s = 0.0;
  uint64_t solver_effort = 0;  // deterministic effort units (conflicts)
  size_t model_vars = 0;
  size_t model_constraints = 0;
  double log10_space = 0.0;
};

// Decides an instance's polarity exactly within the wall-time budget.
// Preference order: native complete search, then the CNF pipeline (with an
// enumerate-and-filter loop when the family declares residual predicates).
// SAT outcomes always carry a witness that passes check_witness.
CertifyOutcome certify_polarity(const FamilySpec& family, const Params& params,
                                const VData& vdata, const SolverHandle& solver, double budget_s);

}  // namespace combench

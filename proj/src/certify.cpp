#include "combench/certify.hpp"

#include <chrono>

#include "combench/cnf.hpp"
#include "combench/errors.hpp"

namespace combench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Solve a fully-faithful model once.
CertifyOutcome certify_via_model(const BuildOutput& built, const FamilySpec& family,
                                 const Params& params, const VData& vdata,
                                 const SolverHandle& solver, double budget_s,
                                 Clock::time_point t0) {
  CertifyOutcome out;
  out.model_vars = built.model.var_count();
  out.model_constraints = built.model.constraint_count();
  out.log10_space = built.model.log10_search_space();
  const ConstraintModel* model = &built.model;
  ConstraintModel pinned;
  if (family.search_pins) {
    std::map<VarId, int> pins;
    for (const auto& [name, value] : family.search_pins(params, vdata)) {
      VarId id = built.model.find_var(name);
      if (id >= 0) pins[id] = value;
    }
    pinned = assert_values(built.model, pins);
    model = &pinned;
  }
  auto compiled = compile_to_cnf(*model);
  double left = budget_s - seconds_since(t0);
  if (left <= 0) return out;
  auto r = solve(solver, compiled.cnf, left);
  out.solver_effort += r.conflicts;
  out.elapsed_s = seconds_since(t0);
  if (r.status == SolveStatus::Timeout) return out;
  if (r.status == SolveStatus::Unsat) {
    out.polarity = Polarity::Unsat;
    return out;
  }
  auto dense = compiled.varmap.decode_dense(r.model);
  out.polarity = Polarity::Sat;
  out.witness = built.witness_from_assignment(dense);
  out.reference_solution = dense;
  return out;
}

// Solve the encodable relaxation, filtering decoded candidates through the
// family's residual predicates with blocking clauses in between.
CertifyOutcome certify_via_filter(const BuildOutput& built, const FamilySpec& family,
                                  const Params& params, const VData& vdata,
                                  const SolverHandle& solver, double budget_s,
                                  Clock::time_point t0) {
  CertifyOutcome out;
  out.model_vars = built.model.var_count();
  out.model_constraints = built.model.constraint_count();
  out.log10_space = built.model.log10_search_space();
  auto compiled = compile_to_cnf(built.model);
  CnfFormula work = compiled.cnf;
  // block on witness variables only: one candidate graph per iteration
  std::vector<int> proj;
  for (VarId v : built.witness_vars)
    for (int val : built.model.var(v).domain) proj.push_back(compiled.varmap.atom(v, val));
  for (;;) {
    double left = budget_s - seconds_since(t0);
    if (left <= 0) {
      out.elapsed_s = seconds_since(t0);
      return out;  // Timeout
    }
    auto r = solve(solver, work, left);
    out.solver_effort += r.conflicts;
    if (r.status == SolveStatus::Timeout) {
      out.elapsed_s = seconds_since(t0);
      return out;
    }
    if (r.status == SolveStatus::Unsat) {
      out.polarity = Polarity::Unsat;
      out.elapsed_s = seconds_since(t0);
      return out;
    }
    auto dense = compiled.varmap.decode_dense(r.model);
    auto witness = built.witness_from_assignment(dense);
    if (!family.native_filter || family.native_filter(params, vdata, witness)) {
      out.polarity = Polarity::Sat;
      out.witness = std::move(witness);
      out.reference_solution = dense;
      out.elapsed_s = seconds_since(t0);
      return out;
    }
    std::vector<int> block;
    block.reserve(proj.size());
    for (int a : proj) block.push_back(r.model[static_cast<size_t>(a)] ? -a : a);
    work.add_clause(std::move(block));
  }
}

}  // namespace

CertifyOutcome certify_polarity(const FamilySpec& family, const Params& params,
                                const VData& vdata, const SolverHandle& solver,
                                double budget_s) {
  auto t0 = Clock::now();
  if (family.native_certify) {
    auto native = family.native_certify(params, vdata, budget_s);
    CertifyOutcome out;
    out.elapsed_s = seconds_since(t0);
    if (!native) return out;  // Timeout
    out.polarity = native->sat ? Polarity::Sat : Polarity::Unsat;
    out.witness = std::move(native->witness);
    return out;
  }
  if (family.build_model) {
    auto built = family.build_model(params, vdata);
    return certify_via_model(built, family, params, vdata, solver, budget_s, t0);
  }
  if (family.search_model) {
    auto built = family.search_model(params, vdata);
    return certify_via_filter(built, family, params, vdata, solver, budget_s, t0);
  }
  throw Error("family " + family.name + " has no certification path");
}

}  // namespace combench

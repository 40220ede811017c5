#include "combench/verify.hpp"

#include "combench/cnf.hpp"
#include "combench/errors.hpp"

namespace combench {

using nlohmann::json;

const char* bucket_name(FailureBucket b) {
  switch (b) {
    case FailureBucket::None: return "none";
    case FailureBucket::WrongPolarity: return "wrong_polarity";
    case FailureBucket::WrongSolution: return "wrong_solution";
    case FailureBucket::Parse: return "parse";
    case FailureBucket::Length: return "length";
    case FailureBucket::MaxRounds: return "max_rounds";
    case FailureBucket::Other: return "other";
  }
  return "other";
}

FailureBucket bucket_from_name(const std::string& name) {
  for (FailureBucket b : {FailureBucket::None, FailureBucket::WrongPolarity,
                          FailureBucket::WrongSolution, FailureBucket::Parse,
                          FailureBucket::Length, FailureBucket::MaxRounds, FailureBucket::Other})
    if (name == bucket_name(b)) return b;
  throw DataError("unknown failure bucket: " + name);
}

json Verdict::to_json() const {
  json j;
  j["ground_truth_satisfiable"] = ground_truth_satisfiable;
  j["submitted_satisfiable"] = submitted_satisfiable ? json(*submitted_satisfiable) : json();
  j["correct"] = correct;
  j["satisfiability_correct"] = satisfiability_correct;
  j["solution_correct"] = solution_correct;
  j["validation_details"] = validation_details;
  j["failure_bucket"] = bucket_name(failure_bucket);
  return j;
}

Verdict Verdict::from_json(const json& j) {
  Verdict v;
  v.ground_truth_satisfiable = j.at("ground_truth_satisfiable").get<bool>();
  if (j.contains("submitted_satisfiable") && !j.at("submitted_satisfiable").is_null())
    v.submitted_satisfiable = j.at("submitted_satisfiable").get<bool>();
  v.correct = j.at("correct").get<bool>();
  v.satisfiability_correct = j.at("satisfiability_correct").get<bool>();
  v.solution_correct = j.at("solution_correct").get<bool>();
  v.validation_details = j.value("validation_details", "");
  v.failure_bucket = bucket_from_name(j.value("failure_bucket", "other"));
  return v;
}

namespace {

Verdict rejected(const InstanceRecord& inst, bool submitted, FailureBucket bucket,
                 const std::string& detail, bool polarity_ok) {
  Verdict v;
  v.ground_truth_satisfiable = inst.satisfiable;
  v.submitted_satisfiable = submitted;
  v.correct = false;
  v.satisfiability_correct = polarity_ok;
  v.solution_correct = false;
  v.validation_details = detail;
  v.failure_bucket = bucket;
  return v;
}

}  // namespace

Verdict verify(const InstanceRecord& inst, const Submission& sub, const SolverHandle& solver,
               const VerifyOptions& opts) {
  try {
    const FamilySpec& spec = registry_lookup(inst.family);

    if (!sub.satisfiable) {
      Verdict v;
      v.ground_truth_satisfiable = inst.satisfiable;
      v.submitted_satisfiable = false;
      v.satisfiability_correct = !inst.satisfiable;
      v.correct = v.solution_correct = v.satisfiability_correct;
      if (v.correct) {
        v.validation_details = "Correct UNSAT";
        v.failure_bucket = FailureBucket::None;
      } else {
        v.validation_details = "Claimed UNSAT but the instance is satisfiable";
        v.failure_bucket = FailureBucket::WrongPolarity;
      }
      return v;
    }

    if (!inst.satisfiable)
      return rejected(inst, true, FailureBucket::WrongPolarity,
                      "Claimed SAT but the instance is unsatisfiable", false);

    if (!sub.solution)
      return rejected(inst, true, FailureBucket::WrongSolution,
                      "Claimed SAT without providing a solution", true);
    const std::vector<int>& w = *sub.solution;

    // hint compliance: hinted positions must match; hints over variables that
    // the flat layout cannot express reject every flat submission
    for (const auto& h : inst.hints) {
      if (h.pos < 0)
        return rejected(inst, true, FailureBucket::WrongSolution,
                        "Partial assignment: submitted solution not keyed by variable", true);
      if (static_cast<size_t>(h.pos) >= w.size() || w[static_cast<size_t>(h.pos)] != h.value)
        return rejected(inst, true, FailureBucket::WrongSolution,
                        "Partial assignment violated: " + h.var + "=" + std::to_string(h.value),
                        true);
    }

    CheckResult check = check_witness(spec, inst.params, inst.variable_data, w);
    if (!check.ok)
      return rejected(inst, true, FailureBucket::WrongSolution,
                      (check.shape_error ? "Malformed solution: " : "Invalid solution: ") +
                          check.reason,
                      true);

    if (opts.cross_check && spec.build_model && inst.family != "golomb") {
      // unit-constraint re-solve on top of the original encoding
      BuildOutput built = spec.build_model(inst.params, inst.variable_data);
      auto pins = built.pins_for_witness(w);
      if (!pins)
        return rejected(inst, true, FailureBucket::WrongSolution,
                        "Malformed solution: does not fit the witness layout", true);
      auto pinned = assert_values(built.model, *pins);
      auto compiled = compile_to_cnf(pinned);
      auto r = solve(solver, compiled.cnf, opts.budget_s);
      if (r.status == SolveStatus::Timeout)
        return rejected(inst, true, FailureBucket::Other,
                        "Verification timed out after " + std::to_string(opts.budget_s) + " s",
                        true);
      if (r.status == SolveStatus::Unsat)
        return rejected(inst, true, FailureBucket::WrongSolution,
                        "Invalid solution: re-solve with unit constraints is UNSAT", true);
    }

    Verdict v;
    v.ground_truth_satisfiable = true;
    v.submitted_satisfiable = true;
    v.correct = v.satisfiability_correct = v.solution_correct = true;
    v.validation_details = "Solution verified by solver";
    v.failure_bucket = FailureBucket::None;
    return v;
  } catch (const std::exception& e) {
    return rejected(inst, sub.satisfiable, FailureBucket::Other,
                    std::string("verification error: ") + e.what(), false);
  }
}

Verdict unparsed_verdict(const InstanceRecord& inst, const std::string& parse_error,
                         bool truncated, bool at_round_cap) {
  Verdict v;
  v.ground_truth_satisfiable = inst.satisfiable;
  v.correct = v.satisfiability_correct = v.solution_correct = false;
  v.validation_details = "Response did not parse: " + parse_error;
  if (truncated)
    v.failure_bucket = FailureBucket::Length;
  else if (at_round_cap)
    v.failure_bucket = FailureBucket::MaxRounds;
  else
    v.failure_bucket = FailureBucket::Parse;
  return v;
}

}  // namespace combench

#pragma once

// The four released trace records, reconstructed as stored instances plus
// submissions, with their recorded verdicts as the expected outcomes. Shared
// by the verifier unit tests and the acceptance suite.

#include <string>
#include <vector>

#include "combench/generate.hpp"
#include "combench/parse.hpp"
#include "combench/verify.hpp"

namespace combench::testing {

struct GoldenTrace {
  std::string name;
  InstanceRecord instance;
  Submission submission;
  // expected verdict fields
  bool correct;
  bool satisfiability_correct;
  bool solution_correct;
  std::string validation_details;
  FailureBucket bucket;
};

inline std::vector<GoldenTrace> golden_traces() {
  std::vector<GoldenTrace> out;
  {
    GoldenTrace t;
    t.name = "trace1_costas_tool_success";
    t.instance.id = "costas_array_n10__v0_nh";
    t.instance.family = "costas_array";
    t.instance.params = {{"n", 10}};
    t.instance.satisfiable = true;
    t.instance.prompt = registry_lookup("costas_array").render_prompt(t.instance.params, {});
    t.submission.satisfiable = true;
    t.submission.solution = std::vector<int>{0, 1, 3, 7, 4, 9, 8, 6, 2, 5};
    t.submission.reasoning = "backtracking search with constraint propagation";
    t.correct = true;
    t.satisfiability_correct = true;
    t.solution_correct = true;
    t.validation_details = "Solution verified by solver";
    t.bucket = FailureBucket::None;
    out.push_back(std::move(t));
  }
  {
    GoldenTrace t;
    t.name = "trace2_all_interval_no_tools_success";
    t.instance.id = "all_interval_n11__v8_nh";
    t.instance.family = "all_interval";
    t.instance.params = {{"n", 11}};
    t.instance.satisfiable = true;
    t.instance.prompt = registry_lookup("all_interval").render_prompt(t.instance.params, {});
    t.submission.satisfiable = true;
    t.submission.solution = std::vector<int>{0, 10, 1, 9, 2, 8, 3, 7, 4, 6, 5};
    t.submission.reasoning = "zigzag construction";
    t.correct = true;
    t.satisfiability_correct = true;
    t.solution_correct = true;
    t.validation_details = "Solution verified by solver";
    t.bucket = FailureBucket::None;
    out.push_back(std::move(t));
  }
  {
    GoldenTrace t;
    t.name = "trace3_hinted_all_interval_keying_failure";
    t.instance.id = "all_interval_n2__v0_h";
    t.instance.family = "all_interval";
    t.instance.params = {{"n", 2}};
    t.instance.satisfiable = true;
    t.instance.witness = std::vector<int>{0, 1};
    t.instance.hints = {{0, "x[0]", 0}, {-1, "d[0]", 1}};
    t.instance.prompt =
        registry_lookup("all_interval").render_prompt(t.instance.params, {}) +
        "\n\nPartial assignment (fixed values that must be respected):\n- x[0]=0\n- d[0]=1\n"
        "Return a complete solution consistent with these fixed assignments.";
    t.submission.satisfiable = true;
    t.submission.solution = std::vector<int>{0, 1};
    t.submission.reasoning = "x[0]=0 and d[0]=1 force x[1]=1";
    t.correct = false;
    t.satisfiability_correct = true;
    t.solution_correct = false;
    t.validation_details = "Partial assignment: submitted solution not keyed by variable";
    t.bucket = FailureBucket::WrongSolution;
    out.push_back(std::move(t));
  }
  {
    GoldenTrace t;
    t.name = "trace4_langford_correct_unsat";
    t.instance.id = "langford_n6__v8";
    t.instance.family = "langford";
    t.instance.params = {{"n", 6}};
    t.instance.satisfiable = false;
    t.instance.prompt = registry_lookup("langford").render_prompt(t.instance.params, {});
    t.submission.satisfiable = false;
    t.submission.reasoning = "L(2,n) exists iff n = 0 or 3 (mod 4); 6 = 2 (mod 4)";
    t.correct = true;
    t.satisfiability_correct = true;
    t.solution_correct = true;
    t.validation_details = "Correct UNSAT";
    t.bucket = FailureBucket::None;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace combench::testing

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "combench/generate.hpp"
#include "combench/parse.hpp"
#include "combench/solver.hpp"

namespace combench {

enum class FailureBucket { None, WrongPolarity, WrongSolution, Parse, Length, MaxRounds, Other };

const char* bucket_name(FailureBucket b);
FailureBucket bucket_from_name(const std::string& name);

struct Verdict {
  bool ground_truth_satisfiable = false;
  std::optional<bool> submitted_satisfiable;
  bool correct = false;
  bool satisfiability_correct = false;
  bool solution_correct = false;
  std::string validation_details;
  FailureBucket failure_bucket = FailureBucket::Other;

  nlohmann::json to_json() const;  // App-F-style field names
  static Verdict from_json(const nlohmann::json& j);
};

struct VerifyOptions {
  // Re-solve the original encoding with the submission pinned as unit
  // constraints, in addition to the direct checker. Skipped for families
  // without a faithful model (the checker is authoritative there).
  bool cross_check = true;
  double budget_s = 60.0;  // per-attempt hard timeout; never auto-accepts
};

// Grades a parsed submission against a certified instance. Total: anomalies
// land in bucket `other` with detail text. Stateless given its arguments; safe
// to call concurrently with distinct solver handles.
Verdict verify(const InstanceRecord& instance, const Submission& submission,
               const SolverHandle& solver, const VerifyOptions& opts = {});

// Verdict for a response that never parsed. `truncated` marks responses cut
// by the response-length limit (a harness flag, never inferred from text);
// `at_round_cap` marks tool episodes force-parsed at budget exhaustion.
Verdict unparsed_verdict(const InstanceRecord& instance, const std::string& parse_error,
                         bool truncated, bool at_round_cap);

}  // namespace combench

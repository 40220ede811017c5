#pragma once

#include <optional>
#include <string>
#include <vector>

namespace combench {

// A parsed agent answer: satisfiability claim, optional flat witness, free text.
// Reasoning is stored, never graded.
struct Submission {
  bool satisfiable = false;
  std::optional<std::vector<int>> solution;
  std::string reasoning;
};

struct ParseOutcome {
  bool ok = false;
  Submission submission;
  int stage = 0;  // 1 strict, 2 fenced, 3 brace extraction
  std::string error;
};

// Fallback cascade, in order: (1) whole-text strict object parse; (2) fenced
// code blocks, last valid block winning; (3) brace-balanced extraction
// anchored at the first "satisfiable" key. First stage to succeed wins.
ParseOutcome parse_response(const std::string& text);

}  // namespace combench

#pragma once

// 30-case parser-cascade corpus shared by the unit test and the acceptance
// suite: strict parses, fenced blocks (single and multiple with the last valid
// block winning), brace-balanced extraction, truncated and garbage inputs.

#include <optional>
#include <string>
#include <vector>

namespace combench::testing {

struct ParseCase {
  std::string name;
  std::string text;
  int expect_stage = 0;  // 0 = ParseFailure
  std::optional<bool> expect_sat;
  std::optional<std::vector<int>> expect_solution;
};

inline std::vector<ParseCase> parse_corpus() {
  using V = std::vector<int>;
  std::vector<ParseCase> c;
  // --- stage 1: strict whole-text parses
  c.push_back({"strict_sat", R"({"satisfiable": true, "solution": [1, 2, 3], "reasoning": "ok"})",
               1, true, V{1, 2, 3}});
  c.push_back({"strict_unsat", R"({"satisfiable": false, "solution": null, "reasoning": "none"})",
               1, false, std::nullopt});
  c.push_back({"strict_no_solution_key", R"({"satisfiable": false})", 1, false, std::nullopt});
  c.push_back({"strict_whitespace", "\n\n  {\"satisfiable\": true, \"solution\": [0]}  \n", 1,
               true, V{0}});
  c.push_back({"strict_multiline",
               "{\n  \"satisfiable\": true,\n  \"solution\": [5, 4],\n  \"reasoning\": \"x\"\n}",
               1, true, V{5, 4}});
  c.push_back({"strict_negative_values",
               R"({"satisfiable": true, "solution": [-1, 1, -1], "reasoning": ""})", 1, true,
               V{-1, 1, -1}});
  // --- stage 2: fenced blocks
  c.push_back({"fenced_single",
               "The answer follows.\n```json\n{\"satisfiable\": true, \"solution\": [2, 0]}\n```\n",
               2, true, V{2, 0}});
  c.push_back({"fenced_no_tag",
               "Result:\n```\n{\"satisfiable\": false, \"solution\": null}\n```\ndone", 2, false,
               std::nullopt});
  c.push_back({"fenced_multiple_last_valid",
               "First try:\n```json\n{\"satisfiable\": true, \"solution\": [1]}\n```\n"
               "Correction:\n```json\n{\"satisfiable\": true, \"solution\": [9, 9]}\n```\n",
               2, true, V{9, 9}});
  c.push_back({"fenced_first_malformed_second_ok",
               "```json\n{\"satisfiable\": true, \"solution\": [1,}\n```\nand then\n"
               "```json\n{\"satisfiable\": false}\n```\n",
               2, false, std::nullopt});
  c.push_back({"fenced_last_malformed_first_ok",
               "```json\n{\"satisfiable\": true, \"solution\": [7]}\n```\nbut wait\n"
               "```json\n{\"satisfiable\": maybe}\n```\n",
               2, true, V{7}});
  c.push_back({"fenced_with_prose_inside_response",
               "Let me reason step by step. The constraint graph is bipartite, so:\n\n"
               "```json\n{\"satisfiable\": true, \"solution\": [0, 1, 0, 1], \"reasoning\": "
               "\"2-coloring\"}\n```",
               2, true, V{0, 1, 0, 1}});
  c.push_back({"fenced_python_tag",
               "```python\n{\"satisfiable\": true, \"solution\": [3, 3]}\n```", 2, true, V{3, 3}});
  // --- stage 3: brace-balanced extraction
  c.push_back({"brace_mid_paragraph",
               "After exhaustive search I conclude {\"satisfiable\": false, \"solution\": null, "
               "\"reasoning\": \"pigeonhole\"} which settles it.",
               3, false, std::nullopt});
  c.push_back({"brace_prefix_text",
               "FINAL ANSWER: {\"satisfiable\": true, \"solution\": [4, 1, 3, 0], \"reasoning\": "
               "\"verified\"} thanks",
               3, true, V{4, 1, 3, 0}});
  c.push_back({"brace_nested_object",
               "I submit {\"satisfiable\": true, \"solution\": [1], \"meta\": {\"tries\": 3}} now",
               3, true, V{1}});
  c.push_back({"brace_trailing_garbage_after_object",
               "{\"satisfiable\": true, \"solution\": [6]} UNSAT maybe? no.", 3, true, V{6}});
  c.push_back({"brace_string_with_braces",
               "note {\"satisfiable\": false, \"reasoning\": \"tried {1,2} and {2,1}\"} end", 3,
               false, std::nullopt});
  c.push_back({"brace_multiline_prose",
               "The search space is 2^15.\nNo assignment works.\n\nConclusion: "
               "{\"satisfiable\": false,\n \"solution\": null,\n \"reasoning\": \"exhausted\"}\n",
               3, false, std::nullopt});
  c.push_back({"brace_anchored_at_first_key",
               "draft: {\"satisfiable\": true, \"solution\": [8, 8]} (ignore the rest: "
               "\"satisfiable\": false)",
               3, true, V{8, 8}});
  // --- failures
  c.push_back({"garbage_prose", "I believe the answer is UNSATISFIABLE.", 0});
  c.push_back({"empty", "", 0});
  c.push_back({"no_braces_numbers", "solution: 1 2 3 4", 0});
  c.push_back({"truncated_json", R"({"satisfiable": true, "solution": [1, 2, 3)", 0});
  c.push_back({"truncated_mid_key", R"({"satisfi)", 0});
  c.push_back({"satisfiable_not_boolean", R"({"satisfiable": "yes", "solution": [1]})", 0});
  c.push_back({"solution_not_integers", R"({"satisfiable": true, "solution": ["a", "b"]})", 0});
  c.push_back({"array_not_object", R"([1, 2, 3])", 0});
  c.push_back({"fenced_never_closed",
               "```json\n{\"satisfiable\": true, \"solution\": [1]\n", 0});
  c.push_back({"missing_satisfiable_key", R"({"solution": [1, 2], "reasoning": "forgot"})", 0});
  return c;
}

}  // namespace combench::testing

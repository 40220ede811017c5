#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace combench {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  bool spawn_failed = false;
  bool stdout_truncated = false;
  bool stderr_truncated = false;
  std::string stdout_text;
  std::string stderr_text;
  double elapsed_s = 0.0;
};

// Runs argv in a fresh child process, feeding `stdin_data` and capturing both
// output streams (each truncated at max_output bytes). The child is killed
// with SIGKILL once the wall-time budget expires.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data,
                          double budget_s, size_t max_output = 1 << 20);

// Writes `content` to a temp file, appends its path to the whitespace-split
// command, and runs it.
ProcessResult run_with_input_file(const std::string& command, const std::string& content,
                                  const std::string& suffix, double budget_s);

std::vector<std::string> split_command(const std::string& command);

}  // namespace combench

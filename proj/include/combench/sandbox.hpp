#pragma once

#include <optional>
#include <string>
#include <vector>

namespace combench {

// Limits are enforced, not advisory: fresh subprocess per call, wall-time kill,
// output truncation, import-hook denial of network/process/benchmark modules.
struct SandboxPolicy {
  std::string interpreter = "python3";  // COMBENCH_SANDBOX_PYTHON overrides
  double default_timeout_s = 15.0;
  double hard_cap_s = 60.0;
  size_t output_limit = 32 * 1024;
  std::vector<std::string> denied_modules = {
      "socket",  "_socket",   "ssl",    "http",       "urllib",          "ftplib",
      "smtplib", "telnetlib", "asyncio", "subprocess", "multiprocessing", "ctypes",
      // the benchmark's own tooling must be unreachable from inside
      "combench", "math_constraint", "pycsp3", "pysms",
  };

  static SandboxPolicy from_env();
};

struct ScriptResult {
  bool ok = false;
  std::string stdout_text;
  std::string stderr_text;
  bool stdout_truncated = false;
  bool stderr_truncated = false;
  double elapsed_s = 0.0;
  // "" on success; "timeout", "policy", "error", "spawn" otherwise
  std::string failure;
};

// Runs source in a fresh isolated interpreter process. Timeouts are clamped to
// the hard cap; outputs are truncated at the policy limit.
ScriptResult execute_script(const SandboxPolicy& policy, const std::string& source,
                            std::optional<double> timeout_s = std::nullopt);

}  // namespace combench

#include "combench/sandbox.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "combench/subproc.hpp"

namespace combench {

namespace {

constexpr const char* kPolicyMarker = "combench-sandbox-policy:";

// Prelude installed before the user source runs: an import hook denying the
// configured modules, and removal of process-spawning primitives. The user
// source arrives on stdin, so nothing is written to disk.
std::string build_prelude(const SandboxPolicy& policy) {
  std::ostringstream py;
  py << "import builtins, sys\n";
  py << "_denied = {";
  for (size_t i = 0; i < policy.denied_modules.size(); ++i) {
    if (i) py << ", ";
    py << '\'' << policy.denied_modules[i] << '\'';
  }
  py << "}\n";
  py << "_orig_import = builtins.__import__\n"
        "def _guarded(name, *args, **kwargs):\n"
        "    root = name.split('.')[0]\n"
        "    if root in _denied:\n"
        "        raise ImportError('" << kPolicyMarker << " module %r is denied' % root)\n"
        "    return _orig_import(name, *args, **kwargs)\n"
        "builtins.__import__ = _guarded\n"
        "import os as _os\n"
        "def _blocked(*a, **k):\n"
        "    raise PermissionError('" << kPolicyMarker << " process spawning is denied')\n"
        "for _fn in ('fork', 'forkpty', 'system', 'popen', 'execv', 'execve', 'execvp',\n"
        "            'execvpe', 'execl', 'execle', 'execlp', 'execlpe', 'spawnl', 'spawnle',\n"
        "            'spawnlp', 'spawnlpe', 'spawnv', 'spawnve', 'spawnvp', 'spawnvpe',\n"
        "            'posix_spawn', 'posix_spawnp'):\n"
        "    if hasattr(_os, _fn): setattr(_os, _fn, _blocked)\n"
        "_src = sys.stdin.read()\n"
        "_g = {'__name__': '__main__'}\n"
        "exec(compile(_src, '<sandbox>', 'exec'), _g)\n";
  return py.str();
}

}  // namespace

SandboxPolicy SandboxPolicy::from_env() {
  SandboxPolicy p;
  const char* interp = std::getenv("COMBENCH_SANDBOX_PYTHON");
  if (interp && *interp) p.interpreter = interp;
  return p;
}

ScriptResult execute_script(const SandboxPolicy& policy, const std::string& source,
                            std::optional<double> timeout_s) {
  double budget = std::min(timeout_s.value_or(policy.default_timeout_s), policy.hard_cap_s);
  std::vector<std::string> argv{policy.interpreter, "-I", "-c", build_prelude(policy)};
  ProcessResult pr = run_process(argv, source, budget, policy.output_limit);

  ScriptResult res;
  res.stdout_text = pr.stdout_text;
  res.stderr_text = pr.stderr_text;
  res.stdout_truncated = pr.stdout_truncated;
  res.stderr_truncated = pr.stderr_truncated;
  res.elapsed_s = pr.timed_out ? budget : pr.elapsed_s;
  if (pr.spawn_failed) {
    res.failure = "spawn";
    return res;
  }
  if (pr.timed_out) {
    res.failure = "timeout";
    return res;
  }
  if (pr.exit_code != 0) {
    res.failure =
        pr.stderr_text.find(kPolicyMarker) != std::string::npos ? "policy" : "error";
    return res;
  }
  res.ok = true;
  return res;
}

}  // namespace combench

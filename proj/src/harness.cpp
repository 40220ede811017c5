#include "combench/harness.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "combench/errors.hpp"
#include "combench/rng.hpp"

namespace combench {

using nlohmann::json;

const char* kSystemPromptBase =
    "You are solving constraint satisfaction problems. Analyze the problem\n"
    "carefully and determine:\n"
    "1. Whether the problem is satisfiable (SAT) or unsatisfiable (UNSAT)\n"
    "2. If satisfiable, provide a valid solution\n"
    "\n"
    "Respond with a JSON object in the following format:\n"
    "{\n"
    "    \"satisfiable\": true/false,\n"
    "    \"solution\": [list of values] or null if unsatisfiable,\n"
    "    \"reasoning\": \"Brief explanation of your reasoning\"\n"
    "}\n"
    "\n"
    "Important:\n"
    "- For satisfiability, true means a solution exists, false means it's\n"
    "  mathematically impossible\n"
    "- Solutions should be provided as a list of integers\n"
    "- Be precise with your answer - incorrect solutions will be rejected\n";

const char* kSystemPromptTools =
    "You may optionally call tools before submitting your final answer:\n"
    "- execute_python(code, timeout_seconds): run Python code in an isolated\n"
    "  subprocess. Standard library plus pysat/z3/pycosat available; cannot\n"
    "  import math_constraint/pycsp3/pysms, access network, or spawn\n"
    "  subprocesses. Default timeout 15s, max 60s.\n"
    "- submit_answer(satisfiable, solution, reasoning): submit your final\n"
    "  answer.\n"
    "If you use tools, always finish by calling submit_answer.\n";

json tool_schemas() {
  return json::array(
      {{{"name", "execute_python"},
        {"description", "Run Python code in an isolated subprocess."},
        {"parameters",
         {{"type", "object"},
          {"properties",
           {{"code", {{"type", "string"}}},
            {"timeout_seconds", {{"type", "integer"}}}}},
          {"required", json::array({"code"})}}}},
       {{"name", "submit_answer"},
        {"description", "Submit your final answer."},
        {"parameters",
         {{"type", "object"},
          {"properties",
           {{"satisfiable", {{"type", "boolean"}}},
            {"solution", {{"type", json::array({"array", "null"})}}},
            {"reasoning", {{"type", "string"}}}}},
          {"required", json::array({"satisfiable"})}}}}});
}

AgentReply ScriptedAgent::respond(const std::vector<Message>&, const json&) {
  if (replies_.empty()) return AgentReply{};
  size_t i = std::min(next_, replies_.size() - 1);
  ++next_;
  return replies_[i];
}

AgentReply make_submit_reply(bool satisfiable, const std::optional<std::vector<int>>& solution,
                             const std::string& reasoning) {
  AgentReply r;
  json args;
  args["satisfiable"] = satisfiable;
  args["solution"] = solution ? json(*solution) : json();
  args["reasoning"] = reasoning;
  r.tool_call = ToolCallRequest{"submit_answer", args};
  return r;
}

AgentReply make_execute_reply(const std::string& code, double timeout_s) {
  AgentReply r;
  json args;
  args["code"] = code;
  args["timeout_seconds"] = timeout_s;
  r.tool_call = ToolCallRequest{"execute_python", args};
  return r;
}

AgentReply make_text_reply(const std::string& text, bool truncated) {
  AgentReply r;
  r.text = text;
  r.truncated_by_length = truncated;
  return r;
}

namespace {

std::string submission_text(bool satisfiable, const std::optional<std::vector<int>>& solution,
                            const std::string& reasoning) {
  json j;
  j["satisfiable"] = satisfiable;
  j["solution"] = solution ? json(*solution) : json();
  j["reasoning"] = reasoning;
  return j.dump();
}

}  // namespace

AgentFactory always_unsat_factory(bool via_submit_tool) {
  return [via_submit_tool](const InstanceRecord&) -> std::unique_ptr<AgentPort> {
    std::vector<AgentReply> replies;
    if (via_submit_tool)
      replies.push_back(make_submit_reply(false, std::nullopt, "assume infeasible"));
    else
      replies.push_back(make_text_reply(submission_text(false, std::nullopt, "assume infeasible")));
    return std::make_unique<ScriptedAgent>(std::move(replies));
  };
}

AgentFactory oracle_factory(bool via_submit_tool) {
  return [via_submit_tool](const InstanceRecord& inst) -> std::unique_ptr<AgentPort> {
    bool sat = inst.satisfiable && inst.witness.has_value();
    std::optional<std::vector<int>> sol;
    if (sat) sol = inst.witness;
    std::vector<AgentReply> replies;
    if (via_submit_tool)
      replies.push_back(make_submit_reply(sat, sol, "reference answer"));
    else
      replies.push_back(make_text_reply(submission_text(sat, sol, "reference answer")));
    return std::make_unique<ScriptedAgent>(std::move(replies));
  };
}

// --- trace serialization ---------------------------------------------------------

json Trace::to_json() const {
  json j;
  j["instance_id"] = instance_id;
  j["condition"] = condition;
  j["rounds"] = json::array();
  for (const auto& r : rounds) {
    json jr;
    jr["tool"] = r.tool;
    jr["args_digest"] = r.args_digest;
    jr["ok"] = r.ok;
    jr["latency_ms"] = r.latency_ms;
    if (!r.stdout_text.empty()) jr["stdout"] = r.stdout_text;
    if (!r.stderr_text.empty()) jr["stderr"] = r.stderr_text;
    j["rounds"].push_back(jr);
  }
  j["explicit_submission"] = explicit_submission;
  j["forced_submit"] = forced_submit;
  j["response_truncated"] = response_truncated;
  j["final_text"] = final_text;
  j["final_submission"] = final_submission;
  j["verdict"] = verdict.to_json();
  return j;
}

Trace Trace::from_json(const json& j) {
  Trace t;
  t.instance_id = j.at("instance_id").get<std::string>();
  t.condition = j.at("condition").get<std::string>();
  for (const auto& jr : j.at("rounds")) {
    TraceRound r;
    r.tool = jr.at("tool").get<std::string>();
    r.args_digest = jr.value("args_digest", "");
    r.ok = jr.value("ok", false);
    r.latency_ms = jr.value("latency_ms", 0.0);
    r.stdout_text = jr.value("stdout", "");
    r.stderr_text = jr.value("stderr", "");
    t.rounds.push_back(std::move(r));
  }
  t.explicit_submission = j.value("explicit_submission", false);
  t.forced_submit = j.value("forced_submit", false);
  t.response_truncated = j.value("response_truncated", false);
  t.final_text = j.value("final_text", "");
  if (j.contains("final_submission")) t.final_submission = j.at("final_submission");
  t.verdict = Verdict::from_json(j.at("verdict"));
  return t;
}

std::string traces_to_jsonl(const std::vector<Trace>& traces) {
  std::ostringstream out;
  for (const auto& t : traces) out << t.to_json().dump() << '\n';
  return out.str();
}

std::vector<Trace> traces_from_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open traces: " + path);
  std::vector<Trace> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(Trace::from_json(json::parse(line)));
  }
  return out;
}

// --- episode loop ------------------------------------------------------------------

namespace {

std::string digest(const json& args) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(stable_hash64(args.dump())));
  return hex;
}

std::optional<Submission> submission_from_args(const json& args) {
  auto sat = args.find("satisfiable");
  if (sat == args.end() || !sat->is_boolean()) return std::nullopt;
  Submission s;
  s.satisfiable = sat->get<bool>();
  auto sol = args.find("solution");
  if (sol != args.end() && !sol->is_null()) {
    if (!sol->is_array()) return std::nullopt;
    std::vector<int> values;
    for (const auto& v : *sol) {
      if (!v.is_number_integer()) return std::nullopt;
      values.push_back(v.get<int>());
    }
    s.solution = std::move(values);
  }
  if (args.contains("reasoning") && args.at("reasoning").is_string())
    s.reasoning = args.at("reasoning").get<std::string>();
  return s;
}

}  // namespace

Trace run_episode(AgentPort& agent, const InstanceRecord& inst, const std::string& condition,
                  const SolverHandle& solver, const EpisodeOptions& opts) {
  Trace trace;
  trace.instance_id = inst.id;
  trace.condition = condition;
  const bool tools = condition == "tools";

  std::vector<Message> conv;
  std::string system = kSystemPromptBase;
  if (tools) system += kSystemPromptTools;
  conv.push_back({"system", system});
  conv.push_back({"user", inst.prompt});
  json schemas = tools ? tool_schemas() : json::array();

  auto grade_text = [&](const std::string& text, bool truncated, bool at_cap) {
    trace.final_text = text;
    trace.response_truncated = truncated;
    auto parsed = parse_response(text);
    if (!parsed.ok) {
      trace.verdict = unparsed_verdict(inst, parsed.error, truncated, at_cap);
      return;
    }
    json js;
    js["satisfiable"] = parsed.submission.satisfiable;
    js["solution"] = parsed.submission.solution ? json(*parsed.submission.solution) : json();
    js["reasoning"] = parsed.submission.reasoning;
    trace.final_submission = js;
    trace.verdict = verify(inst, parsed.submission, solver, opts.verify);
  };

  try {
    if (!tools) {
      AgentReply reply = agent.respond(conv, schemas);
      grade_text(reply.text, reply.truncated_by_length, false);
      return trace;
    }

    std::string last_text;
    bool last_truncated = false;
    for (;;) {
      AgentReply reply = agent.respond(conv, schemas);
      if (!reply.text.empty()) {
        last_text = reply.text;
        last_truncated = reply.truncated_by_length;
      }
      if (!reply.tool_call) break;  // plain text ends the episode

      if (static_cast<int>(trace.rounds.size()) >= opts.round_budget) break;  // cap reached

      const ToolCallRequest& call = *reply.tool_call;
      TraceRound round;
      round.tool = call.name;
      round.args_digest = digest(call.arguments);

      if (call.name == "submit_answer") {
        round.ok = true;
        round.latency_ms = 0.0;
        trace.rounds.push_back(round);
        trace.explicit_submission = true;
        trace.final_submission = call.arguments;
        auto sub = submission_from_args(call.arguments);
        if (sub) {
          trace.final_text = call.arguments.dump();
          trace.verdict = verify(inst, *sub, solver, opts.verify);
        } else {
          trace.verdict = unparsed_verdict(inst, "malformed submit_answer arguments", false, false);
        }
        return trace;
      }

      if (call.name == "execute_python") {
        std::string code = call.arguments.value("code", "");
        std::optional<double> timeout;
        if (call.arguments.contains("timeout_seconds"))
          timeout = call.arguments.at("timeout_seconds").get<double>();
        auto t0 = std::chrono::steady_clock::now();
        ScriptResult sr = execute_script(opts.sandbox, code, timeout);
        round.ok = sr.ok;
        round.latency_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (opts.store_tool_output) {
          round.stdout_text = sr.stdout_text;
          round.stderr_text = sr.stderr_text;
        }
        trace.rounds.push_back(round);
        std::string result = sr.ok ? sr.stdout_text
                                   : "error (" + sr.failure + "):\n" + sr.stderr_text;
        conv.push_back({"assistant", reply.text});
        conv.push_back({"tool", result});
        continue;
      }

      round.ok = false;
      trace.rounds.push_back(round);
      conv.push_back({"assistant", reply.text});
      conv.push_back({"tool", "error: unknown tool " + call.name});
    }

    // no explicit submission: force-submit the final natural-language response
    trace.forced_submit = true;
    bool at_cap = static_cast<int>(trace.rounds.size()) >= opts.round_budget;
    grade_text(last_text, last_truncated, at_cap);
    return trace;
  } catch (const std::exception& e) {
    trace.verdict = unparsed_verdict(inst, "", false, false);
    trace.verdict.failure_bucket = FailureBucket::Other;
    trace.verdict.validation_details = std::string("agent failure: ") + e.what();
    return trace;
  }
}

}  // namespace combench

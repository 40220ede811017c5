#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "combench/generate.hpp"
#include "combench/sandbox.hpp"
#include "combench/verify.hpp"

namespace combench {

struct Message {
  std::string role;  // system | user | assistant | tool
  std::string content;
};

struct ToolCallRequest {
  std::string name;
  nlohmann::json arguments;
};

struct AgentReply {
  std::string text;  // assistant text (may accompany a tool call)
  std::optional<ToolCallRequest> tool_call;
  bool truncated_by_length = false;  // hit the response-length limit
};

// Caller-supplied conversational responder. Outputs are treated as untrusted
// and size-limited by the harness.
class AgentPort {
 public:
  virtual ~AgentPort() = default;
  virtual AgentReply respond(const std::vector<Message>& conversation,
                             const nlohmann::json& tool_schemas) = 0;
};

using AgentFactory = std::function<std::unique_ptr<AgentPort>(const InstanceRecord&)>;

// Scripted agent playing back a fixed reply sequence (repeats the last one).
class ScriptedAgent : public AgentPort {
 public:
  explicit ScriptedAgent(std::vector<AgentReply> replies) : replies_(std::move(replies)) {}
  AgentReply respond(const std::vector<Message>&, const nlohmann::json&) override;

 private:
  std::vector<AgentReply> replies_;
  size_t next_ = 0;
};

AgentReply make_submit_reply(bool satisfiable, const std::optional<std::vector<int>>& solution,
                             const std::string& reasoning);
AgentReply make_execute_reply(const std::string& code, double timeout_s = 15.0);
AgentReply make_text_reply(const std::string& text, bool truncated = false);

// Canned factories for CLI/test use: always-UNSAT, and an oracle that submits
// the stored reference witness.
AgentFactory always_unsat_factory(bool via_submit_tool);
AgentFactory oracle_factory(bool via_submit_tool);

struct TraceRound {
  std::string tool;
  std::string args_digest;  // stable hash of the arguments
  bool ok = false;
  double latency_ms = 0.0;
  std::string stdout_text;  // truncated; empty in lean storage mode
  std::string stderr_text;
};

struct Trace {
  std::string instance_id;
  std::string condition;  // no_tools | tools
  std::vector<TraceRound> rounds;
  bool explicit_submission = false;
  bool forced_submit = false;
  bool response_truncated = false;
  std::string final_text;             // last natural-language response
  nlohmann::json final_submission;    // structured submission when one parsed
  Verdict verdict;

  nlohmann::json to_json() const;
  static Trace from_json(const nlohmann::json& j);
};

std::string traces_to_jsonl(const std::vector<Trace>& traces);
std::vector<Trace> traces_from_jsonl_file(const std::string& path);

extern const char* kSystemPromptBase;   // identical across conditions
extern const char* kSystemPromptTools;  // appended in the tools condition
nlohmann::json tool_schemas();

struct EpisodeOptions {
  int round_budget = 8;  // the agent is never told this
  SandboxPolicy sandbox;
  VerifyOptions verify;
  bool store_tool_output = true;  // false: status-and-latency-only traces
};

// One evaluation episode. tools: interleaved execute/submit rounds within the
// budget; budget exhaustion (or a plain-text stop) force-submits the final
// natural-language response through the parser cascade.
Trace run_episode(AgentPort& agent, const InstanceRecord& instance, const std::string& condition,
                  const SolverHandle& solver, const EpisodeOptions& opts = {});

}  // namespace combench

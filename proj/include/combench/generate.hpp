#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "combench/certify.hpp"
#include "combench/families.hpp"

namespace combench {

// One parameter domain: a fixed value, an inclusive range, or an explicit set.
struct ParamDomain {
  std::vector<int> values;  // materialized candidates, in order
};

struct FamilyProfile {
  std::string family;
  int count = 1;
  std::map<std::string, ParamDomain> params;
  // "sweep" walks the Cartesian product of the domains in order (cycling);
  // "random" samples each parameter independently per instance.
  std::string mode = "sweep";
  double hint_probability = 0.0;  // chance a SAT instance gets a partial assignment
  double hint_fraction = 0.25;    // fraction of hintable positions to fix
};

struct Profile {
  uint64_t seed = 0;
  double solver_budget_s = 3600.0;
  uint64_t solver_conflict_budget = 0;  // deterministic effort cap, 0 = off
  bool record_wall_time = false;        // off by default: datasets stay byte-stable
  std::vector<FamilyProfile> families;

  static Profile from_json(const nlohmann::json& j);
  static Profile load(const std::string& path);
};

struct Hint {
  int pos = -1;  // position in the flat witness layout, -1 when not representable
  std::string var;
  int value = 0;
};

struct Difficulty {
  uint64_t solver_effort = 0;   // conflicts; deterministic
  size_t vars = 0;
  size_t constraints = 0;
  std::optional<int> edge_count;
  double log10_space = 0.0;
  std::optional<double> solver_time_s;  // wall time, recorded only on request
};

struct InstanceRecord {
  std::string id;
  std::string family;
  Params params;
  VData variable_data;  // null when the family has fixed structure
  std::string prompt;
  bool satisfiable = false;
  std::optional<std::vector<int>> witness;  // reference witness, SAT only
  std::vector<Hint> hints;
  Difficulty difficulty;
  std::string contract_version = "1";

  nlohmann::json to_json() const;
  static InstanceRecord from_json(const nlohmann::json& j);
};

std::string dataset_to_jsonl(const std::vector<InstanceRecord>& records);
std::vector<InstanceRecord> dataset_from_jsonl_file(const std::string& path);
void write_dataset(const std::vector<InstanceRecord>& records, const std::string& path);

// Re-renders the prompt with a partial-assignment block drawn from the
// reference solution; hint positions are distinct. Raises NotSatisfiable on
// UNSAT records.
InstanceRecord attach_hints(const InstanceRecord& record, uint64_t seed, double fraction,
                            const SolverHandle& solver);

// Admission filter: true iff at least one cohort member got the instance
// wrong. Raises EmptyCohort when no outcomes are supplied.
bool admit(const InstanceRecord& record, const std::map<std::string, bool>& cohort_correct);

struct GenerateOptions {
  int workers = 1;
  // Checkpoint/part files are written next to this path when non-empty;
  // rerunning with the same arguments resumes without duplicating work.
  std::string output_path;
  size_t stop_after_accepted = SIZE_MAX;  // early stop (exercises resume)
  std::string external_solver;            // forwarded to SolverHandle
};

struct GenerateStats {
  size_t accepted = 0;
  size_t dropped_timeout = 0;
  size_t dropped_invalid_params = 0;
  std::vector<double> certify_seconds;  // wall time per accepted record
};

struct GenerateResult {
  std::vector<InstanceRecord> records;
  GenerateStats stats;
};

// Profile-driven manufacturing. Deterministic record content for a fixed
// (profile, seed); with workers > 1 the record set is deterministic, the
// on-disk order is id-sorted.
GenerateResult generate(const Profile& profile, const GenerateOptions& opts = {});

}  // namespace combench

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "combench/graph.hpp"
#include "combench/model.hpp"
#include "combench/rng.hpp"

namespace combench {

using Params = std::map<std::string, int>;
using VData = nlohmann::json;  // family-specific auxiliary data (edge lists, clues)

struct ParamSpec {
  std::string name;
  int lo;
  int hi;
};

struct WitnessSchema {
  long long min_len = 0;
  long long max_len = 0;  // == min_len for fixed-length layouts
  int value_lo = 0;
  int value_hi = 0;
  bool edge_pairs = false;  // graph families: flat (u0,v0,u1,v1,...) pairs
};

struct CheckResult {
  bool ok = false;
  bool shape_error = false;  // malformed shape vs violated constraint
  std::string reason;

  static CheckResult pass() { return {true, false, ""}; }
  static CheckResult shape(std::string why) { return {false, true, std::move(why)}; }
  static CheckResult fail(std::string why) { return {false, false, std::move(why)}; }
};

// A built constraint model plus the mapping between model variables and the
// family's flat witness layout.
struct BuildOutput {
  ConstraintModel model;
  std::vector<VarId> witness_vars;  // direct layouts: witness[i] <-> witness_vars[i]
  bool graph_witness = false;       // edge-list layouts: witness_vars are the lex edge vars
  int graph_n = 0;
  // Variables eligible for prompt hints, in the order hint positions refer to.
  // Defaults to witness_vars; some families expose extra natural variables.
  std::vector<VarId> hint_vars;

  // flat witness -> variable pins (for unit-constraint re-solve)
  std::optional<std::map<VarId, int>> pins_for_witness(const std::vector<int>& witness) const;
  // decoded assignment -> flat witness
  std::vector<int> witness_from_assignment(const std::vector<int>& dense) const;
};

struct FamilySpec {
  std::string name;
  std::string backend_class;  // "pycsp" or "pysms"
  std::vector<ParamSpec> param_schema;
  bool needs_variable_data = false;

  // At least one of build_model / native_certify is present (enforced by the
  // registry); build_model is only provided when the model captures the full
  // family semantics, so that check_witness and unit-constraint re-solve agree.
  std::function<BuildOutput(const Params&, const VData&)> build_model;
  std::function<VData(const Params&, uint64_t seed)> sample_variable_data;
  std::function<WitnessSchema(const Params&, const VData&)> witness_schema;
  std::function<CheckResult(const Params&, const VData&, const std::vector<int>&)> check_witness;
  std::function<std::string(const Params&, const VData&)> render_prompt;
  // Optional satisfiability-preserving pins used only during polarity search
  // (static symmetry breaking). Never applied when re-solving submissions.
  std::function<std::map<std::string, int>(const Params&, const VData&)> search_pins;
  // Residual exact predicates the CNF cannot express (used by the certifier's
  // enumerate-and-filter loop for native graph families).
  std::function<bool(const Params&, const VData&, const std::vector<int>&)> native_filter;
  // Relaxed model for certification search when build_model cannot express the
  // full semantics: CNF-encodable constraints only, paired with native_filter
  // over decoded candidates.
  std::function<BuildOutput(const Params&, const VData&)> search_model;
  // Fully native decision procedure (complete search), bypassing CNF.
  // Returns SAT witness / UNSAT / nullopt on budget exhaustion.
  struct NativeOutcome {
    bool sat = false;
    std::vector<int> witness;
  };
  std::function<std::optional<NativeOutcome>(const Params&, const VData&, double budget_s)>
      native_certify;

  bool validate_params(const Params& p, std::string* why = nullptr) const;
};

// Immutable registry over all shipped families.
const FamilySpec& registry_lookup(const std::string& name);  // raises UnknownFamily
std::vector<std::string> family_names();

// Convenience wrappers matching the per-family contract.
CheckResult check_witness(const FamilySpec& spec, const Params& params, const VData& vdata,
                          const std::vector<int>& witness);
VData sample_variable_data(const FamilySpec& spec, const Params& params, uint64_t seed);

// Registration internals shared by the family translation units.
namespace detail {
void register_family(FamilySpec spec);
void register_seq_families();
void register_graph_families();
std::string fmt(const std::string& tmpl, const std::map<std::string, std::string>& subs);
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& emit);
}  // namespace detail

}  // namespace combench

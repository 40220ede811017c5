#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "combench/model.hpp"

namespace combench {

// Clause list over positive integer atoms; literals are signed atom ids.
struct CnfFormula {
  int num_atoms = 0;
  std::vector<std::vector<int>> clauses;

  void add_clause(std::vector<int> lits) { clauses.push_back(std::move(lits)); }
};

// Bidirectional mapping between (variable, domain value) indicator atoms and
// CNF atoms. Every model variable has exactly-one true indicator in any CNF
// model, which is what makes decode well-defined.
class VarMap {
 public:
  int atom(VarId var, int value) const;       // 0 if (var, value) is not mapped
  bool has(VarId var, int value) const { return atom(var, value) != 0; }
  int indicator_count() const { return total_indicators_; }

  // Decodes the set of true atoms (1-indexed bitset) into a total assignment.
  // Raises InconsistentModel when a variable has zero or multiple true
  // indicators.
  std::map<VarId, int> decode(const std::vector<bool>& true_atoms) const;
  std::vector<int> decode_dense(const std::vector<bool>& true_atoms) const;

  // Encodes a total assignment as the set of true indicator atoms.
  std::vector<int> encode(const std::map<VarId, int>& assignment) const;

  const std::vector<int>& domain_of(VarId var) const;
  size_t var_count() const { return offsets_.size(); }

 private:
  friend struct Encoder;
  std::vector<int> offsets_;               // first atom of each var block
  std::vector<std::vector<int>> domains_;  // per-var domain values, in atom order
  int total_indicators_ = 0;
};

struct EncodeOptions {
  // Pairwise at-most-one up to this domain size, sequential counter above.
  int pairwise_amo_max = 8;
  // Guard against blow-ups: total indicator atoms and per-constraint work.
  long long max_indicator_atoms = 2'000'000;
  long long max_aux_atoms = 8'000'000;
};

struct CompiledCnf {
  CnfFormula cnf;
  VarMap varmap;
};

// Direct (one-hot) encoding of the model. The CNF is equisatisfiable with the
// model, and each model solution corresponds to exactly one CNF assignment of
// the indicator atoms. Tie-breaking and clause ordering are deterministic
// functions of model construction order.
CompiledCnf compile_to_cnf(const ConstraintModel& model, const EncodeOptions& opts = {});

std::map<VarId, int> decode_model(const VarMap& varmap, const std::vector<bool>& true_atoms);

// Standard DIMACS: `p cnf V C` header, clauses as zero-terminated lines.
void emit_dimacs(const CnfFormula& cnf, std::ostream& out);
std::string to_dimacs(const CnfFormula& cnf);

}  // namespace combench

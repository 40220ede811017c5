#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "combench/errors.hpp"

namespace combench {

using VarId = int32_t;

// Integer decision variable over an explicit finite domain (sorted, unique).
struct IntVar {
  VarId id = -1;
  std::string name;
  std::vector<int> domain;

  bool contains(int v) const;
};

enum class Cmp { Le, Eq, Ge };

bool cmp_holds(long long lhs, Cmp cmp, long long rhs);
const char* cmp_name(Cmp cmp);

struct LinTerm {
  int coeff;
  VarId var;
};

// Operand of an Element array: either a variable or a constant.
struct Operand {
  bool is_var;
  int value;  // VarId when is_var, literal constant otherwise

  static Operand of_var(VarId v) { return Operand{true, v}; }
  static Operand of_const(int c) { return Operand{false, c}; }
};

struct AllDifferent {
  std::vector<VarId> vars;
};

// sum(coeff_i * var_i) cmp bound
struct LinearSum {
  std::vector<LinTerm> terms;
  Cmp cmp;
  long long bound;
};

// |{ i : vars[i] = value }| cmp bound
struct CardinalityOfValue {
  std::vector<VarId> vars;
  int value;
  Cmp cmp;
  int bound;
};

// array[index] = result
struct ElementConstraint {
  VarId index;
  std::vector<Operand> array;
  VarId result;
};

// a != b + offset
struct NotEqualOffset {
  VarId a;
  VarId b;
  int offset = 0;
};

struct BoolLit {
  VarId var;
  bool positive;
};

// Disjunction over 0/1 variables.
struct ClauseConstraint {
  std::vector<BoolLit> lits;
};

// sum over pairs of (a_i * b_i), all 0/1 variables, cmp bound
struct ProductPairSum {
  std::vector<std::pair<VarId, VarId>> pairs;
  Cmp cmp;
  int bound;
};

// Extensional constraint: the tuple of vars must match one of the allowed rows.
struct TableAllowed {
  std::vector<VarId> vars;
  std::vector<std::vector<int>> tuples;
};

using Constraint = std::variant<AllDifferent, LinearSum, CardinalityOfValue, ElementConstraint,
                                NotEqualOffset, ClauseConstraint, ProductPairSum, TableAllowed>;

// Encoding-agnostic problem statement: variables plus an ordered constraint list.
// Construction is single-threaded; a finished model is immutable by convention
// and safe to share read-only.
class ConstraintModel {
 public:
  VarId add_var(const std::string& name, int lo, int hi);
  VarId add_var(const std::string& name, std::vector<int> domain);

  void add(Constraint c);

  const std::vector<IntVar>& vars() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const IntVar& var(VarId id) const;
  VarId find_var(const std::string& name) const;  // -1 if absent

  size_t var_count() const { return vars_.size(); }
  size_t constraint_count() const { return constraints_.size(); }
  // sum of log10(domain size): the search-space proxy recorded per instance.
  double log10_search_space() const;

  // Checks a full assignment (indexed by VarId) against one constraint.
  // This is the semantic ground truth the CNF encoding must agree with.
  bool constraint_satisfied(const Constraint& c, const std::vector<int>& assignment) const;
  bool satisfied(const std::vector<int>& assignment) const;

 private:
  void check_var(VarId v, const char* ctx) const;
  void validate(const Constraint& c) const;

  std::vector<IntVar> vars_;
  std::vector<Constraint> constraints_;
  std::map<std::string, VarId> by_name_;
};

// Returns a copy of `model` whose solutions are exactly the original's
// consistent with `partial`. Values outside a variable's domain pin the model
// to an empty table (trivially UNSAT) rather than raising: this implements
// rejection of out-of-range submissions. Unknown variables raise.
ConstraintModel assert_values(const ConstraintModel& model, const std::map<VarId, int>& partial);

}  // namespace combench

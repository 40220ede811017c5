#include "combench/model.hpp"

#include <algorithm>
#include <cmath>

namespace combench {

bool IntVar::contains(int v) const {
  return std::binary_search(domain.begin(), domain.end(), v);
}

bool cmp_holds(long long lhs, Cmp cmp, long long rhs) {
  switch (cmp) {
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Eq: return lhs == rhs;
    case Cmp::Ge: return lhs >= rhs;
  }
  return false;
}

const char* cmp_name(Cmp cmp) {
  switch (cmp) {
    case Cmp::Le: return "<=";
    case Cmp::Eq: return "=";
    case Cmp::Ge: return ">=";
  }
  return "?";
}

VarId ConstraintModel::add_var(const std::string& name, int lo, int hi) {
  if (lo > hi) throw Error("empty domain for variable " + name);
  std::vector<int> dom;
  dom.reserve(static_cast<size_t>(hi - lo + 1));
  for (int v = lo; v <= hi; ++v) dom.push_back(v);
  return add_var(name, std::move(dom));
}

VarId ConstraintModel::add_var(const std::string& name, std::vector<int> domain) {
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  if (domain.empty()) throw Error("empty domain for variable " + name);
  if (by_name_.count(name)) throw Error("duplicate variable name " + name);
  VarId id = static_cast<VarId>(vars_.size());
  vars_.push_back(IntVar{id, name, std::move(domain)});
  by_name_[name] = id;
  return id;
}

const IntVar& ConstraintModel::var(VarId id) const {
  if (id < 0 || static_cast<size_t>(id) >= vars_.size())
    throw UnknownVariable("variable id " + std::to_string(id) + " out of range");
  return vars_[static_cast<size_t>(id)];
}

VarId ConstraintModel::find_var(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

double ConstraintModel::log10_search_space() const {
  double s = 0.0;
  for (const auto& v : vars_) s += std::log10(static_cast<double>(v.domain.size()));
  return s;
}

void ConstraintModel::check_var(VarId v, const char* ctx) const {
  if (v < 0 || static_cast<size_t>(v) >= vars_.size())
    throw UnknownVariable(std::string(ctx) + ": unknown variable id " + std::to_string(v));
}

static bool is_boolish(const IntVar& v) {
  for (int x : v.domain)
    if (x != 0 && x != 1) return false;
  return true;
}

void ConstraintModel::validate(const Constraint& c) const {
  if (auto* ad = std::get_if<AllDifferent>(&c)) {
    for (VarId v : ad->vars) check_var(v, "AllDifferent");
  } else if (auto* ls = std::get_if<LinearSum>(&c)) {
    for (const auto& t : ls->terms) check_var(t.var, "LinearSum");
  } else if (auto* cv = std::get_if<CardinalityOfValue>(&c)) {
    for (VarId v : cv->vars) check_var(v, "CardinalityOfValue");
  } else if (auto* el = std::get_if<ElementConstraint>(&c)) {
    check_var(el->index, "Element");
    check_var(el->result, "Element");
    for (const auto& op : el->array)
      if (op.is_var) check_var(op.value, "Element");
  } else if (auto* ne = std::get_if<NotEqualOffset>(&c)) {
    check_var(ne->a, "NotEqual");
    check_var(ne->b, "NotEqual");
  } else if (auto* cl = std::get_if<ClauseConstraint>(&c)) {
    for (const auto& l : cl->lits) {
      check_var(l.var, "Clause");
      if (!is_boolish(vars_[static_cast<size_t>(l.var)]))
        throw Error("Clause literal over non-boolean variable " +
                    vars_[static_cast<size_t>(l.var)].name);
    }
  } else if (auto* pp = std::get_if<ProductPairSum>(&c)) {
    for (const auto& [a, b] : pp->pairs) {
      check_var(a, "ProductPairSum");
      check_var(b, "ProductPairSum");
      if (!is_boolish(vars_[static_cast<size_t>(a)]) || !is_boolish(vars_[static_cast<size_t>(b)]))
        throw Error("ProductPairSum over non-boolean variables");
    }
  } else if (auto* tb = std::get_if<TableAllowed>(&c)) {
    for (VarId v : tb->vars) check_var(v, "Table");
    for (const auto& row : tb->tuples)
      if (row.size() != tb->vars.size()) throw Error("Table tuple arity mismatch");
  }
}

void ConstraintModel::add(Constraint c) {
  validate(c);
  constraints_.push_back(std::move(c));
}

bool ConstraintModel::constraint_satisfied(const Constraint& c,
                                           const std::vector<int>& a) const {
  if (auto* ad = std::get_if<AllDifferent>(&c)) {
    for (size_t i = 0; i < ad->vars.size(); ++i)
      for (size_t j = i + 1; j < ad->vars.size(); ++j)
        if (a[static_cast<size_t>(ad->vars[i])] == a[static_cast<size_t>(ad->vars[j])])
          return false;
    return true;
  }
  if (auto* ls = std::get_if<LinearSum>(&c)) {
    long long sum = 0;
    for (const auto& t : ls->terms)
      sum += static_cast<long long>(t.coeff) * a[static_cast<size_t>(t.var)];
    return cmp_holds(sum, ls->cmp, ls->bound);
  }
  if (auto* cv = std::get_if<CardinalityOfValue>(&c)) {
    long long count = 0;
    for (VarId v : cv->vars)
      if (a[static_cast<size_t>(v)] == cv->value) ++count;
    return cmp_holds(count, cv->cmp, cv->bound);
  }
  if (auto* el = std::get_if<ElementConstraint>(&c)) {
    int idx = a[static_cast<size_t>(el->index)];
    if (idx < 0 || static_cast<size_t>(idx) >= el->array.size()) return false;
    const Operand& op = el->array[static_cast<size_t>(idx)];
    int val = op.is_var ? a[static_cast<size_t>(op.value)] : op.value;
    return val == a[static_cast<size_t>(el->result)];
  }
  if (auto* ne = std::get_if<NotEqualOffset>(&c)) {
    return a[static_cast<size_t>(ne->a)] != a[static_cast<size_t>(ne->b)] + ne->offset;
  }
  if (auto* cl = std::get_if<ClauseConstraint>(&c)) {
    for (const auto& l : cl->lits) {
      int v = a[static_cast<size_t>(l.var)];
      if ((l.positive && v == 1) || (!l.positive && v == 0)) return true;
    }
    return false;
  }
  if (auto* pp = std::get_if<ProductPairSum>(&c)) {
    long long sum = 0;
    for (const auto& [x, y] : pp->pairs)
      sum += a[static_cast<size_t>(x)] * a[static_cast<size_t>(y)];
    return cmp_holds(sum, pp->cmp, pp->bound);
  }
  if (auto* tb = std::get_if<TableAllowed>(&c)) {
    for (const auto& row : tb->tuples) {
      bool match = true;
      for (size_t i = 0; i < tb->vars.size(); ++i)
        if (a[static_cast<size_t>(tb->vars[i])] != row[i]) {
          match = false;
          break;
        }
      if (match) return true;
    }
    return false;
  }
  throw UnsupportedConstraint("unhandled constraint kind");
}

bool ConstraintModel::satisfied(const std::vector<int>& assignment) const {
  for (const auto& c : constraints_)
    if (!constraint_satisfied(c, assignment)) return false;
  return true;
}

ConstraintModel assert_values(const ConstraintModel& model, const std::map<VarId, int>& partial) {
  ConstraintModel out = model;
  for (const auto& [id, value] : partial) {
    const IntVar& v = model.var(id);  // raises UnknownVariable for foreign ids
    TableAllowed pin;
    pin.vars = {id};
    if (v.contains(value)) {
      pin.tuples = {{value}};
    }
    // out-of-domain: empty allowed set, the model becomes trivially UNSAT
    out.add(std::move(pin));
  }
  return out;
}

}  // namespace combench

#pragma once

// Test-side brute-force oracle. Enumerates a ConstraintModel's full solution
// set by exhaustive search over the variable domains, checking constraints via
// the model's own semantic evaluator. It never touches the CNF pipeline, so it
// is an independent check on compile_to_cnf/solve/decode.

#include <algorithm>
#include <climits>
#include <set>
#include <vector>

#include "combench/model.hpp"

namespace combench::testing {

class BruteForce {
 public:
  explicit BruteForce(const ConstraintModel& m) : model_(m) {}

  // All solutions, each a dense assignment indexed by VarId. Search is
  // exhaustive; pruning only skips branches whose partial assignment already
  // violates a constraint regardless of completion.
  std::vector<std::vector<int>> solutions(size_t limit = SIZE_MAX) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(model_.var_count(), 0);
    recurse(0, a, out, limit);
    return out;
  }

  bool sat() { return !solutions(1).empty(); }

  std::set<std::vector<int>> solution_set() {
    auto sols = solutions();
    return std::set<std::vector<int>>(sols.begin(), sols.end());
  }

 private:
  void recurse(size_t i, std::vector<int>& a, std::vector<std::vector<int>>& out, size_t limit) {
    if (out.size() >= limit) return;
    if (i == model_.var_count()) {
      out.push_back(a);
      return;
    }
    for (int v : model_.vars()[i].domain) {
      a[i] = v;
      if (!prefix_viable(i, a)) continue;
      recurse(i + 1, a, out, limit);
    }
  }

  // Conservative: returns false only when some constraint cannot be satisfied
  // by any completion of vars [0..i].
  bool prefix_viable(size_t last, const std::vector<int>& a) const {
    for (const auto& c : model_.constraints())
      if (!constraint_viable(c, last, a)) return false;
    return true;
  }

  bool assigned(VarId v, size_t last) const { return static_cast<size_t>(v) <= last; }

  bool constraint_viable(const Constraint& c, size_t last, const std::vector<int>& a) const {
    if (auto* ad = std::get_if<AllDifferent>(&c)) {
      for (size_t i = 0; i < ad->vars.size(); ++i) {
        if (!assigned(ad->vars[i], last)) continue;
        for (size_t j = i + 1; j < ad->vars.size(); ++j) {
          if (!assigned(ad->vars[j], last)) continue;
          if (a[size_t(ad->vars[i])] == a[size_t(ad->vars[j])]) return false;
        }
      }
      return true;
    }
    if (auto* ls = std::get_if<LinearSum>(&c)) {
      long long lo = 0, hi = 0;
      for (const auto& t : ls->terms) {
        if (assigned(t.var, last)) {
          long long v = static_cast<long long>(t.coeff) * a[size_t(t.var)];
          lo += v;
          hi += v;
        } else {
          const auto& dom = model_.var(t.var).domain;
          long long mn = LLONG_MAX, mx = LLONG_MIN;
          for (int d : dom) {
            long long v = static_cast<long long>(t.coeff) * d;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
          }
          lo += mn;
          hi += mx;
        }
      }
      switch (ls->cmp) {
        case Cmp::Le: return lo <= ls->bound;
        case Cmp::Ge: return hi >= ls->bound;
        case Cmp::Eq: return lo <= ls->bound && hi >= ls->bound;
      }
    }
    if (auto* cv = std::get_if<CardinalityOfValue>(&c)) {
      long long definite = 0, possible = 0;
      for (VarId v : cv->vars) {
        if (assigned(v, last)) {
          if (a[size_t(v)] == cv->value) {
            ++definite;
            ++possible;
          }
        } else if (model_.var(v).contains(cv->value)) {
          ++possible;
        }
      }
      switch (cv->cmp) {
        case Cmp::Le: return definite <= cv->bound;
        case Cmp::Ge: return possible >= cv->bound;
        case Cmp::Eq: return definite <= cv->bound && possible >= cv->bound;
      }
    }
    if (auto* el = std::get_if<ElementConstraint>(&c)) {
      if (!assigned(el->index, last)) return true;
      int idx = a[size_t(el->index)];
      if (idx < 0 || static_cast<size_t>(idx) >= el->array.size()) return false;
      const Operand& op = el->array[static_cast<size_t>(idx)];
      int val;
      if (op.is_var) {
        if (!assigned(static_cast<VarId>(op.value), last)) return true;
        val = a[static_cast<size_t>(op.value)];
      } else {
        val = op.value;
      }
      if (!assigned(el->result, last)) return model_.var(el->result).contains(val);
      return a[size_t(el->result)] == val;
    }
    if (auto* ne = std::get_if<NotEqualOffset>(&c)) {
      if (!assigned(ne->a, last) || !assigned(ne->b, last)) return true;
      return a[size_t(ne->a)] != a[size_t(ne->b)] + ne->offset;
    }
    if (auto* cl = std::get_if<ClauseConstraint>(&c)) {
      for (const auto& l : cl->lits) {
        if (!assigned(l.var, last)) return true;  // could still be satisfied
        int v = a[size_t(l.var)];
        if ((l.positive && v == 1) || (!l.positive && v == 0)) return true;
      }
      return false;
    }
    if (auto* pp = std::get_if<ProductPairSum>(&c)) {
      long long definite = 0, possible = 0;
      for (const auto& [x, y] : pp->pairs) {
        bool ax = assigned(x, last), ay = assigned(y, last);
        if (ax && ay) {
          int p = a[size_t(x)] * a[size_t(y)];
          definite += p;
          possible += p;
        } else if ((ax && a[size_t(x)] == 0) || (ay && a[size_t(y)] == 0)) {
          // product pinned to 0
        } else {
          ++possible;
        }
      }
      switch (pp->cmp) {
        case Cmp::Le: return definite <= pp->bound;
        case Cmp::Ge: return possible >= pp->bound;
        case Cmp::Eq: return definite <= pp->bound && possible >= pp->bound;
      }
    }
    if (auto* tb = std::get_if<TableAllowed>(&c)) {
      for (const auto& row : tb->tuples) {
        bool compatible = true;
        for (size_t i = 0; i < tb->vars.size(); ++i) {
          VarId v = tb->vars[i];
          if (assigned(v, last) && a[size_t(v)] != row[i]) {
            compatible = false;
            break;
          }
          if (!assigned(v, last) && !model_.var(v).contains(row[i])) {
            compatible = false;
            break;
          }
        }
        if (compatible) return true;
      }
      return false;
    }
    return true;
  }

  const ConstraintModel& model_;
};

}  // namespace combench::testing

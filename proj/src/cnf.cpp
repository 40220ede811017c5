#include "combench/cnf.hpp"

#include <algorithm>
#include <climits>
#include <ostream>
#include <sstream>

namespace combench {

int VarMap::atom(VarId var, int value) const {
  if (var < 0 || static_cast<size_t>(var) >= offsets_.size()) return 0;
  const auto& dom = domains_[static_cast<size_t>(var)];
  auto it = std::lower_bound(dom.begin(), dom.end(), value);
  if (it == dom.end() || *it != value) return 0;
  return offsets_[static_cast<size_t>(var)] + static_cast<int>(it - dom.begin());
}

const std::vector<int>& VarMap::domain_of(VarId var) const {
  return domains_.at(static_cast<size_t>(var));
}

std::map<VarId, int> VarMap::decode(const std::vector<bool>& true_atoms) const {
  std::map<VarId, int> out;
  auto dense = decode_dense(true_atoms);
  for (size_t v = 0; v < dense.size(); ++v) out[static_cast<VarId>(v)] = dense[v];
  return out;
}

std::vector<int> VarMap::decode_dense(const std::vector<bool>& true_atoms) const {
  std::vector<int> out(offsets_.size());
  for (size_t v = 0; v < offsets_.size(); ++v) {
    int found = 0;
    int value = 0;
    for (size_t k = 0; k < domains_[v].size(); ++k) {
      int a = offsets_[v] + static_cast<int>(k);
      if (static_cast<size_t>(a) < true_atoms.size() && true_atoms[static_cast<size_t>(a)]) {
        ++found;
        value = domains_[v][k];
      }
    }
    if (found != 1)
      throw InconsistentModel("variable " + std::to_string(v) + " has " + std::to_string(found) +
                              " true indicators");
    out[v] = value;
  }
  return out;
}

std::vector<int> VarMap::encode(const std::map<VarId, int>& assignment) const {
  std::vector<int> atoms;
  atoms.reserve(assignment.size());
  for (const auto& [var, value] : assignment) {
    int a = atom(var, value);
    if (a == 0)
      throw InconsistentModel("value " + std::to_string(value) + " not in mapped domain of var " +
                              std::to_string(var));
    atoms.push_back(a);
  }
  return atoms;
}

std::map<VarId, int> decode_model(const VarMap& varmap, const std::vector<bool>& true_atoms) {
  return varmap.decode(true_atoms);
}

namespace {

// One alternative of a sum group: contributes `weight` when the guard literal
// holds. atom == 0 means unconditional; negate selects the "atom is false" arm.
struct SumOption {
  int atom;
  bool negate;
  long long weight;
};
using SumGroup = std::vector<SumOption>;

}  // namespace

struct Encoder {
  const ConstraintModel& model;
  const EncodeOptions& opts;
  CnfFormula cnf;
  VarMap map;
  int next_atom = 1;

  Encoder(const ConstraintModel& m, const EncodeOptions& o) : model(m), opts(o) {}

  int fresh() {
    if (next_atom > opts.max_aux_atoms) throw DomainTooLarge("auxiliary atom budget exceeded");
    return next_atom++;
  }

  int ind(VarId v, int value) const { return map.atom(v, value); }

  void clause(std::vector<int> lits) { cnf.add_clause(std::move(lits)); }

  void at_most_one(const std::vector<int>& atoms) {
    if (atoms.size() <= 1) return;
    if (static_cast<int>(atoms.size()) <= opts.pairwise_amo_max) {
      for (size_t i = 0; i < atoms.size(); ++i)
        for (size_t j = i + 1; j < atoms.size(); ++j) clause({-atoms[i], -atoms[j]});
      return;
    }
    // Sequential-counter AMO (Sinz 2005).
    const size_t n = atoms.size();
    std::vector<int> s(n - 1);
    for (auto& a : s) a = fresh();
    clause({-atoms[0], s[0]});
    for (size_t i = 1; i + 1 < n; ++i) {
      clause({-atoms[i], s[i]});
      clause({-s[i - 1], s[i]});
      clause({-atoms[i], -s[i - 1]});
    }
    clause({-atoms[n - 1], -s[n - 2]});
  }

  void allocate_indicators() {
    long long total = 0;
    for (const auto& v : model.vars()) total += static_cast<long long>(v.domain.size());
    if (total > opts.max_indicator_atoms)
      throw DomainTooLarge("indicator budget exceeded: " + std::to_string(total) + " atoms");
    for (const auto& v : model.vars()) {
      map.offsets_.push_back(next_atom);
      map.domains_.push_back(v.domain);
      next_atom += static_cast<int>(v.domain.size());
    }
    map.total_indicators_ = next_atom - 1;
    for (const auto& v : model.vars()) {
      std::vector<int> atoms;
      atoms.reserve(v.domain.size());
      for (int val : v.domain) atoms.push_back(ind(v.id, val));
      clause(atoms);  // at-least-one
      at_most_one(atoms);
    }
  }

  // --- weighted sum ----------------------------------------------------------
  //
  // Totalizer-style layered merge over indicator atoms. Layer atoms mean "the
  // processed prefix sums to exactly s". Suffix min/max bounds prune states
  // that can no longer violate (dropped) or can no longer satisfy (forbidden),
  // which keeps each layer within the undetermined band. One-way implications
  // suffice for equisatisfiability; decisions are only ever the indicators.

  void encode_weighted_sum(const std::vector<SumGroup>& groups, Cmp cmp, long long bound) {
    if (groups.empty()) {
      if (!cmp_holds(0, cmp, bound)) clause({});
      return;
    }
    const size_t n = groups.size();
    std::vector<long long> suf_min(n + 1, 0), suf_max(n + 1, 0);
    for (size_t i = n; i-- > 0;) {
      long long mn = LLONG_MAX, mx = LLONG_MIN;
      for (const auto& o : groups[i]) {
        mn = std::min(mn, o.weight);
        mx = std::max(mx, o.weight);
      }
      suf_min[i] = suf_min[i + 1] + mn;
      suf_max[i] = suf_max[i + 1] + mx;
    }
    auto verdict = [&](long long s, size_t next_i) -> int {
      // -1 dead (cannot satisfy), +1 settled (cannot violate), 0 undetermined
      long long lo = s + suf_min[next_i];
      long long hi = s + suf_max[next_i];
      switch (cmp) {
        case Cmp::Le: return lo > bound ? -1 : (hi <= bound ? 1 : 0);
        case Cmp::Ge: return hi < bound ? -1 : (lo >= bound ? 1 : 0);
        case Cmp::Eq: return (lo > bound || hi < bound) ? -1 : (lo == bound && hi == bound ? 1 : 0);
      }
      return 0;
    };

    if (verdict(0, 0) == 1) return;  // constraint holds for every assignment
    std::map<long long, int> layer{{0, 0}};  // atom 0: unconditional root
    for (size_t i = 0; i < n && !layer.empty(); ++i) {
      std::map<long long, int> next;
      for (const auto& [s0, from] : layer) {
        for (const auto& opt : groups[i]) {
          long long s = s0 + opt.weight;
          std::vector<int> cl;
          if (from != 0) cl.push_back(-from);
          if (opt.atom != 0) cl.push_back(opt.negate ? opt.atom : -opt.atom);
          int v = verdict(s, i + 1);
          if (v < 0) {
            clause(std::move(cl));  // forbid this prefix + option
          } else if (v == 0) {
            auto it = next.find(s);
            int to = it != next.end() ? it->second : (next[s] = fresh());
            cl.push_back(to);
            clause(std::move(cl));
          }
          // settled branches need no further tracking
        }
      }
      layer = std::move(next);
      if (static_cast<long long>(next_atom) > opts.max_aux_atoms)
        throw DomainTooLarge("sum encoding exceeded atom budget");
    }
  }

  SumGroup group_of_var(VarId v, int coeff) {
    SumGroup g;
    for (int val : model.var(v).domain)
      g.push_back({ind(v, val), false, static_cast<long long>(coeff) * val});
    return g;
  }

  static SumGroup group_of_atom(int atom, long long w) {
    return {{atom, false, w}, {atom, true, 0}};
  }

  // --- constraint encodings --------------------------------------------------

  void encode(const AllDifferent& c) {
    std::map<int, std::vector<int>> by_value;
    for (VarId v : c.vars)
      for (int val : model.var(v).domain) by_value[val].push_back(ind(v, val));
    for (auto& [val, atoms] : by_value) at_most_one(atoms);
  }

  void encode(const LinearSum& c) {
    std::vector<SumGroup> groups;
    for (const auto& t : c.terms) {
      if (t.coeff == 0) continue;
      groups.push_back(group_of_var(t.var, t.coeff));
    }
    encode_weighted_sum(groups, c.cmp, c.bound);
  }

  void encode(const CardinalityOfValue& c) {
    std::vector<SumGroup> groups;
    for (VarId v : c.vars) {
      int a = ind(v, c.value);
      if (a == 0) continue;  // this var can never take the value
      groups.push_back(group_of_atom(a, 1));
    }
    encode_weighted_sum(groups, c.cmp, c.bound);
  }

  void encode(const ElementConstraint& c) {
    const IntVar& idx = model.var(c.index);
    const IntVar& res = model.var(c.result);
    for (int k : idx.domain) {
      int ik = ind(c.index, k);
      if (k < 0 || static_cast<size_t>(k) >= c.array.size()) {
        clause({-ik});
        continue;
      }
      const Operand& op = c.array[static_cast<size_t>(k)];
      if (!op.is_var) {
        int ra = ind(c.result, op.value);
        if (ra == 0)
          clause({-ik});
        else
          clause({-ik, ra});
      } else {
        const IntVar& arr = model.var(static_cast<VarId>(op.value));
        for (int w : arr.domain) {
          int aw = ind(arr.id, w);
          int rw = res.contains(w) ? ind(c.result, w) : 0;
          if (rw == 0)
            clause({-ik, -aw});
          else
            clause({-ik, -aw, rw});
        }
      }
    }
  }

  void encode(const NotEqualOffset& c) {
    const IntVar& a = model.var(c.a);
    const IntVar& b = model.var(c.b);
    for (int v : a.domain) {
      int u = v - c.offset;
      if (!b.contains(u)) continue;
      clause({-ind(c.a, v), -ind(c.b, u)});
    }
  }

  void encode(const ClauseConstraint& c) {
    std::vector<int> lits;
    bool tautology = false;
    for (const auto& l : c.lits) {
      const IntVar& v = model.var(l.var);
      int want = l.positive ? 1 : 0;
      if (!v.contains(want)) continue;  // literal can never hold
      if (v.domain.size() == 1) {
        tautology = true;  // literal always holds
        break;
      }
      lits.push_back(ind(l.var, want));
    }
    if (!tautology) clause(std::move(lits));
  }

  void encode(const ProductPairSum& c) {
    std::vector<SumGroup> groups;
    for (const auto& [x, y] : c.pairs) {
      int xa = ind(x, 1);
      int ya = ind(y, 1);
      if (xa == 0 || ya == 0) continue;  // product is constantly 0
      int p = fresh();
      clause({-p, xa});
      clause({-p, ya});
      clause({-xa, -ya, p});
      groups.push_back(group_of_atom(p, 1));
    }
    encode_weighted_sum(groups, c.cmp, c.bound);
  }

  void encode(const TableAllowed& c) {
    std::vector<const std::vector<int>*> rows;
    for (const auto& row : c.tuples) {
      bool ok = true;
      for (size_t i = 0; i < c.vars.size(); ++i)
        if (!model.var(c.vars[i]).contains(row[i])) {
          ok = false;
          break;
        }
      if (ok) rows.push_back(&row);
    }
    if (rows.empty()) {
      clause({});
      return;
    }
    if (c.vars.size() == 1) {
      std::vector<int> lits;
      for (const auto* row : rows) lits.push_back(ind(c.vars[0], (*row)[0]));
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      clause(std::move(lits));
      return;
    }
    // Selector encoding: pick an allowed row, which then forces each position.
    std::vector<int> selectors;
    selectors.reserve(rows.size());
    for (const auto* row : rows) {
      int t = fresh();
      selectors.push_back(t);
      for (size_t i = 0; i < c.vars.size(); ++i) clause({-t, ind(c.vars[i], (*row)[i])});
    }
    clause(std::move(selectors));
  }

  CompiledCnf run() {
    allocate_indicators();
    for (const auto& c : model.constraints())
      std::visit([&](const auto& k) { encode(k); }, c);
    cnf.num_atoms = next_atom - 1;
    return CompiledCnf{std::move(cnf), std::move(map)};
  }
};

CompiledCnf compile_to_cnf(const ConstraintModel& model, const EncodeOptions& opts) {
  Encoder enc(model, opts);
  return enc.run();
}

void emit_dimacs(const CnfFormula& cnf, std::ostream& out) {
  out << "p cnf " << cnf.num_atoms << ' ' << cnf.clauses.size() << '\n';
  for (const auto& cl : cnf.clauses) {
    for (int lit : cl) out << lit << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const CnfFormula& cnf) {
  std::ostringstream ss;
  emit_dimacs(cnf, ss);
  return ss.str();
}

}  // namespace combench

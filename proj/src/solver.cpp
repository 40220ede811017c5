#include "combench/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <sstream>

#include "combench/errors.hpp"
#include "combench/subproc.hpp"

namespace combench {

namespace {

using Clock = std::chrono::steady_clock;

// Embedded CDCL: two-watched literals, first-UIP learning, VSIDS with a binary
// heap, phase saving, Luby restarts, and activity-based learnt reduction.
// Deterministic for a given formula.
class Cdcl {
 public:
  Cdcl(const CnfFormula& cnf, double budget_s, uint64_t conflict_budget)
      : nvars_(cnf.num_atoms), budget_s_(budget_s), conflict_budget_(conflict_budget) {
    assigns_.assign(nvars_ + 1, 0);
    level_.assign(nvars_ + 1, 0);
    reason_.assign(nvars_ + 1, -1);
    activity_.assign(nvars_ + 1, 0.0);
    phase_.assign(nvars_ + 1, false);
    heap_pos_.assign(nvars_ + 1, -1);
    seen_.assign(nvars_ + 1, 0);
    watches_.assign(2 * (nvars_ + 1), {});
    for (int v = 1; v <= nvars_; ++v) heap_insert(v);
    ok_ = true;
    for (const auto& cl : cnf.clauses) {
      if (!add_clause(cl)) {
        ok_ = false;
        break;
      }
    }
  }

  void set_budget(double budget_s) { budget_s_ = budget_s; }

  // Resumable: callers may add clauses at the root between runs (model
  // enumeration does this with blocking clauses).
  bool add_root_clause(const std::vector<int>& dimacs_lits) {
    backtrack(0);
    qhead_ = 0;  // replay root propagation against the new clause
    if (!add_clause(dimacs_lits)) ok_ = false;
    return ok_;
  }

  SolveResult run() {
    SolveResult res;
    auto start = Clock::now();
    backtrack(0);
    if (ok_ && propagate() != -1) ok_ = false;
    if (!ok_) {
      res.status = SolveStatus::Unsat;
      res.elapsed_s = elapsed(start);
      return res;
    }
    uint64_t restart_iter = 0;
    uint64_t conflicts_until_restart = conflicts_ + luby(++restart_iter) * 128;
    uint64_t next_reduce = learnts_.size() + 4000;
    const uint64_t conflict_limit =
        conflict_budget_ ? conflicts_ + conflict_budget_ : 0;
    for (;;) {
      int confl = propagate();
      if (confl != -1) {
        ++conflicts_;
        if (decision_level() == 0) {
          res.status = SolveStatus::Unsat;
          break;
        }
        std::vector<int> learnt;
        int back_level = 0;
        analyze(confl, learnt, back_level);
        backtrack(back_level);
        attach_learnt(learnt);
        var_decay();
        if (conflicts_ >= conflicts_until_restart) {
          conflicts_until_restart = conflicts_ + luby(++restart_iter) * 128;
          backtrack(0);
        }
        if (learnts_.size() >= next_reduce) {
          reduce_db();
          next_reduce += 2000;
        }
        if (conflict_limit && conflicts_ >= conflict_limit) {
          res.status = SolveStatus::Timeout;
          break;
        }
        if ((conflicts_ & 1023) == 0 && elapsed(start) > budget_s_) {
          res.status = SolveStatus::Timeout;
          break;
        }
      } else {
        if ((propagations_ & 16383) == 0 && elapsed(start) > budget_s_) {
          res.status = SolveStatus::Timeout;
          break;
        }
        int v = pick_branch();
        if (v == 0) {
          res.status = SolveStatus::Sat;
          res.model.assign(nvars_ + 1, false);
          for (int u = 1; u <= nvars_; ++u) res.model[u] = assigns_[u] > 0;
          break;
        }
        ++decisions_;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(phase_[v] ? pos(v) : neg(v), -1);
      }
    }
    res.elapsed_s = elapsed(start);
    res.conflicts = conflicts_;
    res.decisions = decisions_;
    res.propagations = propagations_;
    return res;
  }

 private:
  // literal encoding: pos(v) = 2v, neg(v) = 2v+1
  static int pos(int v) { return 2 * v; }
  static int neg(int v) { return 2 * v + 1; }
  static int lit_of(int dimacs) { return dimacs > 0 ? pos(dimacs) : neg(-dimacs); }
  static int lit_var(int l) { return l >> 1; }
  static int lit_neg(int l) { return l ^ 1; }

  struct Clause {
    std::vector<int> lits;
    double act = 0.0;
    bool learnt = false;
    bool removed = false;
  };
  struct Watcher {
    int cref;
    int blocker;
  };

  double elapsed(Clock::time_point start) const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }

  static uint64_t luby(uint64_t i) {
    // Luby sequence 1,1,2,1,1,2,4,...
    uint64_t k = 1;
    while ((1ULL << (k + 1)) - 1 <= i) ++k;
    while (true) {
      if (i == (1ULL << k) - 1) return 1ULL << (k - 1);
      i = i - (1ULL << (k - 1)) + 1 - 1;
      if (i == 0) return 1;
      k = 1;
      while ((1ULL << (k + 1)) - 1 <= i) ++k;
    }
  }

  int value(int lit) const {  // 1 true, -1 false, 0 unassigned
    int v = assigns_[lit_var(lit)];
    if (v == 0) return 0;
    bool want_true = (lit & 1) == 0;
    return (v > 0) == want_true ? 1 : -1;
  }

  bool add_clause(const std::vector<int>& dimacs_lits) {
    std::vector<int> lits;
    lits.reserve(dimacs_lits.size());
    for (int dl : dimacs_lits) lits.push_back(lit_of(dl));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
      if (lits[i + 1] == lit_neg(lits[i])) return true;  // tautology
    // drop satisfied / false literals at level 0
    std::vector<int> kept;
    for (int l : lits) {
      int v = value(l);
      if (v > 0) return true;
      if (v == 0) kept.push_back(l);
    }
    if (kept.empty()) return false;
    if (kept.size() == 1) return enqueue(kept[0], -1) && propagate() == -1;
    attach(kept, false);
    return true;
  }

  int attach(std::vector<int> lits, bool learnt) {
    int cref = static_cast<int>(clauses_.size());
    clauses_.push_back(Clause{std::move(lits), 0.0, learnt, false});
    const auto& c = clauses_.back().lits;
    watches_[lit_neg(c[0])].push_back({cref, c[1]});
    watches_[lit_neg(c[1])].push_back({cref, c[0]});
    if (learnt) learnts_.push_back(cref);
    return cref;
  }

  bool enqueue(int lit, int reason_clause) {
    int v = lit_var(lit);
    if (assigns_[v] != 0) return value(lit) > 0;
    assigns_[v] = (lit & 1) == 0 ? 1 : -1;
    level_[v] = decision_level();
    reason_[v] = reason_clause;
    trail_.push_back(lit);
    return true;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  int propagate() {
    while (qhead_ < trail_.size()) {
      int lit = trail_[qhead_++];
      ++propagations_;
      auto& ws = watches_[lit];
      size_t i = 0, j = 0;
      int confl = -1;
      for (; i < ws.size(); ++i) {
        Watcher w = ws[i];
        if (value(w.blocker) > 0) {
          ws[j++] = w;
          continue;
        }
        Clause& c = clauses_[static_cast<size_t>(w.cref)];
        if (c.removed) continue;
        auto& ls = c.lits;
        int false_lit = lit_neg(lit);
        if (ls[0] == false_lit) std::swap(ls[0], ls[1]);
        if (value(ls[0]) > 0) {
          ws[j++] = {w.cref, ls[0]};
          continue;
        }
        bool found = false;
        for (size_t k = 2; k < ls.size(); ++k) {
          if (value(ls[k]) >= 0) {
            std::swap(ls[1], ls[k]);
            watches_[lit_neg(ls[1])].push_back({w.cref, ls[0]});
            found = true;
            break;
          }
        }
        if (found) continue;
        // unit or conflict
        ws[j++] = {w.cref, ls[0]};
        if (value(ls[0]) < 0) {
          confl = w.cref;
          ++i;
          break;
        }
        enqueue(ls[0], w.cref);
      }
      for (; i < ws.size(); ++i) ws[j++] = ws[i];
      ws.resize(j);
      if (confl != -1) {
        qhead_ = trail_.size();
        return confl;
      }
    }
    return -1;
  }

  void bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (int u = 1; u <= nvars_; ++u) activity_[u] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] != -1) heap_up(heap_pos_[v]);
  }

  void var_decay() { var_inc_ /= 0.95; }

  void analyze(int confl, std::vector<int>& out_learnt, int& out_level) {
    out_learnt.clear();
    out_learnt.push_back(0);  // placeholder for the asserting literal
    int path = 0;
    int lit = -1;
    size_t idx = trail_.size();
    do {
      Clause& c = clauses_[static_cast<size_t>(confl)];
      if (c.learnt) bump_clause(confl);
      for (size_t k = (lit == -1 ? 0 : 1); k < c.lits.size(); ++k) {
        int q = c.lits[k];
        int v = lit_var(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          bump_var(v);
          if (level_[v] >= decision_level())
            ++path;
          else
            out_learnt.push_back(q);
        }
      }
      while (!seen_[lit_var(trail_[--idx])]) {
      }
      // propagation keeps the implied literal at position 0 of its reason
      lit = trail_[idx];
      confl = reason_[lit_var(lit)];
      seen_[lit_var(lit)] = 0;
      --path;
    } while (path > 0);
    out_learnt[0] = lit_neg(lit);

    // simple recursive minimization over marked levels
    std::vector<int> minimized;
    minimized.push_back(out_learnt[0]);
    for (size_t i = 1; i < out_learnt.size(); ++i) {
      int q = out_learnt[i];
      int v = lit_var(q);
      int r = reason_[v];
      bool redundant = false;
      if (r != -1) {
        redundant = true;
        for (int p : clauses_[static_cast<size_t>(r)].lits) {
          int pv = lit_var(p);
          if (pv == v) continue;
          if (!seen_[pv] && level_[pv] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) minimized.push_back(q);
    }
    for (int q : out_learnt) seen_[lit_var(q)] = 0;
    out_learnt = std::move(minimized);

    if (out_learnt.size() == 1) {
      out_level = 0;
    } else {
      size_t max_i = 1;
      for (size_t i = 2; i < out_learnt.size(); ++i)
        if (level_[lit_var(out_learnt[i])] > level_[lit_var(out_learnt[max_i])]) max_i = i;
      std::swap(out_learnt[1], out_learnt[max_i]);
      out_level = level_[lit_var(out_learnt[1])];
    }
  }

  void attach_learnt(const std::vector<int>& learnt) {
    if (learnt.size() == 1) {
      enqueue(learnt[0], -1);
      return;
    }
    int cref = attach(learnt, true);
    bump_clause(cref);
    enqueue(learnt[0], cref);
  }

  void bump_clause(int cref) {
    auto& c = clauses_[static_cast<size_t>(cref)];
    c.act += cla_inc_;
    if (c.act > 1e20) {
      for (int l : learnts_) clauses_[static_cast<size_t>(l)].act *= 1e-20;
      cla_inc_ *= 1e-20;
    }
    cla_inc_ /= 0.999;
  }

  void backtrack(int target_level) {
    if (decision_level() <= target_level) return;
    int bound = trail_lim_[static_cast<size_t>(target_level)];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
      int v = lit_var(trail_[static_cast<size_t>(i)]);
      phase_[v] = assigns_[v] > 0;
      assigns_[v] = 0;
      reason_[v] = -1;
      if (heap_pos_[v] == -1) heap_insert(v);
    }
    trail_.resize(static_cast<size_t>(bound));
    trail_lim_.resize(static_cast<size_t>(target_level));
    qhead_ = trail_.size();
  }

  void reduce_db() {
    std::vector<int> sorted = learnts_;
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
      return clauses_[static_cast<size_t>(a)].act > clauses_[static_cast<size_t>(b)].act;
    });
    size_t keep = sorted.size() / 2;
    std::vector<int> kept;
    for (size_t i = 0; i < sorted.size(); ++i) {
      int cref = sorted[i];
      auto& c = clauses_[static_cast<size_t>(cref)];
      bool locked = false;
      int v0 = lit_var(c.lits[0]);
      if (assigns_[v0] != 0 && reason_[v0] == cref) locked = true;
      if (i < keep || locked || c.lits.size() <= 2) {
        kept.push_back(cref);
      } else {
        c.removed = true;
      }
    }
    learnts_ = std::move(kept);
    // watches keep stale entries; propagate() skips removed clauses
  }

  // --- VSIDS heap ------------------------------------------------------------
  bool heap_less(int a, int b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(int v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
  }
  void heap_up(int i) {
    int v = heap_[static_cast<size_t>(i)];
    while (i > 0) {
      int p = (i - 1) / 2;
      if (!heap_less(v, heap_[static_cast<size_t>(p)])) break;
      heap_[static_cast<size_t>(i)] = heap_[static_cast<size_t>(p)];
      heap_pos_[heap_[static_cast<size_t>(i)]] = i;
      i = p;
    }
    heap_[static_cast<size_t>(i)] = v;
    heap_pos_[v] = i;
  }
  void heap_down(int i) {
    int v = heap_[static_cast<size_t>(i)];
    int n = static_cast<int>(heap_.size());
    for (;;) {
      int l = 2 * i + 1, r = 2 * i + 2, best = i;
      if (l < n && heap_less(heap_[static_cast<size_t>(l)], v)) best = l;
      if (r < n &&
          heap_less(heap_[static_cast<size_t>(r)],
                    best == i ? v : heap_[static_cast<size_t>(best)]))
        best = r;
      if (best == i) break;
      heap_[static_cast<size_t>(i)] = heap_[static_cast<size_t>(best)];
      heap_pos_[heap_[static_cast<size_t>(i)]] = i;
      i = best;
      heap_[static_cast<size_t>(i)] = v;
      heap_pos_[v] = i;
    }
  }
  int heap_pop() {
    int v = heap_[0];
    heap_pos_[v] = -1;
    int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_pos_[last] = 0;
      heap_down(0);
    }
    return v;
  }

  int pick_branch() {
    while (!heap_.empty()) {
      int v = heap_pop();
      if (assigns_[v] == 0) return v;
    }
    return 0;
  }

  int nvars_;
  double budget_s_;
  uint64_t conflict_budget_;
  bool ok_ = true;
  std::vector<int8_t> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<bool> phase_;
  std::vector<int8_t> seen_;
  std::vector<Clause> clauses_;
  std::vector<int> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  uint64_t conflicts_ = 0;
  uint64_t decisions_ = 0;
  uint64_t propagations_ = 0;
};

SolveResult solve_external(const std::string& cmd, const CnfFormula& cnf, double budget_s) {
  auto start = Clock::now();
  std::string dimacs = to_dimacs(cnf);
  ProcessResult pr = run_with_input_file(cmd, dimacs, ".cnf", budget_s);
  SolveResult res;
  res.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
  if (pr.timed_out) {
    res.status = SolveStatus::Timeout;
    return res;
  }
  if (pr.spawn_failed) throw BackendFailure("external solver failed to start: " + cmd);
  std::istringstream in(pr.stdout_text);
  std::string line;
  bool saw_status = false;
  bool sat = false;
  std::vector<bool> model(static_cast<size_t>(cnf.num_atoms) + 1, false);
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      saw_status = true;
      sat = line.find("UNSATISFIABLE") == std::string::npos &&
            line.find("SATISFIABLE") != std::string::npos;
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream vs(line.substr(2));
      long lit;
      while (vs >> lit) {
        if (lit > 0 && lit <= cnf.num_atoms) model[static_cast<size_t>(lit)] = true;
      }
    }
  }
  if (!saw_status) throw BackendFailure("external solver produced no status line");
  if (sat) {
    res.status = SolveStatus::Sat;
    res.model = std::move(model);
  } else {
    res.status = SolveStatus::Unsat;
  }
  return res;
}

}  // namespace

SolverHandle SolverHandle::from_env(double budget_s) {
  const char* cmd = std::getenv("COMBENCH_SOLVER");
  if (cmd && *cmd) return SolverHandle::external(cmd, budget_s);
  return SolverHandle::embedded(budget_s);
}

SolveResult solve(const SolverHandle& handle, const CnfFormula& cnf,
                  std::optional<double> budget_s) {
  double budget = budget_s.value_or(handle.default_budget_s);
  for (const auto& cl : cnf.clauses)
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > cnf.num_atoms)
        throw Error("malformed CNF: literal out of range");
  if (!handle.external_cmd.empty()) return solve_external(handle.external_cmd, cnf, budget);
  Cdcl engine(cnf, budget, handle.conflict_budget);
  return engine.run();
}

EnumerateResult enumerate_models(const SolverHandle& handle, const CnfFormula& cnf, size_t limit,
                                 std::optional<double> budget_s,
                                 const std::vector<int>& projection) {
  EnumerateResult out;
  double budget = budget_s.value_or(handle.default_budget_s);
  auto start = Clock::now();
  std::vector<int> proj = projection;
  if (proj.empty())
    for (int a = 1; a <= cnf.num_atoms; ++a) proj.push_back(a);
  auto blocking = [&](const std::vector<bool>& model) {
    std::vector<int> block;
    block.reserve(proj.size());
    for (int a : proj) block.push_back(model[static_cast<size_t>(a)] ? -a : a);
    return block;
  };

  if (handle.external_cmd.empty()) {
    // incremental: one engine, blocking clauses added at the root
    Cdcl engine(cnf, budget, handle.conflict_budget);
    for (;;) {
      double left = budget - std::chrono::duration<double>(Clock::now() - start).count();
      if (left <= 0) {
        out.timed_out = true;
        return out;
      }
      engine.set_budget(left);
      SolveResult r = engine.run();
      if (r.status == SolveStatus::Timeout) {
        out.timed_out = true;
        return out;
      }
      if (r.status == SolveStatus::Unsat) {
        out.complete = true;
        return out;
      }
      if (out.models.size() == limit) return out;  // something remains beyond the limit
      if (std::getenv("COMBENCH_PARANOID")) {
        for (size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
          bool any = false;
          for (int lit : cnf.clauses[ci])
            if ((lit > 0) == r.model[static_cast<size_t>(std::abs(lit))]) {
              any = true;
              break;
            }
          if (!any) {
            fprintf(stderr, "model %zu violates clause %zu:", out.models.size(), ci);
            for (int lit : cnf.clauses[ci]) fprintf(stderr, " %d", lit);
            fprintf(stderr, "\n");
            abort();
          }
        }
      }
      out.models.push_back(r.model);
      engine.add_root_clause(blocking(r.model));
    }
  }

  CnfFormula work = cnf;
  while (out.models.size() < limit) {
    double left = budget - std::chrono::duration<double>(Clock::now() - start).count();
    if (left <= 0) {
      out.timed_out = true;
      return out;
    }
    SolveResult r = solve(handle, work, left);
    if (r.status == SolveStatus::Timeout) {
      out.timed_out = true;
      return out;
    }
    if (r.status == SolveStatus::Unsat) {
      out.complete = true;
      return out;
    }
    out.models.push_back(r.model);
    work.add_clause(blocking(r.model));
  }
  double left = budget - std::chrono::duration<double>(Clock::now() - start).count();
  if (left > 0) {
    SolveResult r = solve(handle, work, left);
    if (r.status == SolveStatus::Unsat) out.complete = true;
  }
  return out;
}

}  // namespace combench

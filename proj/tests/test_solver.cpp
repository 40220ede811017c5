#include <doctest.h>

#include <cstdlib>

#include "combench/rng.hpp"
#include "combench/errors.hpp"
#include "combench/solver.hpp"

using namespace combench;

namespace {

CnfFormula php(int pigeons, int holes) {
  // atom(p, h) = p*holes + h + 1
  CnfFormula cnf;
  cnf.num_atoms = pigeons * holes;
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> alo;
    for (int h = 0; h < holes; ++h) alo.push_back(p * holes + h + 1);
    cnf.add_clause(alo);
  }
  for (int h = 0; h < holes; ++h)
    for (int p1 = 0; p1 < pigeons; ++p1)
      for (int p2 = p1 + 1; p2 < pigeons; ++p2)
        cnf.add_clause({-(p1 * holes + h + 1), -(p2 * holes + h + 1)});
  return cnf;
}

bool brute_force_sat(const CnfFormula& cnf) {
  REQUIRE(cnf.num_atoms <= 22);
  for (uint64_t mask = 0; mask < (1ULL << cnf.num_atoms); ++mask) {
    bool all = true;
    for (const auto& cl : cnf.clauses) {
      bool any = false;
      for (int lit : cl) {
        int v = std::abs(lit);
        bool val = (mask >> (v - 1)) & 1;
        if ((lit > 0) == val) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool model_satisfies(const CnfFormula& cnf, const std::vector<bool>& model) {
  for (const auto& cl : cnf.clauses) {
    bool any = false;
    for (int lit : cl) {
      bool val = model[static_cast<size_t>(std::abs(lit))];
      if ((lit > 0) == val) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("empty formula is SAT with an empty model") {
  CnfFormula cnf;
  auto r = solve(SolverHandle::embedded(5.0), cnf);
  CHECK(r.status == SolveStatus::Sat);
}

TEST_CASE("x and not-x is UNSAT") {
  CnfFormula cnf;
  cnf.num_atoms = 1;
  cnf.add_clause({1});
  cnf.add_clause({-1});
  auto r = solve(SolverHandle::embedded(5.0), cnf);
  CHECK(r.status == SolveStatus::Unsat);
}

TEST_CASE("PHP(4,3) is UNSAT, cross-checked by full 2^12 enumeration") {
  auto cnf = php(4, 3);
  CHECK(!brute_force_sat(cnf));
  auto r = solve(SolverHandle::embedded(10.0), cnf);
  CHECK(r.status == SolveStatus::Unsat);
}

TEST_CASE("larger pigeonhole instances stay exact") {
  for (int n = 5; n <= 8; ++n) {
    auto r = solve(SolverHandle::embedded(30.0), php(n, n - 1));
    CHECK(r.status == SolveStatus::Unsat);
  }
}

TEST_CASE("solver agrees with truth-table evaluation on random formulas") {
  Rng rng(12345);
  auto handle = SolverHandle::embedded(10.0);
  for (int iter = 0; iter < 200; ++iter) {
    int nvars = 3 + static_cast<int>(rng.below(16));  // up to 18 atoms
    int nclauses = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(4 * nvars)));
    CnfFormula cnf;
    cnf.num_atoms = nvars;
    for (int c = 0; c < nclauses; ++c) {
      int len = 1 + static_cast<int>(rng.below(4));
      std::vector<int> cl;
      for (int k = 0; k < len; ++k) {
        int v = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(nvars)));
        cl.push_back(rng.below(2) ? v : -v);
      }
      cnf.add_clause(cl);
    }
    bool expect = brute_force_sat(cnf);
    auto r = solve(handle, cnf);
    REQUIRE(r.status != SolveStatus::Timeout);
    CHECK((r.status == SolveStatus::Sat) == expect);
    if (r.status == SolveStatus::Sat) CHECK(model_satisfies(cnf, r.model));
  }
}

TEST_CASE("status is deterministic across runs") {
  auto cnf = php(5, 4);
  auto a = solve(SolverHandle::embedded(10.0), cnf);
  auto b = solve(SolverHandle::embedded(10.0), cnf);
  CHECK(a.status == b.status);
  CHECK(a.conflicts == b.conflicts);
}

TEST_CASE("enumerate_models") {
  SUBCASE("one free atom has exactly 2 models") {
    CnfFormula cnf;
    cnf.num_atoms = 1;
    auto en = enumerate_models(SolverHandle::embedded(5.0), cnf, 10);
    CHECK(en.models.size() == 2);
    CHECK(en.complete);
  }
  SUBCASE("UNSAT formula enumerates nothing") {
    CnfFormula cnf;
    cnf.num_atoms = 1;
    cnf.add_clause({1});
    cnf.add_clause({-1});
    auto en = enumerate_models(SolverHandle::embedded(5.0), cnf, 10);
    CHECK(en.models.empty());
    CHECK(en.complete);
  }
  SUBCASE("limit stops early and reports incomplete") {
    CnfFormula cnf;
    cnf.num_atoms = 3;
    auto en = enumerate_models(SolverHandle::embedded(5.0), cnf, 3);
    CHECK(en.models.size() == 3);
    CHECK(!en.complete);
  }
}

TEST_CASE("timeout is reported as a value with elapsed time") {
  // A hard random 3-SAT-ish instance at the phase transition, tiny budget.
  Rng rng(777);
  CnfFormula cnf;
  int nvars = 250;
  cnf.num_atoms = nvars;
  for (int c = 0; c < nvars * 43 / 10; ++c) {
    std::vector<int> cl;
    for (int k = 0; k < 3; ++k) {
      int v = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(nvars)));
      cl.push_back(rng.below(2) ? v : -v);
    }
    cnf.add_clause(cl);
  }
  SolverHandle h = SolverHandle::embedded(0.02);
  auto r = solve(h, cnf, 0.02);
  if (r.status == SolveStatus::Timeout) {
    CHECK(r.elapsed_s >= 0.02);
    CHECK(r.elapsed_s < 0.12);  // within the 100 ms grace
  }
}

TEST_CASE("external DIMACS backend round-trips status and models") {
  auto h = SolverHandle::external(std::string("python3 ") + TEST_DPLL_SOLVER, 60.0);
  auto sat = php(3, 3);
  auto r1 = solve(h, sat);
  CHECK(r1.status == SolveStatus::Sat);
  CHECK(model_satisfies(sat, r1.model));
  auto r2 = solve(h, php(4, 3));
  CHECK(r2.status == SolveStatus::Unsat);
  auto en = enumerate_models(h, php(3, 3), 10, 60.0);
  CHECK(en.complete);
  CHECK(en.models.size() == 6);  // 3! hole assignments
}

TEST_CASE("external solver that cannot start raises BackendFailure") {
  auto h = SolverHandle::external("/nonexistent/solver-binary", 5.0);
  CnfFormula cnf;
  cnf.num_atoms = 1;
  cnf.add_clause({1});
  CHECK_THROWS_AS(solve(h, cnf), BackendFailure);
}

TEST_CASE("external solver still honored from the environment") {
  const char* cmd = std::getenv("COMBENCH_SOLVER");
  if (!cmd || !*cmd) return;
  auto h = SolverHandle::from_env(30.0);
  auto r = solve(h, php(4, 3));
  CHECK(r.status == SolveStatus::Unsat);
}

#include <doctest.h>

#include <set>
#include <sstream>

#include "combench/cnf.hpp"
#include "combench/model.hpp"
#include "combench/solver.hpp"
#include "oracle.hpp"

using namespace combench;

namespace {

// Queens as a plain model: one var per row, diagonal and column clashes.
ConstraintModel queens_model(int n) {
  ConstraintModel m;
  std::vector<VarId> q;
  for (int r = 0; r < n; ++r) q.push_back(m.add_var("q[" + std::to_string(r) + "]", 0, n - 1));
  m.add(AllDifferent{q});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m.add(NotEqualOffset{q[i], q[j], j - i});
      m.add(NotEqualOffset{q[i], q[j], -(j - i)});
    }
  return m;
}

ConstraintModel langford_model(int n) {
  // Sequence vars plus first-occurrence index vars linked through Element.
  ConstraintModel m;
  const int len = 2 * n;
  std::vector<VarId> s;
  for (int i = 0; i < len; ++i) s.push_back(m.add_var("s[" + std::to_string(i) + "]", 1, n));
  std::vector<Operand> arr;
  for (VarId v : s) arr.push_back(Operand::of_var(v));
  for (int v = 1; v <= n; ++v) {
    m.add(CardinalityOfValue{s, v, Cmp::Eq, 2});
    VarId f = m.add_var("f[" + std::to_string(v) + "]", 0, len - v - 2);
    VarId g = m.add_var("g[" + std::to_string(v) + "]", v + 1, len - 1);
    m.add(LinearSum{{{1, g}, {-1, f}}, Cmp::Eq, v + 1});
    VarId rv = m.add_var("r[" + std::to_string(v) + "]", v, v);
    m.add(ElementConstraint{f, arr, rv});
    m.add(ElementConstraint{g, arr, rv});
  }
  return m;
}

std::set<std::vector<int>> cnf_solution_set(const ConstraintModel& m, size_t limit = 100000) {
  auto compiled = compile_to_cnf(m);
  std::vector<int> proj;
  for (const auto& v : m.vars())
    for (int val : v.domain) proj.push_back(compiled.varmap.atom(v.id, val));
  auto handle = SolverHandle::embedded(60.0);
  auto en = enumerate_models(handle, compiled.cnf, limit, 60.0, proj);
  REQUIRE(en.complete);
  std::set<std::vector<int>> out;
  for (const auto& model : en.models) out.insert(compiled.varmap.decode_dense(model));
  return out;
}

}  // namespace

TEST_CASE("one var domain {0,1,2}: 3 atoms, 1 ALO, 3 pairwise AMO") {
  ConstraintModel m;
  m.add_var("x", 0, 2);
  auto compiled = compile_to_cnf(m);
  CHECK(compiled.cnf.num_atoms == 3);
  REQUIRE(compiled.cnf.clauses.size() == 4);
  CHECK(compiled.cnf.clauses[0].size() == 3);  // at-least-one
  for (size_t i = 1; i < 4; ++i) CHECK(compiled.cnf.clauses[i].size() == 2);
}

TEST_CASE("alldifferent over 3 binary vars is a pigeonhole UNSAT") {
  ConstraintModel m;
  std::vector<VarId> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(m.add_var("x" + std::to_string(i), 0, 1));
  m.add(AllDifferent{xs});
  auto compiled = compile_to_cnf(m);
  auto r = solve(SolverHandle::embedded(10.0), compiled.cnf);
  CHECK(r.status == SolveStatus::Unsat);
}

TEST_CASE("langford n=3 decodes to the known sequence or its reversal") {
  auto m = langford_model(3);
  auto compiled = compile_to_cnf(m);
  auto r = solve(SolverHandle::embedded(30.0), compiled.cnf);
  REQUIRE(r.status == SolveStatus::Sat);
  auto values = compiled.varmap.decode_dense(r.model);
  std::vector<int> seq(values.begin(), values.begin() + 6);
  std::vector<int> expect{2, 3, 1, 2, 1, 3};
  std::vector<int> reversed(expect.rbegin(), expect.rend());
  CHECK((seq == expect || seq == reversed));
}

TEST_CASE("decode_model basics") {
  ConstraintModel m;
  VarId x = m.add_var("x", 0, 2);
  auto compiled = compile_to_cnf(m);
  SUBCASE("single true indicator decodes") {
    std::vector<bool> atoms(4, false);
    atoms[static_cast<size_t>(compiled.varmap.atom(x, 1))] = true;
    auto vals = decode_model(compiled.varmap, atoms);
    CHECK(vals.at(x) == 1);
  }
  SUBCASE("zero indicators raises InconsistentModel") {
    std::vector<bool> atoms(4, false);
    CHECK_THROWS_AS(decode_model(compiled.varmap, atoms), InconsistentModel);
  }
  SUBCASE("two indicators raises InconsistentModel") {
    std::vector<bool> atoms(4, false);
    atoms[1] = atoms[2] = true;
    CHECK_THROWS_AS(decode_model(compiled.varmap, atoms), InconsistentModel);
  }
}

TEST_CASE("empty varmap decodes empty model") {
  ConstraintModel m;
  auto compiled = compile_to_cnf(m);
  std::vector<bool> atoms;
  CHECK(decode_model(compiled.varmap, atoms).empty());
}

TEST_CASE("varmap round-trips encode/decode") {
  ConstraintModel m;
  VarId x = m.add_var("x", 0, 4);
  VarId y = m.add_var("y", std::vector<int>{-3, 0, 7});
  auto compiled = compile_to_cnf(m);
  std::map<VarId, int> assignment{{x, 3}, {y, -3}};
  auto atoms = compiled.varmap.encode(assignment);
  std::vector<bool> bits(static_cast<size_t>(compiled.cnf.num_atoms) + 1, false);
  for (int a : atoms) bits[static_cast<size_t>(a)] = true;
  CHECK(compiled.varmap.decode(bits) == assignment);
}

TEST_CASE("queens n=4 round-trip yields a valid placement, checked by brute force") {
  auto m = queens_model(4);
  auto brute = testing::BruteForce(m).solution_set();
  CHECK(brute.size() == 2);  // over all 256 placements
  auto cnf_set = cnf_solution_set(m);
  CHECK(cnf_set == brute);
}

TEST_CASE("assert_values") {
  auto m = queens_model(4);
  SUBCASE("pinning a full valid witness stays SAT") {
    auto sols = testing::BruteForce(m).solutions(1);
    REQUIRE(!sols.empty());
    std::map<VarId, int> pin;
    for (size_t i = 0; i < sols[0].size(); ++i) pin[static_cast<VarId>(i)] = sols[0][i];
    auto pinned = assert_values(m, pin);
    auto compiled = compile_to_cnf(pinned);
    CHECK(solve(SolverHandle::embedded(10.0), compiled.cnf).status == SolveStatus::Sat);
  }
  SUBCASE("queens n=4 with rows 0,1 pinned to 0,1 is UNSAT (brute forced)") {
    auto pinned = assert_values(m, {{0, 0}, {1, 1}});
    CHECK(testing::BruteForce(pinned).solutions(1).empty());
    auto compiled = compile_to_cnf(pinned);
    CHECK(solve(SolverHandle::embedded(10.0), compiled.cnf).status == SolveStatus::Unsat);
  }
  SUBCASE("empty pin keeps the solution set") {
    auto pinned = assert_values(m, {});
    CHECK(cnf_solution_set(pinned) == cnf_solution_set(m));
  }
  SUBCASE("unknown variable raises") {
    CHECK_THROWS_AS(assert_values(m, {{99, 0}}), UnknownVariable);
  }
  SUBCASE("out-of-domain pin is UNSAT, not an error") {
    auto pinned = assert_values(m, {{0, 77}});
    auto compiled = compile_to_cnf(pinned);
    CHECK(solve(SolverHandle::embedded(10.0), compiled.cnf).status == SolveStatus::Unsat);
  }
  SUBCASE("asserting the same map twice is idempotent on the solution set") {
    std::map<VarId, int> pin{{0, 1}};
    auto once = assert_values(m, pin);
    auto twice = assert_values(once, pin);
    CHECK(cnf_solution_set(once) == cnf_solution_set(twice));
  }
}

TEST_CASE("DomainTooLarge guards the indicator budget") {
  ConstraintModel m;
  m.add_var("huge", 0, 1000);
  EncodeOptions opts;
  opts.max_indicator_atoms = 100;
  CHECK_THROWS_AS(compile_to_cnf(m, opts), DomainTooLarge);
}

TEST_CASE("DIMACS emission format") {
  ConstraintModel m;
  m.add_var("x", 0, 1);
  auto compiled = compile_to_cnf(m);
  std::string text = to_dimacs(compiled.cnf);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "p cnf 2 2");
  std::getline(in, line);
  CHECK(line == "1 2 0");
  std::getline(in, line);
  CHECK(line == "-1 -2 0");
}

TEST_CASE("compilation is deterministic for the same model") {
  auto m = langford_model(4);
  auto a = to_dimacs(compile_to_cnf(m).cnf);
  auto b = to_dimacs(compile_to_cnf(m).cnf);
  CHECK(a == b);
}

TEST_CASE("linear sums with negative coefficients agree with brute force") {
  ConstraintModel m;
  VarId x = m.add_var("x", 0, 4);
  VarId y = m.add_var("y", 0, 4);
  VarId z = m.add_var("z", 0, 4);
  m.add(LinearSum{{{2, x}, {-3, y}, {1, z}}, Cmp::Eq, 1});
  auto brute = testing::BruteForce(m).solution_set();
  auto cnf_set = cnf_solution_set(m);
  CHECK(cnf_set == brute);
  CHECK(!brute.empty());
}

TEST_CASE("cardinality comparators agree with brute force") {
  for (Cmp cmp : {Cmp::Le, Cmp::Eq, Cmp::Ge}) {
    ConstraintModel m;
    std::vector<VarId> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(m.add_var("x" + std::to_string(i), 0, 2));
    m.add(CardinalityOfValue{xs, 1, cmp, 2});
    CHECK(cnf_solution_set(m) == testing::BruteForce(m).solution_set());
  }
}

TEST_CASE("sequential AMO kicks in above the pairwise threshold") {
  ConstraintModel m;
  std::vector<VarId> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(m.add_var("x" + std::to_string(i), 0, 1));
  m.add(CardinalityOfValue{xs, 1, Cmp::Le, 1});
  ConstraintModel one;  // same with a single wide-domain var: domain 12 > threshold 8
  one.add_var("w", 0, 11);
  auto compiled = compile_to_cnf(one);
  CHECK(compiled.cnf.num_atoms > 12);  // sequential counter introduced aux atoms
  auto r = solve(SolverHandle::embedded(10.0), compiled.cnf);
  CHECK(r.status == SolveStatus::Sat);
  CHECK(cnf_solution_set(one).size() == 12);
}

TEST_CASE("clause, product-pair and table constraints agree with brute force") {
  ConstraintModel m;
  VarId a = m.add_var("a", 0, 1);
  VarId b = m.add_var("b", 0, 1);
  VarId c = m.add_var("c", 0, 1);
  VarId d = m.add_var("d", 0, 3);
  m.add(ClauseConstraint{{{a, true}, {b, false}}});
  m.add(ProductPairSum{{{a, b}, {b, c}}, Cmp::Ge, 1});
  m.add(TableAllowed{{c, d}, {{0, 1}, {1, 2}, {1, 3}}});
  CHECK(cnf_solution_set(m) == testing::BruteForce(m).solution_set());
}

TEST_CASE("element with constants and out-of-range indices") {
  ConstraintModel m;
  VarId i = m.add_var("i", 0, 5);  // indices 4,5 fall outside the array
  VarId x = m.add_var("x", 0, 3);
  VarId r = m.add_var("r", 0, 9);
  m.add(ElementConstraint{i, {Operand::of_const(7), Operand::of_var(x), Operand::of_const(2),
                              Operand::of_var(x)},
                          r});
  CHECK(cnf_solution_set(m) == testing::BruteForce(m).solution_set());
}

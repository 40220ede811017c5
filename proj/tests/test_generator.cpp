#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "combench/generate.hpp"
#include "combench/verify.hpp"

using namespace combench;

namespace {

Profile langford_profile() {
  Profile p;
  p.seed = 7;
  p.solver_budget_s = 60.0;
  FamilyProfile fp;
  fp.family = "langford";
  fp.count = 6;
  fp.params["n"] = ParamDomain{{3, 4, 5, 6, 7, 8}};
  fp.mode = "sweep";
  p.families.push_back(fp);
  return p;
}

Profile mixed_profile(uint64_t seed) {
  Profile p;
  p.seed = seed;
  p.solver_budget_s = 60.0;
  {
    FamilyProfile fp;
    fp.family = "queens";
    fp.count = 4;
    fp.params["n"] = ParamDomain{{4, 5, 6, 7}};
    p.families.push_back(fp);
  }
  {
    FamilyProfile fp;
    fp.family = "graph_k_coloring";
    fp.count = 3;
    fp.params["n"] = ParamDomain{{8}};
    fp.params["k"] = ParamDomain{{3}};
    fp.params["m"] = ParamDomain{{12, 16, 20}};
    fp.mode = "random";
    p.families.push_back(fp);
  }
  {
    FamilyProfile fp;
    fp.family = "pysms_min_girth";
    fp.count = 2;
    fp.params["v"] = ParamDomain{{6, 7}};
    fp.params["min_girth"] = ParamDomain{{4}};
    p.families.push_back(fp);
  }
  return p;
}

}  // namespace

TEST_CASE("langford sweep produces the mod-4 polarity pattern in order") {
  auto result = generate(langford_profile());
  REQUIRE(result.records.size() == 6);
  std::vector<bool> polarity;
  for (const auto& r : result.records) polarity.push_back(r.satisfiable);
  CHECK(polarity == std::vector<bool>{true, true, false, false, true, true});
  for (int i = 0; i < 6; ++i) CHECK(result.records[size_t(i)].params.at("n") == 3 + i);
}

TEST_CASE("same profile and seed give byte-identical datasets") {
  auto a = dataset_to_jsonl(generate(mixed_profile(99)).records);
  auto b = dataset_to_jsonl(generate(mixed_profile(99)).records);
  CHECK(a == b);
  auto c = dataset_to_jsonl(generate(mixed_profile(100)).records);
  CHECK(a != c);
}

TEST_CASE("reference witnesses re-verify and polarity is never sampled") {
  auto result = generate(mixed_profile(5));
  auto handle = SolverHandle::embedded(60.0);
  for (const auto& r : result.records) {
    const auto& spec = registry_lookup(r.family);
    if (r.satisfiable) {
      REQUIRE(r.witness.has_value());
      CHECK(check_witness(spec, r.params, r.variable_data, *r.witness).ok);
    } else {
      CHECK(!r.witness.has_value());
      // re-certify: the recorded polarity equals the certifier's output
      auto again = certify_polarity(spec, r.params, r.variable_data, handle, 60.0);
      CHECK(again.polarity == Polarity::Unsat);
    }
  }
}

TEST_CASE("records are self-contained through serialization") {
  auto result = generate(mixed_profile(11));
  auto text = dataset_to_jsonl(result.records);
  std::string path = "/tmp/combench_test_dataset.jsonl";
  write_dataset(result.records, path);
  auto loaded = dataset_from_jsonl_file(path);
  REQUIRE(loaded.size() == result.records.size());
  CHECK(dataset_to_jsonl(loaded) == text);
  std::remove(path.c_str());
}

TEST_CASE("worker count changes order but not the record set") {
  GenerateOptions one;
  one.workers = 1;
  GenerateOptions four;
  four.workers = 4;
  auto a = generate(mixed_profile(21), one);
  auto b = generate(mixed_profile(21), four);
  REQUIRE(a.records.size() == b.records.size());
  std::map<std::string, std::string> amap, bmap;
  for (const auto& r : a.records) amap[r.id] = r.to_json().dump();
  for (const auto& r : b.records) bmap[r.id] = r.to_json().dump();
  CHECK(amap == bmap);
}

TEST_CASE("resume after an interrupted run reproduces the uninterrupted dataset") {
  std::string path = "/tmp/combench_resume_test.jsonl";
  std::remove(path.c_str());
  std::remove((path + ".ckpt0").c_str());
  std::remove((path + ".part0").c_str());

  auto reference = generate(mixed_profile(33));

  GenerateOptions partial;
  partial.output_path = path;
  partial.stop_after_accepted = 3;  // simulate a kill mid-run
  generate(mixed_profile(33), partial);
  {
    std::ifstream ck(path + ".ckpt0");
    CHECK(ck.good());  // checkpoint left behind
  }
  GenerateOptions full;
  full.output_path = path;
  auto resumed = generate(mixed_profile(33), full);
  CHECK(dataset_to_jsonl(resumed.records) == dataset_to_jsonl(reference.records));
  {
    std::ifstream ck(path + ".ckpt0");
    CHECK(!ck.good());  // cleaned up after completion
  }
  std::remove(path.c_str());
}

TEST_CASE("timeouts are dropped rather than released") {
  Profile p;
  p.seed = 3;
  p.solver_budget_s = 60.0;
  p.solver_conflict_budget = 1;  // deterministic: nothing nontrivial certifies
  FamilyProfile fp;
  fp.family = "social_golfers";
  fp.count = 1;
  fp.params["groups"] = ParamDomain{{3}};
  fp.params["group_size"] = ParamDomain{{3}};
  fp.params["weeks"] = ParamDomain{{3}};
  p.families.push_back(fp);
  auto result = generate(p);
  CHECK(result.records.empty());
  CHECK(result.stats.dropped_timeout == 1);
}

TEST_CASE("attach_hints") {
  auto handle = SolverHandle::embedded(60.0);
  Profile p;
  p.seed = 13;
  p.solver_budget_s = 60.0;
  FamilyProfile fp;
  fp.family = "all_interval";
  fp.count = 1;
  fp.params["n"] = ParamDomain{{2}};
  p.families.push_back(fp);
  auto rec = generate(p).records.at(0);
  REQUIRE(rec.satisfiable);

  SUBCASE("fraction 0 leaves the record unchanged") {
    auto hinted = attach_hints(rec, 1, 0.0, handle);
    CHECK(hinted.to_json() == rec.to_json());
  }
  SUBCASE("full fraction pins x and d variables and renders the block") {
    auto hinted = attach_hints(rec, 1, 1.0, handle);
    REQUIRE(hinted.hints.size() == 3);  // x[0], x[1], d[0]
    CHECK(hinted.hints[0].var == "x[0]");
    CHECK(hinted.hints[2].var == "d[0]");
    CHECK(hinted.hints[2].pos == -1);  // not a witness position
    CHECK(hinted.prompt.find("Partial assignment (fixed values that must be respected):") !=
          std::string::npos);
    CHECK(hinted.prompt.find("- d[0]=") != std::string::npos);
    CHECK(hinted.id.find("_h") != std::string::npos);
    CHECK(hinted.id.find("_nh") == std::string::npos);
  }
  SUBCASE("UNSAT records cannot be hinted") {
    InstanceRecord unsat = rec;
    unsat.satisfiable = false;
    unsat.witness.reset();
    CHECK_THROWS_AS(attach_hints(unsat, 1, 0.5, handle), NotSatisfiable);
  }
}

TEST_CASE("full-witness hints make the verifier accept only that witness") {
  auto handle = SolverHandle::embedded(60.0);
  Profile p;
  p.seed = 17;
  p.solver_budget_s = 60.0;
  FamilyProfile fp;
  fp.family = "queens";
  fp.count = 1;
  fp.params["n"] = ParamDomain{{4}};
  p.families.push_back(fp);
  auto rec = generate(p).records.at(0);
  auto hinted = attach_hints(rec, 2, 1.0, handle);
  REQUIRE(hinted.hints.size() == 4);

  // both 4-queens placements, one of which is the pinned reference
  std::vector<std::vector<int>> both{{1, 3, 0, 2}, {2, 0, 3, 1}};
  int accepted = 0;
  for (const auto& w : both) {
    Submission s;
    s.satisfiable = true;
    s.solution = w;
    if (verify(hinted, s, handle).correct) ++accepted;
  }
  CHECK(accepted == 1);
  Submission ref;
  ref.satisfiable = true;
  ref.solution = hinted.witness;
  CHECK(verify(hinted, ref, handle).correct);
}

TEST_CASE("admission filter") {
  InstanceRecord rec;
  CHECK_THROWS_AS(admit(rec, {}), EmptyCohort);
  CHECK(!admit(rec, {{"a", true}, {"b", true}}));
  CHECK(admit(rec, {{"a", true}, {"b", false}, {"c", true}, {"d", true}, {"e", true}, {"f", true}}));
  CHECK(admit(rec, {{"a", false}, {"b", false}}));
}

TEST_CASE("profile JSON round-trip and validation") {
  nlohmann::json j = {
      {"seed", 42},
      {"families",
       {{{"family", "queens"}, {"count", 2}, {"params", {{"n", {{"min", 4}, {"max", 8}}}}}}}}};
  auto p = Profile::from_json(j);
  CHECK(p.seed == 42);
  CHECK(p.families.at(0).params.at("n").values.size() == 5);

  nlohmann::json bad = {{"seed", 1},
                        {"families", {{{"family", "not_a_family"}, {"count", 1}}}}};
  CHECK_THROWS_AS(Profile::from_json(bad), UnknownFamily);
}

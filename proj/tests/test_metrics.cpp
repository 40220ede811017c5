#include <doctest.h>

#include "combench/metrics.hpp"
#include "combench/rng.hpp"

using namespace combench;

namespace {

EvalItem item(bool sat, bool correct, bool polarity_ok, int rounds, bool forced,
              const std::string& family = "queens") {
  EvalItem i;
  i.id = "x";
  i.family = family;
  i.backend_class = family.rfind("pysms_", 0) == 0 ? "pysms" : "pycsp";
  i.sat = sat;
  i.verdict.ground_truth_satisfiable = sat;
  i.verdict.correct = correct;
  i.verdict.satisfiability_correct = polarity_ok;
  i.verdict.solution_correct = correct;
  i.verdict.failure_bucket = correct ? FailureBucket::None
                                     : (polarity_ok ? FailureBucket::WrongSolution
                                                    : FailureBucket::WrongPolarity);
  i.rounds = rounds;
  i.forced = forced;
  i.explicit_submission = !forced;
  return i;
}

EvalRun make(const std::vector<EvalItem>& items, const std::string& condition = "tools") {
  EvalRun run;
  run.label = "synthetic";
  run.condition = condition;
  run.budget = 8;
  run.items = items;
  return run;
}

}  // namespace

TEST_CASE("always-UNSAT accuracy equals the UNSAT fraction exactly") {
  // 10 instances, 3 UNSAT; the always-UNSAT agent is right on exactly those
  std::vector<EvalItem> items;
  for (int i = 0; i < 7; ++i) items.push_back(item(true, false, false, 1, false));
  for (int i = 0; i < 3; ++i) items.push_back(item(false, true, true, 1, false));
  auto run = make(items);
  CHECK(accuracy(run) == doctest::Approx(0.30));
}

TEST_CASE("published arithmetic: 220/329 formats to 66.9") {
  std::vector<EvalItem> items;
  for (int i = 0; i < 220; ++i) items.push_back(item(true, true, true, 1, false));
  for (int i = 0; i < 109; ++i) items.push_back(item(true, false, false, 1, false));
  auto run = make(items);
  CHECK(format_pct(accuracy(run)) == "66.9");
}

TEST_CASE("published arithmetic: 62.9 SAT acc vs 8.5 accuracy gives a 54.4 pp gap") {
  // 329 instances: 207 polarity-correct of which 28 fully correct
  std::vector<EvalItem> items;
  for (int i = 0; i < 28; ++i) items.push_back(item(true, true, true, 1, false));
  for (int i = 0; i < 179; ++i) items.push_back(item(true, false, true, 1, false));
  for (int i = 0; i < 122; ++i) items.push_back(item(true, false, false, 1, false));
  auto run = make(items);
  CHECK(format_pct(sat_acc(run)) == "62.9");
  CHECK(format_pct(accuracy(run)) == "8.5");
  char buf[16];
  snprintf(buf, sizeof buf, "%.1f", witness_gap_pp(run));
  CHECK(std::string(buf) == "54.4");
}

TEST_CASE("rescue rate") {
  SUBCASE("zero forced submissions give rate 0") {
    auto run = make({item(true, true, true, 1, false)});
    CHECK(rescue_rate(run) == 0.0);
  }
  SUBCASE("67 correct of 88 forced formats to 76.1") {
    std::vector<EvalItem> items;
    for (int i = 0; i < 67; ++i) items.push_back(item(true, true, true, 8, true));
    for (int i = 0; i < 21; ++i) items.push_back(item(true, false, false, 8, true));
    for (int i = 0; i < 241; ++i) items.push_back(item(true, true, true, 2, false));
    auto run = make(items);
    CHECK(format_pct(rescue_rate(run)) == "76.1");
  }
  SUBCASE("all forced, none correct") {
    std::vector<EvalItem> items;
    for (int i = 0; i < 5; ++i) items.push_back(item(true, false, false, 8, true));
    CHECK(rescue_rate(make(items)) == 0.0);
  }
}

TEST_CASE("sim@k on the hand-replayed synthetic trace set") {
  // correct traces at rounds {1, 2, 2, 5}, plus 4 incorrect
  std::vector<EvalItem> items;
  items.push_back(item(true, true, true, 1, false));
  items.push_back(item(true, true, true, 2, false));
  items.push_back(item(true, true, true, 2, false));
  items.push_back(item(true, true, true, 5, false));
  for (int i = 0; i < 4; ++i) items.push_back(item(true, false, false, 3, false));
  auto run = make(items);
  CHECK(sim_at_k(run, 1) == doctest::Approx(1.0 / 8));
  CHECK(sim_at_k(run, 2) == doctest::Approx(3.0 / 8));
  CHECK(sim_at_k(run, 4) == doctest::Approx(3.0 / 8));
  CHECK(sim_at_k(run, 8) == doctest::Approx(4.0 / 8));
  CHECK(sim_at_k(run, 8) == accuracy(run));
}

TEST_CASE("a published-shaped curve: 19.5 / 41.0 / 63.2 / 80.9 over 329 traces") {
  std::vector<EvalItem> items;
  for (int i = 0; i < 64; ++i) items.push_back(item(true, true, true, 1, false));
  for (int i = 0; i < 71; ++i) items.push_back(item(true, true, true, 2, false));
  for (int i = 0; i < 73; ++i) items.push_back(item(true, true, true, 4, false));
  for (int i = 0; i < 58; ++i) items.push_back(item(true, true, true, 8, false));
  for (int i = 0; i < 63; ++i) items.push_back(item(true, false, false, 8, false));
  auto run = make(items);
  REQUIRE(run.items.size() == 329);
  CHECK(format_pct(sim_at_k(run, 1)) == "19.5");
  CHECK(format_pct(sim_at_k(run, 2)) == "41.0");
  CHECK(format_pct(sim_at_k(run, 4)) == "63.2");
  CHECK(format_pct(sim_at_k(run, 8)) == "80.9");
  CHECK(format_pct(accuracy(run)) == "80.9");
}

TEST_CASE("metric identities hold on randomized runs") {
  Rng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<EvalItem> items;
    size_t n = 5 + rng.below(60);
    for (size_t i = 0; i < n; ++i) {
      bool sat = rng.below(2);
      bool polarity_ok = rng.below(2);
      bool correct = polarity_ok && rng.below(2);
      int rounds = 1 + static_cast<int>(rng.below(8));
      bool forced = rng.below(4) == 0;
      std::string family = rng.below(2) ? "queens" : "pysms_min_girth";
      items.push_back(item(sat, correct, polarity_ok, rounds, forced, family));
    }
    auto run = make(items);
    // sim@k monotone, sim@budget == accuracy
    double prev = 0;
    for (int k = 0; k <= 8; ++k) {
      double s = sim_at_k(run, k);
      CHECK(s >= prev);
      prev = s;
    }
    CHECK(sim_at_k(run, run.budget) == doctest::Approx(accuracy(run)));
    // accuracy <= sat_acc
    CHECK(accuracy(run) <= sat_acc(run) + 1e-12);
    // buckets partition the run
    auto buckets = bucket_counts(run);
    size_t total = 0;
    for (const auto& [b, c] : buckets) total += c;
    CHECK(total == run.items.size());
    CHECK(buckets.at(FailureBucket::None) ==
          static_cast<size_t>(accuracy(run) * static_cast<double>(run.items.size()) + 0.5));
    // weighted strata recombine to the overall accuracy
    for (const std::string axis : {"polarity", "backend", "family"}) {
      auto strata = stratify(run, axis);
      auto counts = strata_counts(run, axis);
      double recombined = 0;
      for (const auto& [label, rate] : strata)
        recombined += rate * static_cast<double>(counts.at(label));
      recombined /= static_cast<double>(run.items.size());
      CHECK(recombined == doctest::Approx(accuracy(run)));
    }
  }
}

TEST_CASE("forced-at-budget convention shifts cap-forced mass to k = budget") {
  std::vector<EvalItem> items;
  items.push_back(item(true, true, true, 2, true));  // forced early, correct
  items.push_back(item(true, true, true, 3, false));
  auto run = make(items);
  SimOptions at_budget;
  at_budget.forced_at_budget = true;
  CHECK(sim_at_k(run, 2) == doctest::Approx(0.5));
  CHECK(sim_at_k(run, 2, at_budget) == doctest::Approx(0.0));
  CHECK(sim_at_k(run, 8, at_budget) == doctest::Approx(1.0));
}

TEST_CASE("error values") {
  EvalRun empty;
  CHECK_THROWS_AS(accuracy(empty), EmptyRun);
  auto run = make({item(true, true, true, 1, false)});
  run.items[0].rounds.reset();
  CHECK_THROWS_AS(sim_at_k(run, 4), MissingTraces);
  auto ok = make({item(true, true, true, 1, false)});
  CHECK_THROWS_AS(stratify(ok, "nonsense"), UnknownAxis);
}

TEST_CASE("reports render all the table sections") {
  std::vector<EvalItem> items;
  for (int i = 0; i < 6; ++i) items.push_back(item(true, i % 2 == 0, true, 1 + i % 3, i == 5));
  for (int i = 0; i < 4; ++i)
    items.push_back(item(false, i % 2 == 0, i % 2 == 0, 2, false, "pysms_min_girth"));
  auto run = make(items);
  auto report = compute_report(run);
  auto text = render_text_report(report);
  CHECK(text.find("Accuracy (%)") != std::string::npos);
  CHECK(text.find("sim@1") != std::string::npos);
  CHECK(text.find("Rescue (%)") != std::string::npos);
  CHECK(text.find("Wrong pol.") != std::string::npos);
  CHECK(text.find("SMS") != std::string::npos);
  auto csv = render_csv_tables(report);
  for (const char* table : {"overall", "sim", "force_submit", "buckets", "stratification",
                            "per_family"})
    CHECK(csv.count(table) == 1);
  // percentages everywhere at one decimal
  CHECK(csv.at("overall").find(format_pct(report.accuracy)) != std::string::npos);
}

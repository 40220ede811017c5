#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "combench/generate.hpp"
#include "combench/harness.hpp"
#include "combench/verify.hpp"

namespace combench {

struct EvalItem {
  std::string id;
  std::string family;
  std::string backend_class;  // pycsp | pysms
  bool sat = false;           // certified polarity
  Verdict verdict;
  std::optional<int> rounds;  // tool rounds used (tools condition)
  bool forced = false;
  bool explicit_submission = false;
};

struct EvalRun {
  std::string label;      // evaluated agent/model name
  std::string condition;  // no_tools | tools
  int budget = 8;
  std::vector<EvalItem> items;
};

// Joins a dataset with its traces into an evaluation run.
EvalRun make_run(const std::string& label, const std::string& condition,
                 const std::vector<InstanceRecord>& dataset, const std::vector<Trace>& traces,
                 int budget = 8);

// Core metric formulas. All raise EmptyRun on empty input.
double accuracy(const EvalRun& run);
double sat_acc(const EvalRun& run);
double witness_gap_pp(const EvalRun& run);  // percentage points

struct SimOptions {
  // When set, every force-submitted trace counts at k = budget instead of at
  // its own round count.
  bool forced_at_budget = false;
};
// Truncation replay: mean of v_i * 1{r_i <= k}. Raises MissingTraces when an
// item lacks round accounting.
double sim_at_k(const EvalRun& run, int k, const SimOptions& opts = {});

double rescue_rate(const EvalRun& run);  // 0 when nothing was force-submitted

// axis: polarity | backend | family
std::map<std::string, double> stratify(const EvalRun& run, const std::string& axis);
std::map<std::string, size_t> strata_counts(const EvalRun& run, const std::string& axis);

std::map<FailureBucket, size_t> bucket_counts(const EvalRun& run);

struct MetricReport {
  std::string label;
  std::string condition;
  size_t total = 0;
  size_t correct = 0;
  double accuracy = 0.0;
  double sat_acc = 0.0;
  double witness_gap_pp = 0.0;
  std::vector<std::pair<int, double>> sim_curve;  // (k, rate), k in {1,2,4,8}
  size_t explicit_count = 0;
  size_t forced_count = 0;
  size_t forced_correct = 0;
  double rescue_rate = 0.0;
  std::map<std::string, double> by_polarity;
  std::map<std::string, double> by_backend;
  std::map<std::string, double> by_family;
  std::map<std::string, size_t> family_counts;
  std::map<FailureBucket, size_t> buckets;
};

MetricReport compute_report(const EvalRun& run, const std::vector<int>& ks = {1, 2, 4, 8},
                            const SimOptions& sim = {});

// Percentages at one decimal, matching the released tables.
std::string format_pct(double rate);

std::string render_text_report(const MetricReport& report);
// CSV tables keyed by name: overall, sim, force_submit, buckets,
// stratification, per_family.
std::map<std::string, std::string> render_csv_tables(const MetricReport& report);

}  // namespace combench

#include "combench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "combench/errors.hpp"
#include "combench/families.hpp"

namespace combench {

EvalRun make_run(const std::string& label, const std::string& condition,
                 const std::vector<InstanceRecord>& dataset, const std::vector<Trace>& traces,
                 int budget) {
  std::map<std::string, const Trace*> by_id;
  for (const auto& t : traces) by_id[t.instance_id] = &t;
  EvalRun run;
  run.label = label;
  run.condition = condition;
  run.budget = budget;
  for (const auto& rec : dataset) {
    auto it = by_id.find(rec.id);
    if (it == by_id.end()) continue;
    const Trace& t = *it->second;
    EvalItem item;
    item.id = rec.id;
    item.family = rec.family;
    item.backend_class = registry_lookup(rec.family).backend_class;
    item.sat = rec.satisfiable;
    item.verdict = t.verdict;
    item.rounds = static_cast<int>(t.rounds.size());
    item.forced = t.forced_submit;
    item.explicit_submission = t.explicit_submission;
    run.items.push_back(std::move(item));
  }
  return run;
}

static void require_nonempty(const EvalRun& run) {
  if (run.items.empty()) throw EmptyRun("metric over an empty run");
}

double accuracy(const EvalRun& run) {
  require_nonempty(run);
  size_t correct = 0;
  for (const auto& i : run.items) correct += i.verdict.correct ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(run.items.size());
}

double sat_acc(const EvalRun& run) {
  require_nonempty(run);
  size_t polarity_ok = 0;
  for (const auto& i : run.items) polarity_ok += i.verdict.satisfiability_correct ? 1 : 0;
  return static_cast<double>(polarity_ok) / static_cast<double>(run.items.size());
}

double witness_gap_pp(const EvalRun& run) { return (sat_acc(run) - accuracy(run)) * 100.0; }

double sim_at_k(const EvalRun& run, int k, const SimOptions& opts) {
  require_nonempty(run);
  size_t counted = 0;
  for (const auto& i : run.items) {
    if (!i.rounds) throw MissingTraces("sim@k needs round accounting for every item");
    int r = *i.rounds;
    if (opts.forced_at_budget && i.forced) r = run.budget;
    if (i.verdict.correct && r <= k) ++counted;
  }
  return static_cast<double>(counted) / static_cast<double>(run.items.size());
}

double rescue_rate(const EvalRun& run) {
  size_t forced = 0, forced_correct = 0;
  for (const auto& i : run.items) {
    if (!i.forced) continue;
    ++forced;
    forced_correct += i.verdict.correct ? 1 : 0;
  }
  if (forced == 0) return 0.0;
  return static_cast<double>(forced_correct) / static_cast<double>(forced);
}

namespace {

std::string stratum_of(const EvalItem& item, const std::string& axis) {
  if (axis == "polarity") return item.sat ? "SAT" : "UNSAT";
  if (axis == "backend") return item.backend_class;
  if (axis == "family") return item.family;
  throw UnknownAxis("unknown stratification axis: " + axis);
}

}  // namespace

std::map<std::string, double> stratify(const EvalRun& run, const std::string& axis) {
  require_nonempty(run);
  std::map<std::string, std::pair<size_t, size_t>> acc;  // label -> (correct, total)
  for (const auto& i : run.items) {
    auto& [correct, total] = acc[stratum_of(i, axis)];
    ++total;
    correct += i.verdict.correct ? 1 : 0;
  }
  std::map<std::string, double> out;
  for (const auto& [label, ct] : acc)
    out[label] = static_cast<double>(ct.first) / static_cast<double>(ct.second);
  return out;
}

std::map<std::string, size_t> strata_counts(const EvalRun& run, const std::string& axis) {
  std::map<std::string, size_t> out;
  for (const auto& i : run.items) ++out[stratum_of(i, axis)];
  return out;
}

std::map<FailureBucket, size_t> bucket_counts(const EvalRun& run) {
  std::map<FailureBucket, size_t> out;
  for (FailureBucket b : {FailureBucket::None, FailureBucket::WrongPolarity,
                          FailureBucket::WrongSolution, FailureBucket::Length,
                          FailureBucket::Parse, FailureBucket::MaxRounds, FailureBucket::Other})
    out[b] = 0;
  for (const auto& i : run.items) ++out[i.verdict.failure_bucket];
  return out;
}

MetricReport compute_report(const EvalRun& run, const std::vector<int>& ks,
                            const SimOptions& sim) {
  require_nonempty(run);
  MetricReport rep;
  rep.label = run.label;
  rep.condition = run.condition;
  rep.total = run.items.size();
  for (const auto& i : run.items) {
    rep.correct += i.verdict.correct ? 1 : 0;
    if (i.explicit_submission) ++rep.explicit_count;
    if (i.forced) {
      ++rep.forced_count;
      rep.forced_correct += i.verdict.correct ? 1 : 0;
    }
  }
  rep.accuracy = accuracy(run);
  rep.sat_acc = sat_acc(run);
  rep.witness_gap_pp = witness_gap_pp(run);
  rep.rescue_rate = rescue_rate(run);
  bool has_rounds = true;
  for (const auto& i : run.items)
    if (!i.rounds) has_rounds = false;
  if (run.condition == "tools" && has_rounds)
    for (int k : ks) rep.sim_curve.emplace_back(k, sim_at_k(run, k, sim));
  rep.by_polarity = stratify(run, "polarity");
  rep.by_backend = stratify(run, "backend");
  rep.by_family = stratify(run, "family");
  rep.family_counts = strata_counts(run, "family");
  rep.buckets = bucket_counts(run);
  return rep;
}

std::string format_pct(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", rate * 100.0);
  return buf;
}

namespace {

void row(std::ostringstream& out, const std::vector<std::string>& cells,
         const std::vector<int>& widths) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out << "  ";
    out << cells[i];
    int pad = widths[i] - static_cast<int>(cells[i].size());
    for (int p = 0; p < pad; ++p) out << ' ';
  }
  out << '\n';
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<int> widths;
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) {
      if (widths.size() <= i) widths.push_back(0);
      widths[i] = std::max(widths[i], static_cast<int>(r[i].size()));
    }
  std::ostringstream out;
  for (const auto& r : rows) row(out, r, widths);
  return out.str();
}

}  // namespace

std::string render_text_report(const MetricReport& rep) {
  std::ostringstream out;
  out << "== " << rep.label << " / " << rep.condition << " ==\n\n";
  out << table({{"Model", "Correct", "Accuracy (%)", "SAT Acc. (%)"},
                {rep.label, std::to_string(rep.correct) + "/" + std::to_string(rep.total),
                 format_pct(rep.accuracy), format_pct(rep.sat_acc)}});
  out << "\nWitness gap: " << format_pct(rep.witness_gap_pp / 100.0) << " pp\n";
  if (!rep.sim_curve.empty()) {
    std::vector<std::string> header{"Model"}, values{rep.label};
    for (const auto& [k, rate] : rep.sim_curve) {
      header.push_back("sim@" + std::to_string(k));
      values.push_back(format_pct(rate));
    }
    out << '\n' << table({header, values});
  }
  if (rep.condition == "tools") {
    out << '\n'
        << table({{"Total", "Explicit", "Forced", "Forced correct", "Rescue (%)"},
                  {std::to_string(rep.total), std::to_string(rep.explicit_count),
                   std::to_string(rep.forced_count), std::to_string(rep.forced_correct),
                   format_pct(rep.rescue_rate)}});
  }
  out << '\n'
      << table({{"Accept", "Wrong pol.", "Wrong sol.", "Length", "Parse", "Max rounds", "Other"},
                {std::to_string(rep.buckets.at(FailureBucket::None)),
                 std::to_string(rep.buckets.at(FailureBucket::WrongPolarity)),
                 std::to_string(rep.buckets.at(FailureBucket::WrongSolution)),
                 std::to_string(rep.buckets.at(FailureBucket::Length)),
                 std::to_string(rep.buckets.at(FailureBucket::Parse)),
                 std::to_string(rep.buckets.at(FailureBucket::MaxRounds)),
                 std::to_string(rep.buckets.at(FailureBucket::Other))}});
  auto pick = [&](const std::map<std::string, double>& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? std::string("-") : format_pct(it->second);
  };
  out << '\n'
      << table({{"SAT", "UNSAT", "CP", "SMS"},
                {pick(rep.by_polarity, "SAT"), pick(rep.by_polarity, "UNSAT"),
                 pick(rep.by_backend, "pycsp"), pick(rep.by_backend, "pysms")}});
  std::vector<std::vector<std::string>> fam{{"Problem type", "n", "Accuracy (%)"}};
  for (const auto& [family, rate] : rep.by_family)
    fam.push_back({family, std::to_string(rep.family_counts.at(family)), format_pct(rate)});
  out << '\n' << table(fam);
  return out.str();
}

std::map<std::string, std::string> render_csv_tables(const MetricReport& rep) {
  std::map<std::string, std::string> out;
  {
    std::ostringstream csv;
    csv << "Model,Correct,Accuracy (%),SAT Acc. (%)\n";
    csv << rep.label << ',' << rep.correct << ',' << format_pct(rep.accuracy) << ','
        << format_pct(rep.sat_acc) << '\n';
    out["overall"] = csv.str();
  }
  if (!rep.sim_curve.empty()) {
    std::ostringstream csv;
    csv << "Model";
    for (const auto& [k, rate] : rep.sim_curve) csv << ",sim@" << k;
    csv << '\n' << rep.label;
    for (const auto& [k, rate] : rep.sim_curve) csv << ',' << format_pct(rate);
    csv << '\n';
    out["sim"] = csv.str();
  }
  {
    std::ostringstream csv;
    csv << "Model,Total,Explicit,Forced,Forced correct,Rescue (%)\n";
    csv << rep.label << ',' << rep.total << ',' << rep.explicit_count << ',' << rep.forced_count
        << ',' << rep.forced_correct << ',' << format_pct(rep.rescue_rate) << '\n';
    out["force_submit"] = csv.str();
  }
  {
    std::ostringstream csv;
    csv << "Model,Accept,Wrong pol.,Wrong sol.,Length,Parse,Max rounds,Other\n";
    csv << rep.label << ',' << rep.buckets.at(FailureBucket::None) << ','
        << rep.buckets.at(FailureBucket::WrongPolarity) << ','
        << rep.buckets.at(FailureBucket::WrongSolution) << ','
        << rep.buckets.at(FailureBucket::Length) << ',' << rep.buckets.at(FailureBucket::Parse)
        << ',' << rep.buckets.at(FailureBucket::MaxRounds) << ','
        << rep.buckets.at(FailureBucket::Other) << '\n';
    out["buckets"] = csv.str();
  }
  {
    std::ostringstream csv;
    csv << "Model,SAT,UNSAT,CP,SMS\n";
    auto pick = [&](const std::map<std::string, double>& m, const std::string& key) {
      auto it = m.find(key);
      return it == m.end() ? std::string("") : format_pct(it->second);
    };
    csv << rep.label << ',' << pick(rep.by_polarity, "SAT") << ',' << pick(rep.by_polarity, "UNSAT")
        << ',' << pick(rep.by_backend, "pycsp") << ',' << pick(rep.by_backend, "pysms") << '\n';
    out["stratification"] = csv.str();
  }
  {
    std::ostringstream csv;
    csv << "Problem type,n,Accuracy (%)\n";
    for (const auto& [family, rate] : rep.by_family)
      csv << family << ',' << rep.family_counts.at(family) << ',' << format_pct(rate) << '\n';
    out["per_family"] = csv.str();
  }
  return out;
}

}  // namespace combench

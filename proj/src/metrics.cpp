#include "ietk/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

#include "ietk/taskgen.hpp"
#include "json.hpp"

namespace ietk {

using njson = nlohmann::ordered_json;

double Counts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Counts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Counts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

Counts& Counts::operator+=(const Counts& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::ner: return "ner";
    case Metric::re: return "re";
    case Metric::ee_trigger: return "ee-trigger";
    case Metric::ee_argument: return "ee-argument";
  }
  return "ner";
}

Metric metric_from_string(std::string_view s) {
  std::string key(s);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "ner") return Metric::ner;
  if (key == "re") return Metric::re;
  if (key == "ee-trigger") return Metric::ee_trigger;
  if (key == "ee-argument") return Metric::ee_argument;
  throw std::runtime_error("unknown metric: " + std::string(s));
}

namespace {

TaskKind task_of(Metric m) {
  switch (m) {
    case Metric::ner: return TaskKind::ner;
    case Metric::re: return TaskKind::re;
    case Metric::ee_trigger:
    case Metric::ee_argument:
      return TaskKind::ee;
  }
  return TaskKind::ner;
}

std::string align_key(const std::string& dataset, const std::string& id) {
  return dataset + "\x1f" + id;
}

template <typename Set>
Counts count_sets(const Set& gold, const Set& pred) {
  Counts c;
  for (const auto& t : pred)
    gold.count(t) ? ++c.tp : ++c.fp;
  for (const auto& t : gold)
    if (!pred.count(t)) ++c.fn;
  return c;
}

Counts count_instance(Metric metric, const Instance& gold, const Prediction& pred) {
  switch (metric) {
    case Metric::ner:
      return count_sets(gold_tuples(gold, TaskKind::ner).entities, pred.entities);
    case Metric::re:
      return count_sets(gold_tuples(gold, TaskKind::re).relations, pred.relations);
    case Metric::ee_trigger:
      return count_sets(trigger_tuples(gold_tuples(gold, TaskKind::ee).events),
                        trigger_tuples(pred.events));
    case Metric::ee_argument:
      return count_sets(argument_tuples(gold_tuples(gold, TaskKind::ee).events),
                        argument_tuples(pred.events));
  }
  return {};
}

[[noreturn]] void throw_orphans(const char* side, const std::vector<std::string>& ids) {
  std::string msg = "gold/prediction id mismatch; ";
  msg += side;
  msg += " orphans:";
  const std::size_t shown = std::min<std::size_t>(ids.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) msg += " " + ids[i];
  if (ids.size() > shown)
    msg += " (+" + std::to_string(ids.size() - shown) + " more)";
  throw std::runtime_error(msg);
}

}  // namespace

EvalReport score(Metric metric, std::span<const Instance> golds,
                 std::span<const LabeledPrediction> preds, const ScoreOptions& options) {
  std::unordered_map<std::string, const LabeledPrediction*> by_key;
  by_key.reserve(preds.size());
  for (const auto& p : preds) {
    if (!by_key.emplace(align_key(p.dataset, p.id), &p).second)
      throw std::runtime_error("duplicate prediction for id " + p.id + " in dataset " +
                               p.dataset);
  }

  EvalReport report;
  report.metric = metric;
  const TaskKind task = task_of(metric);

  std::vector<std::string> missing;
  for (const auto& gold : golds) {
    const auto it = by_key.find(align_key(gold.dataset, gold.id));
    if (it == by_key.end()) {
      missing.push_back(gold.id);
      continue;
    }
    const LabeledPrediction& pred = *it->second;
    by_key.erase(it);

    if (options.exclude_ambiguous && is_delimiter_ambiguous(gold, task)) {
      ++report.diagnostics.ambiguous_excluded;
      continue;
    }

    report.per_dataset[gold.dataset] += count_instance(metric, gold, pred.prediction);
    report.diagnostics.malformed_segments += pred.prediction.diagnostics.malformed_segments;
    report.diagnostics.unknown_labels += pred.prediction.diagnostics.unknown_labels.size();
    report.diagnostics.duplicates_dropped += pred.prediction.diagnostics.duplicates_dropped;
  }
  if (!missing.empty()) throw_orphans("gold-side", missing);
  if (!by_key.empty()) {
    std::vector<std::string> extra;
    for (const auto& [key, p] : by_key) extra.push_back(p->id);
    std::sort(extra.begin(), extra.end());
    throw_orphans("prediction-side", extra);
  }

  for (const auto& [dataset, counts] : report.per_dataset) report.overall += counts;
  return report;
}

EvalReport score_ner(std::span<const Instance> golds,
                     std::span<const LabeledPrediction> preds, const ScoreOptions& o) {
  return score(Metric::ner, golds, preds, o);
}

EvalReport score_re(std::span<const Instance> golds,
                    std::span<const LabeledPrediction> preds, const ScoreOptions& o) {
  return score(Metric::re, golds, preds, o);
}

EvalReport score_ee_trigger(std::span<const Instance> golds,
                            std::span<const LabeledPrediction> preds,
                            const ScoreOptions& o) {
  return score(Metric::ee_trigger, golds, preds, o);
}

EvalReport score_ee_argument(std::span<const Instance> golds,
                             std::span<const LabeledPrediction> preds,
                             const ScoreOptions& o) {
  return score(Metric::ee_argument, golds, preds, o);
}

namespace {

njson counts_to_json(const Counts& c) {
  return njson{{"tp", c.tp},
               {"fp", c.fp},
               {"fn", c.fn},
               {"precision", c.precision()},
               {"recall", c.recall()},
               {"f1", c.f1()}};
}

}  // namespace

std::string report_to_json_string(const EvalReport& report) {
  njson j;
  j["metric"] = std::string(to_string(report.metric));
  j["overall"] = counts_to_json(report.overall);
  njson per = njson::object();
  for (const auto& [dataset, counts] : report.per_dataset)
    per[dataset] = counts_to_json(counts);
  j["per_dataset"] = std::move(per);
  j["diagnostics"] = njson{{"malformed_segments", report.diagnostics.malformed_segments},
                           {"unknown_labels", report.diagnostics.unknown_labels},
                           {"duplicates_dropped", report.diagnostics.duplicates_dropped},
                           {"ambiguous_excluded", report.diagnostics.ambiguous_excluded}};
  return j.dump(2);
}

std::string report_to_table(const EvalReport& report) {
  std::size_t width = 8;
  for (const auto& [dataset, counts] : report.per_dataset)
    width = std::max(width, dataset.size());

  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %10s %10s %10s\n",
                static_cast<int>(width), "dataset", "tp", "fp", "fn", "precision",
                "recall", "f1");
  out += buf;
  auto row = [&](const std::string& name, const Counts& c) {
    std::snprintf(buf, sizeof(buf), "%-*s %8llu %8llu %8llu %10.4f %10.4f %10.4f\n",
                  static_cast<int>(width), name.c_str(),
                  static_cast<unsigned long long>(c.tp),
                  static_cast<unsigned long long>(c.fp),
                  static_cast<unsigned long long>(c.fn), c.precision(), c.recall(),
                  c.f1());
    out += buf;
  };
  for (const auto& [dataset, counts] : report.per_dataset) row(dataset, counts);
  row("ALL", report.overall);
  return out;
}

}  // namespace ietk

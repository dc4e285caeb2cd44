#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ietk/instance.hpp"
#include "ietk/outparse.hpp"

namespace ietk {

struct Counts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  // 0/0 is defined as 0 throughout.
  double precision() const;
  double recall() const;
  double f1() const;

  Counts& operator+=(const Counts& other);
};

enum class Metric { ner, re, ee_trigger, ee_argument };

std::string_view to_string(Metric m);
Metric metric_from_string(std::string_view s);

struct LabeledPrediction {
  std::string id;       // gold instance id
  std::string dataset;  // must match the gold instance's dataset
  Prediction prediction;
};

struct EvalDiagnostics {
  std::uint64_t malformed_segments = 0;
  std::uint64_t unknown_labels = 0;
  std::uint64_t duplicates_dropped = 0;
  std::uint64_t ambiguous_excluded = 0;
};

struct EvalReport {
  Metric metric = Metric::ner;
  Counts overall;  // micro-aggregated: sums of per-dataset counts
  std::map<std::string, Counts> per_dataset;
  EvalDiagnostics diagnostics;
};

struct ScoreOptions {
  // Skip gold instances whose serialization is delimiter-ambiguous for the
  // scored task; skipped instances are counted in the diagnostics.
  bool exclude_ambiguous = false;
};

// Strict micro-F1 over exact tuple matches:
//   NER          (label, surface)
//   RE           (relation, head surface, tail surface), directed
//   EE trigger   (event type, trigger surface)
//   EE argument  (event type, role, filler surface), pooled across events
// Golds and predictions are aligned by (dataset, id); orphans on either
// side raise std::runtime_error naming them.
EvalReport score(Metric metric, std::span<const Instance> golds,
                 std::span<const LabeledPrediction> preds, const ScoreOptions& = {});

EvalReport score_ner(std::span<const Instance> golds,
                     std::span<const LabeledPrediction> preds, const ScoreOptions& = {});
EvalReport score_re(std::span<const Instance> golds,
                    std::span<const LabeledPrediction> preds, const ScoreOptions& = {});
EvalReport score_ee_trigger(std::span<const Instance> golds,
                            std::span<const LabeledPrediction> preds,
                            const ScoreOptions& = {});
EvalReport score_ee_argument(std::span<const Instance> golds,
                             std::span<const LabeledPrediction> preds,
                             const ScoreOptions& = {});

std::string report_to_json_string(const EvalReport& report);
// Aligned human-readable table, one row per dataset plus the aggregate.
std::string report_to_table(const EvalReport& report);

}  // namespace ietk

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ietk/instance.hpp"
#include "ietk/schema.hpp"
#include "ietk/tasks.hpp"

namespace ietk {

struct ParseDiagnostics {
  std::size_t malformed_segments = 0;
  std::vector<std::string> unknown_labels;
  std::size_t duplicates_dropped = 0;
  bool was_none = false;
};

struct EventPrediction {
  std::string event_type;
  std::string trigger;
  std::set<std::pair<std::string, std::string>> arguments;  // (role, filler)

  auto operator<=>(const EventPrediction&) const = default;
};

// Structured predictions recovered from one generation. Only the payload
// matching `task` is populated; labels in populated sets are always
// canonical members of the schema supplied at parse time.
struct Prediction {
  TaskKind task = TaskKind::ner;
  std::set<std::pair<std::string, std::string>> entities;  // NER/ET: (label, surface)
  std::set<std::tuple<std::string, std::string, std::string>> relations;  // RE/EPR
  std::vector<EventPrediction> events;                     // EE
  std::set<std::string> spans;                             // ES
  std::set<std::pair<std::string, std::string>> pairs;     // EP: (head, tail)
  std::set<std::pair<std::string, std::string>> triggers;  // EET: (type, trigger)
  std::set<std::pair<std::string, std::string>> arguments; // EEA: (filler, role)
  ParseDiagnostics diagnostics;
};

// All parsers are total: any byte string yields a Prediction, never a throw.
Prediction parse_ner(std::string_view generation, const LabelSchema& schema);
Prediction parse_re(std::string_view generation, const LabelSchema& schema);
Prediction parse_ee(std::string_view generation, const LabelSchema& schema);
Prediction parse_aux(std::string_view generation, TaskKind task, const LabelSchema& schema);
Prediction parse_generation(std::string_view generation, TaskKind task,
                            const LabelSchema& schema);

// Gold annotations viewed in the same tuple spaces the parsers produce
// (surfaces trimmed, duplicates collapsed). For EEA, `event_index` selects
// the event whose arguments form the gold set.
Prediction gold_tuples(const Instance& instance, TaskKind task, std::size_t event_index = 0);

// (event_type, trigger) tuples pooled over events.
std::set<std::pair<std::string, std::string>> trigger_tuples(
    const std::vector<EventPrediction>& events);
// (event_type, role, filler) tuples pooled over events.
std::set<std::tuple<std::string, std::string, std::string>> argument_tuples(
    const std::vector<EventPrediction>& events);

// Equality in the task's scored tuple space (EE compares trigger and
// argument tuples).
bool same_tuples(const Prediction& a, const Prediction& b, TaskKind task);

// JSON body of the task-relevant payload plus diagnostics, as emitted by the
// parse CLI; `prediction_from_json_string` inverts it.
std::string prediction_to_json_string(const Prediction& prediction);
Prediction prediction_from_json_string(std::string_view text);

}  // namespace ietk

#include "ietk/outparse.hpp"

#include <stdexcept>

#include "ietk/strings.hpp"
#include "json.hpp"

namespace ietk {

namespace {

bool is_none(std::string_view s) { return fold_label(trim(s)) == "none"; }

// Split on the first occurrence of `delim`; both halves trimmed.
bool split_first(std::string_view s, char delim, std::string& before, std::string& after) {
  const auto pos = s.find(delim);
  if (pos == std::string_view::npos) return false;
  before = std::string(trim(s.substr(0, pos)));
  after = std::string(trim(s.substr(pos + 1)));
  return true;
}

template <typename Set, typename Value>
void insert_counted(Set& set, Value&& value, ParseDiagnostics& diag) {
  if (!set.insert(std::forward<Value>(value)).second) ++diag.duplicates_dropped;
}

Prediction parse_ner_impl(std::string_view generation, const LabelSchema& schema,
                          TaskKind task) {
  Prediction pred;
  pred.task = task;
  const std::string_view body = trim(generation);
  if (is_none(body)) {
    pred.diagnostics.was_none = true;
    return pred;
  }
  for (const auto seg : split(body, ';')) {
    if (trim(seg).empty()) continue;  // trailing/duplicated separators are benign
    std::string label_text, surface;
    if (!split_first(seg, ':', label_text, surface)) {
      ++pred.diagnostics.malformed_segments;
      continue;
    }
    if (auto canon = schema.match_label(label_text)) {
      insert_counted(pred.entities, std::make_pair(*canon, surface), pred.diagnostics);
    } else {
      pred.diagnostics.unknown_labels.push_back(label_text);
    }
  }
  return pred;
}

Prediction parse_re_impl(std::string_view generation, const LabelSchema& schema,
                         TaskKind task) {
  Prediction pred;
  pred.task = task;
  const std::string_view body = trim(generation);
  if (is_none(body)) {
    pred.diagnostics.was_none = true;
    return pred;
  }
  for (const auto seg : split(body, ';')) {
    if (trim(seg).empty()) continue;
    const auto colon = seg.find(':');
    if (colon == std::string_view::npos) {
      ++pred.diagnostics.malformed_segments;
      continue;
    }
    const std::string relation_text(trim(seg.substr(0, colon)));
    std::string head, tail;
    if (!split_first(seg.substr(colon + 1), ',', head, tail)) {
      ++pred.diagnostics.malformed_segments;
      continue;
    }
    if (auto canon = schema.match_label(relation_text)) {
      insert_counted(pred.relations, std::make_tuple(*canon, head, tail),
                     pred.diagnostics);
    } else {
      pred.diagnostics.unknown_labels.push_back(relation_text);
    }
  }
  return pred;
}

}  // namespace

Prediction parse_ner(std::string_view generation, const LabelSchema& schema) {
  return parse_ner_impl(generation, schema, TaskKind::ner);
}

Prediction parse_re(std::string_view generation, const LabelSchema& schema) {
  return parse_re_impl(generation, schema, TaskKind::re);
}

Prediction parse_ee(std::string_view generation, const LabelSchema& schema) {
  Prediction pred;
  pred.task = TaskKind::ee;
  const std::string_view body = trim(generation);
  if (is_none(body)) {
    pred.diagnostics.was_none = true;
    return pred;
  }
  for (const auto seg : split(body, ';')) {
    if (trim(seg).empty()) continue;
    const auto chunks = split(seg, ',');
    // The leading "label: value" pair names the event; its label must be an
    // event type or the whole segment is malformed.
    std::string type_text, trigger;
    if (!split_first(chunks.front(), ':', type_text, trigger)) {
      ++pred.diagnostics.malformed_segments;
      continue;
    }
    auto canon_type = schema.match_event_type(type_text);
    if (!canon_type) {
      ++pred.diagnostics.malformed_segments;
      continue;
    }
    EventPrediction event;
    event.event_type = *canon_type;
    event.trigger = trigger;
    for (std::size_t i = 1; i < chunks.size(); ++i) {
      if (trim(chunks[i]).empty()) continue;
      std::string role_text, filler;
      if (!split_first(chunks[i], ':', role_text, filler)) {
        ++pred.diagnostics.malformed_segments;
        continue;
      }
      if (auto canon_role = schema.match_role(role_text)) {
        insert_counted(event.arguments, std::make_pair(*canon_role, filler),
                       pred.diagnostics);
      } else {
        pred.diagnostics.unknown_labels.push_back(role_text);
      }
    }
    pred.events.push_back(std::move(event));
  }
  return pred;
}

Prediction parse_aux(std::string_view generation, TaskKind task,
                     const LabelSchema& schema) {
  switch (task) {
    case TaskKind::et:
      return parse_ner_impl(generation, schema, TaskKind::et);
    case TaskKind::epr:
      return parse_re_impl(generation, schema, TaskKind::epr);
    case TaskKind::es:
    case TaskKind::ep:
    case TaskKind::eet:
    case TaskKind::eea:
      break;
    default:
      throw std::invalid_argument("parse_aux: not an auxiliary task");
  }

  Prediction pred;
  pred.task = task;
  const std::string_view body = trim(generation);
  if (is_none(body)) {
    pred.diagnostics.was_none = true;
    return pred;
  }

  if (task == TaskKind::es) {
    for (const auto part : split(body, ',')) {
      const auto surface = trim(part);
      if (surface.empty()) continue;
      insert_counted(pred.spans, std::string(surface), pred.diagnostics);
    }
    return pred;
  }

  if (task == TaskKind::ep) {
    for (const auto seg : split(body, ';')) {
      if (trim(seg).empty()) continue;
      std::string head, tail;
      if (!split_first(seg, ',', head, tail)) {
        ++pred.diagnostics.malformed_segments;
        continue;
      }
      insert_counted(pred.pairs, std::make_pair(head, tail), pred.diagnostics);
    }
    return pred;
  }

  if (task == TaskKind::eet) {
    for (const auto seg : split(body, ';')) {
      if (trim(seg).empty()) continue;
      std::string type_text, trigger;
      if (!split_first(seg, ':', type_text, trigger)) {
        ++pred.diagnostics.malformed_segments;
        continue;
      }
      if (auto canon = schema.match_event_type(type_text)) {
        insert_counted(pred.triggers, std::make_pair(*canon, trigger), pred.diagnostics);
      } else {
        pred.diagnostics.unknown_labels.push_back(type_text);
      }
    }
    return pred;
  }

  // EEA: "filler: role" atoms, separated by ";" or ",".
  for (const auto seg : split(body, ';')) {
    for (const auto atom : split(seg, ',')) {
      if (trim(atom).empty()) continue;
      std::string filler, role_text;
      if (!split_first(atom, ':', filler, role_text)) {
        ++pred.diagnostics.malformed_segments;
        continue;
      }
      if (auto canon = schema.match_role(role_text)) {
        insert_counted(pred.arguments, std::make_pair(filler, *canon), pred.diagnostics);
      } else {
        pred.diagnostics.unknown_labels.push_back(role_text);
      }
    }
  }
  return pred;
}

Prediction parse_generation(std::string_view generation, TaskKind task,
                            const LabelSchema& schema) {
  switch (task) {
    case TaskKind::ner: return parse_ner(generation, schema);
    case TaskKind::re: return parse_re(generation, schema);
    case TaskKind::ee: return parse_ee(generation, schema);
    default: return parse_aux(generation, task, schema);
  }
}

Prediction gold_tuples(const Instance& instance, TaskKind task, std::size_t event_index) {
  Prediction gold;
  gold.task = task;
  switch (task) {
    case TaskKind::ner:
    case TaskKind::et:
      for (const auto& e : instance.entities)
        gold.entities.emplace(e.label, std::string(trim(e.span.surface)));
      break;
    case TaskKind::re:
    case TaskKind::epr:
      for (const auto& r : instance.relations)
        gold.relations.emplace(r.relation, std::string(trim(r.head.surface)),
                               std::string(trim(r.tail.surface)));
      break;
    case TaskKind::ee:
      for (const auto& ev : instance.events) {
        EventPrediction ep;
        ep.event_type = ev.event_type;
        ep.trigger = std::string(trim(ev.trigger.surface));
        for (const auto& a : ev.arguments)
          ep.arguments.emplace(a.role, std::string(trim(a.filler.surface)));
        gold.events.push_back(std::move(ep));
      }
      break;
    case TaskKind::es:
      for (const auto& e : instance.entities)
        gold.spans.insert(std::string(trim(e.span.surface)));
      break;
    case TaskKind::ep:
      for (const auto& r : instance.relations)
        gold.pairs.emplace(std::string(trim(r.head.surface)),
                           std::string(trim(r.tail.surface)));
      break;
    case TaskKind::eet:
      for (const auto& ev : instance.events)
        gold.triggers.emplace(ev.event_type, std::string(trim(ev.trigger.surface)));
      break;
    case TaskKind::eea: {
      const auto& ev = instance.events.at(event_index);
      for (const auto& a : ev.arguments)
        gold.arguments.emplace(std::string(trim(a.filler.surface)), a.role);
      break;
    }
  }
  return gold;
}

std::set<std::pair<std::string, std::string>> trigger_tuples(
    const std::vector<EventPrediction>& events) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& ev : events) out.emplace(ev.event_type, ev.trigger);
  return out;
}

std::set<std::tuple<std::string, std::string, std::string>> argument_tuples(
    const std::vector<EventPrediction>& events) {
  std::set<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& ev : events)
    for (const auto& [role, filler] : ev.arguments)
      out.emplace(ev.event_type, role, filler);
  return out;
}

bool same_tuples(const Prediction& a, const Prediction& b, TaskKind task) {
  switch (task) {
    case TaskKind::ner:
    case TaskKind::et:
      return a.entities == b.entities;
    case TaskKind::re:
    case TaskKind::epr:
      return a.relations == b.relations;
    case TaskKind::ee:
      return trigger_tuples(a.events) == trigger_tuples(b.events) &&
             argument_tuples(a.events) == argument_tuples(b.events);
    case TaskKind::es:
      return a.spans == b.spans;
    case TaskKind::ep:
      return a.pairs == b.pairs;
    case TaskKind::eet:
      return a.triggers == b.triggers;
    case TaskKind::eea:
      return a.arguments == b.arguments;
  }
  return false;
}

namespace {

using njson = nlohmann::ordered_json;

njson pair_set_to_json(const std::set<std::pair<std::string, std::string>>& set) {
  njson out = njson::array();
  for (const auto& [a, b] : set) out.push_back(njson::array({a, b}));
  return out;
}

std::set<std::pair<std::string, std::string>> pair_set_from_json(const njson& j) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& item : j)
    out.emplace(item.at(0).get<std::string>(), item.at(1).get<std::string>());
  return out;
}

}  // namespace

std::string prediction_to_json_string(const Prediction& prediction) {
  njson j;
  j["task"] = std::string(to_string(prediction.task));
  switch (prediction.task) {
    case TaskKind::ner:
    case TaskKind::et:
      j["entities"] = pair_set_to_json(prediction.entities);
      break;
    case TaskKind::re:
    case TaskKind::epr: {
      njson rels = njson::array();
      for (const auto& [rel, head, tail] : prediction.relations)
        rels.push_back(njson::array({rel, head, tail}));
      j["relations"] = std::move(rels);
      break;
    }
    case TaskKind::ee: {
      njson evs = njson::array();
      for (const auto& ev : prediction.events) {
        njson args = njson::array();
        for (const auto& [role, filler] : ev.arguments)
          args.push_back(njson::array({role, filler}));
        evs.push_back(njson{
            {"type", ev.event_type}, {"trigger", ev.trigger}, {"arguments", std::move(args)}});
      }
      j["events"] = std::move(evs);
      break;
    }
    case TaskKind::es:
      j["spans"] = prediction.spans;
      break;
    case TaskKind::ep:
      j["pairs"] = pair_set_to_json(prediction.pairs);
      break;
    case TaskKind::eet:
      j["triggers"] = pair_set_to_json(prediction.triggers);
      break;
    case TaskKind::eea:
      j["arguments"] = pair_set_to_json(prediction.arguments);
      break;
  }
  j["diagnostics"] =
      njson{{"malformed_segments", prediction.diagnostics.malformed_segments},
            {"unknown_labels", prediction.diagnostics.unknown_labels},
            {"duplicates_dropped", prediction.diagnostics.duplicates_dropped},
            {"was_none", prediction.diagnostics.was_none}};
  return j.dump(-1, ' ', false, njson::error_handler_t::replace);
}

Prediction prediction_from_json_string(std::string_view text) {
  const njson j = njson::parse(text);
  Prediction p;
  p.task = task_from_string(j.at("task").get<std::string>());
  if (j.contains("entities")) p.entities = pair_set_from_json(j["entities"]);
  if (j.contains("relations"))
    for (const auto& item : j["relations"])
      p.relations.emplace(item.at(0).get<std::string>(), item.at(1).get<std::string>(),
                          item.at(2).get<std::string>());
  if (j.contains("events"))
    for (const auto& item : j["events"]) {
      EventPrediction ev;
      ev.event_type = item.at("type").get<std::string>();
      ev.trigger = item.at("trigger").get<std::string>();
      for (const auto& a : item.value("arguments", njson::array()))
        ev.arguments.emplace(a.at(0).get<std::string>(), a.at(1).get<std::string>());
      p.events.push_back(std::move(ev));
    }
  if (j.contains("spans"))
    p.spans = j["spans"].get<std::set<std::string>>();
  if (j.contains("pairs")) p.pairs = pair_set_from_json(j["pairs"]);
  if (j.contains("triggers")) p.triggers = pair_set_from_json(j["triggers"]);
  if (j.contains("arguments")) p.arguments = pair_set_from_json(j["arguments"]);
  if (j.contains("diagnostics")) {
    const auto& d = j["diagnostics"];
    p.diagnostics.malformed_segments = d.value("malformed_segments", 0u);
    p.diagnostics.unknown_labels =
        d.value("unknown_labels", std::vector<std::string>{});
    p.diagnostics.duplicates_dropped = d.value("duplicates_dropped", 0u);
    p.diagnostics.was_none = d.value("was_none", false);
  }
  return p;
}

}  // namespace ietk

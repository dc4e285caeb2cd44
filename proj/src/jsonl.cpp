#include "ietk/jsonl.hpp"

#include <istream>
#include <ostream>
#include <set>

#include "ietk/validate.hpp"
#include "json.hpp"

namespace ietk {

using njson = nlohmann::ordered_json;

namespace {

njson span_to_json(const Span& s) {
  return njson{{"start", s.start}, {"end", s.end}, {"surface", s.surface}};
}

Span span_from_json(const njson& j) {
  Span s;
  const auto start = j.at("start").get<long long>();
  const auto end = j.at("end").get<long long>();
  if (start < 0 || end < 0) throw std::runtime_error("negative span offset");
  s.start = static_cast<std::size_t>(start);
  s.end = static_cast<std::size_t>(end);
  s.surface = j.at("surface").get<std::string>();
  return s;
}

njson instance_to_json(const Instance& inst) {
  njson j;
  j["id"] = inst.id;
  j["dataset"] = inst.dataset;
  j["text"] = inst.text;
  njson ents = njson::array();
  for (const auto& e : inst.entities) {
    njson je = span_to_json(e.span);
    je["label"] = e.label;
    ents.push_back(std::move(je));
  }
  j["entities"] = std::move(ents);
  njson rels = njson::array();
  for (const auto& r : inst.relations) {
    rels.push_back(njson{{"relation", r.relation},
                         {"head", span_to_json(r.head)},
                         {"tail", span_to_json(r.tail)}});
  }
  j["relations"] = std::move(rels);
  njson evs = njson::array();
  for (const auto& ev : inst.events) {
    njson args = njson::array();
    for (const auto& a : ev.arguments)
      args.push_back(njson{{"role", a.role}, {"filler", span_to_json(a.filler)}});
    evs.push_back(njson{{"type", ev.event_type},
                        {"trigger", span_to_json(ev.trigger)},
                        {"arguments", std::move(args)}});
  }
  j["events"] = std::move(evs);
  return j;
}

Instance instance_from_json(const njson& j) {
  Instance inst;
  inst.id = j.at("id").get<std::string>();
  inst.dataset = j.at("dataset").get<std::string>();
  inst.text = j.at("text").get<std::string>();
  for (const auto& je : j.value("entities", njson::array())) {
    EntityMention e;
    e.span = span_from_json(je);
    e.label = je.at("label").get<std::string>();
    inst.entities.push_back(std::move(e));
  }
  for (const auto& jr : j.value("relations", njson::array())) {
    RelationMention r;
    r.relation = jr.at("relation").get<std::string>();
    r.head = span_from_json(jr.at("head"));
    r.tail = span_from_json(jr.at("tail"));
    inst.relations.push_back(std::move(r));
  }
  for (const auto& jv : j.value("events", njson::array())) {
    EventMention ev;
    ev.event_type = jv.at("type").get<std::string>();
    ev.trigger = span_from_json(jv.at("trigger"));
    for (const auto& ja : jv.value("arguments", njson::array())) {
      EventArgument a;
      a.role = ja.at("role").get<std::string>();
      a.filler = span_from_json(ja.at("filler"));
      ev.arguments.push_back(std::move(a));
    }
    inst.events.push_back(std::move(ev));
  }
  return inst;
}

// Drops exact duplicate mentions, keeping first occurrences.
template <typename T>
std::size_t collapse_duplicates(std::vector<T>& mentions) {
  std::vector<T> kept;
  std::size_t dropped = 0;
  for (auto& m : mentions) {
    bool seen = false;
    for (const auto& k : kept)
      if (k == m) {
        seen = true;
        break;
      }
    if (seen)
      ++dropped;
    else
      kept.push_back(std::move(m));
  }
  mentions = std::move(kept);
  return dropped;
}

}  // namespace

JsonlResult ingest_json(std::istream& source, const IngestOptions& options) {
  JsonlResult result;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    njson j = njson::parse(line, nullptr, false);
    if (j.is_discarded()) {
      result.errors.push_back({"", line_no, "", "invalid JSON"});
      continue;
    }
    Instance inst;
    try {
      inst = instance_from_json(j);
    } catch (const std::exception& e) {
      const std::string id = j.is_object() && j.contains("id") && j["id"].is_string()
                                 ? j["id"].get<std::string>()
                                 : "";
      result.errors.push_back({id, line_no, "", e.what()});
      continue;
    }

    if (!seen_ids.insert(inst.dataset + "\x1f" + inst.id).second) {
      result.errors.push_back({inst.id, line_no, "id", "duplicate id within dataset"});
      continue;
    }

    result.duplicates_collapsed += collapse_duplicates(inst.entities);
    result.duplicates_collapsed += collapse_duplicates(inst.relations);
    result.duplicates_collapsed += collapse_duplicates(inst.events);

    const auto violations = validate_structure(inst);
    if (!violations.empty()) {
      for (const auto& v : violations)
        result.errors.push_back({inst.id, line_no, v.field, v.message});
      continue;
    }

    if (options.schema != nullptr) {
      std::vector<Instance> one;
      one.push_back(std::move(inst));
      auto canon = canonicalize_instances(std::move(one), *options.schema);
      if (canon.instances.empty()) {
        for (auto& e : canon.errors) {
          e.line = line_no;
          result.errors.push_back(std::move(e));
        }
        continue;
      }
      inst = std::move(canon.instances.front());
    }

    if (options.expected) {
      const bool off_kind =
          (*options.expected != TaskCategory::ner && !inst.entities.empty()) ||
          (*options.expected != TaskCategory::re && !inst.relations.empty()) ||
          (*options.expected != TaskCategory::ee && !inst.events.empty());
      if (off_kind)
        result.warnings.push_back("record " + inst.id + " carries annotations outside " +
                                  std::string(to_string(*options.expected)));
    }

    result.instances.push_back(std::move(inst));
  }
  return result;
}

std::string instance_to_json_line(const Instance& instance) {
  // error_handler replaces non-UTF-8 bytes so legacy encodings cannot crash
  // the writer; canonical files are expected to be UTF-8.
  return instance_to_json(instance).dump(-1, ' ', false,
                                         njson::error_handler_t::replace);
}

void write_jsonl(std::ostream& out, std::span<const Instance> instances) {
  for (const auto& inst : instances) out << instance_to_json_line(inst) << "\n";
}

}  // namespace ietk

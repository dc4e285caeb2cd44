#include "ietk/schema.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ietk/strings.hpp"
#include "json.hpp"

namespace ietk {

using njson = nlohmann::ordered_json;

std::string_view to_string(TaskCategory c) {
  switch (c) {
    case TaskCategory::ner: return "NER";
    case TaskCategory::re: return "RE";
    case TaskCategory::ee: return "EE";
  }
  return "NER";
}

TaskCategory category_from_string(std::string_view s) {
  const std::string up = lower_ascii(s);
  if (up == "ner") return TaskCategory::ner;
  if (up == "re") return TaskCategory::re;
  if (up == "ee") return TaskCategory::ee;
  throw std::runtime_error("unknown task category: " + std::string(s));
}

namespace {

std::optional<std::string> match_in(const std::vector<std::string>& labels,
                                    std::string_view text) {
  const std::string key = fold_label(text);
  if (key.empty()) return std::nullopt;
  for (const auto& l : labels) {
    if (fold_label(l) == key) return l;
  }
  return std::nullopt;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

void check_label_list(const std::vector<std::string>& labels, const std::string& which,
                      const std::string& dataset) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (trim(l).empty())
      throw std::runtime_error("schema " + dataset + ": empty " + which + " label");
    if (l.find('_') != std::string::npos)
      throw std::runtime_error("schema " + dataset + ": " + which + " label '" + l +
                               "' contains an underscore");
    if (!seen.insert(l).second)
      throw std::runtime_error("schema " + dataset + ": duplicate " + which + " label '" +
                               l + "'");
  }
}

}  // namespace

std::optional<std::string> LabelSchema::match_label(std::string_view text) const {
  return match_in(labels, text);
}

std::optional<std::string> LabelSchema::match_event_type(std::string_view text) const {
  return match_in(event_types, text);
}

std::optional<std::string> LabelSchema::match_role(std::string_view text) const {
  return match_in(roles, text);
}

std::optional<std::string> LabelSchema::resolve(std::string_view raw) const {
  const std::string key(raw);
  if (auto it = raw_to_canonical.find(key); it != raw_to_canonical.end())
    return it->second;
  if (contains(labels, key) || contains(event_types, key) || contains(roles, key))
    return key;
  return std::nullopt;
}

void check_schema(const LabelSchema& schema) {
  check_label_list(schema.labels, "canonical", schema.dataset);
  check_label_list(schema.event_types, "event-type", schema.dataset);
  check_label_list(schema.roles, "role", schema.dataset);
  if (schema.task == TaskCategory::ee) {
    if (!schema.labels.empty())
      throw std::runtime_error("schema " + schema.dataset +
                               ": EE schemas use event_types/roles, not labels");
  } else if (!schema.event_types.empty() || !schema.roles.empty()) {
    throw std::runtime_error("schema " + schema.dataset +
                             ": event_types/roles are only valid for EE schemas");
  }
}

std::string naturalize_label(std::string_view raw,
                             const std::map<std::string, std::string>& overrides) {
  if (trim(raw).empty()) throw std::runtime_error("naturalize_label: empty raw label");
  if (auto it = overrides.find(std::string(raw)); it != overrides.end()) return it->second;

  // Keep only the final path segment of namespaced labels.
  std::string_view tail = raw;
  if (auto pos = tail.find_last_of('/'); pos != std::string_view::npos)
    tail = tail.substr(pos + 1);

  std::string spaced(tail);
  for (char& c : spaced)
    if (c == '_' || c == '-') c = ' ';
  std::string out = lower_ascii(collapse_ws(spaced));
  if (out.empty())
    throw std::runtime_error("naturalize_label: '" + std::string(raw) +
                             "' naturalizes to an empty label");
  return out;
}

namespace {

// Replace list members named in `aliases` with the representative, keeping
// first-occurrence order and dropping duplicates created by the merge.
void rewrite_list(std::vector<std::string>& list, const std::set<std::string>& members,
                  const std::string& rep) {
  std::vector<std::string> out;
  for (auto& l : list) {
    const std::string next = members.count(l) ? rep : l;
    if (!contains(out, next)) out.push_back(next);
  }
  list = std::move(out);
}

void check_case_ws_distinct(const std::vector<std::string>& labels,
                            const std::string& dataset) {
  std::map<std::string, std::string> folded;
  for (const auto& l : labels) {
    auto [it, fresh] = folded.emplace(fold_label(l), l);
    if (!fresh && it->second != l)
      throw std::runtime_error("schema " + dataset + ": labels '" + it->second +
                               "' and '" + l + "' differ only by case or whitespace");
  }
}

}  // namespace

void unify_labels(std::vector<LabelSchema>& schemas, const std::vector<AliasGroup>& groups) {
  // Conflicting representatives for the same label are a configuration error.
  std::map<std::string, std::string> rep_of;
  for (const auto& g : groups) {
    if (trim(g.canonical).empty())
      throw std::runtime_error("alias group without a designated representative");
    if (naturalize_label(g.canonical) != g.canonical)
      throw std::runtime_error("alias representative '" + g.canonical +
                               "' is not in canonical (naturalized) form");
    for (const auto& a : g.aliases) {
      auto [it, fresh] = rep_of.emplace(a, g.canonical);
      if (!fresh && it->second != g.canonical)
        throw std::runtime_error("label '" + a + "' is assigned two representatives: '" +
                                 it->second + "' and '" + g.canonical + "'");
    }
  }

  for (const auto& g : groups) {
    std::set<std::string> members(g.aliases.begin(), g.aliases.end());
    members.insert(g.canonical);
    for (auto& schema : schemas) {
      bool touched = false;
      for (const auto& m : members) {
        if (schema.raw_to_canonical.count(m) || contains(schema.labels, m) ||
            contains(schema.event_types, m) || contains(schema.roles, m)) {
          touched = true;
          break;
        }
      }
      for (const auto& [raw, canon] : schema.raw_to_canonical) {
        if (members.count(canon)) {
          touched = true;
          break;
        }
      }
      if (!touched) continue;

      // Close the member set over this schema's map: when a member raw
      // mapped to some canonical name, that name merges too, so label lists
      // and sibling raws follow it to the representative.
      std::set<std::string> merged = members;
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& [raw, canon] : schema.raw_to_canonical)
          if (merged.count(raw) && merged.insert(canon).second) grew = true;
      }

      for (auto& [raw, canon] : schema.raw_to_canonical) {
        if (merged.count(raw) || merged.count(canon)) canon = g.canonical;
      }
      // Every group member becomes a resolvable raw name.
      for (const auto& m : members) schema.raw_to_canonical[m] = g.canonical;
      rewrite_list(schema.labels, merged, g.canonical);
      rewrite_list(schema.event_types, merged, g.canonical);
      rewrite_list(schema.roles, merged, g.canonical);
    }
  }

  for (const auto& schema : schemas) {
    check_case_ws_distinct(schema.labels, schema.dataset);
    check_case_ws_distinct(schema.event_types, schema.dataset);
    check_case_ws_distinct(schema.roles, schema.dataset);
  }
}

std::string render_options(const LabelSchema& schema) {
  if (schema.task == TaskCategory::ee) {
    if (schema.event_types.empty())
      throw std::runtime_error("render_options: schema " + schema.dataset +
                               " has no event types");
    std::string out = "Option: " + join(schema.event_types, ", ");
    if (!schema.roles.empty()) out += "\nOption: " + join(schema.roles, ", ");
    return out;
  }
  if (schema.labels.empty())
    throw std::runtime_error("render_options: schema " + schema.dataset + " has no labels");
  return "Option: " + join(schema.labels, ", ");
}

namespace {

bool remap(std::string& label, const LabelSchema& schema, const std::string& id,
           const std::string& field, std::vector<RecordError>& errors) {
  if (auto canon = schema.resolve(label)) {
    label = *canon;
    return true;
  }
  errors.push_back({id, 0, field, "unknown raw label with no schema mapping: '" + label + "'"});
  return false;
}

}  // namespace

CanonicalizeResult canonicalize_instances(std::vector<Instance> instances,
                                          const LabelSchema& schema) {
  CanonicalizeResult result;
  for (auto& inst : instances) {
    bool ok = true;
    for (std::size_t i = 0; i < inst.entities.size(); ++i)
      ok &= remap(inst.entities[i].label, schema, inst.id,
                  "entities[" + std::to_string(i) + "].label", result.errors);
    for (std::size_t i = 0; i < inst.relations.size(); ++i)
      ok &= remap(inst.relations[i].relation, schema, inst.id,
                  "relations[" + std::to_string(i) + "].relation", result.errors);
    for (std::size_t i = 0; i < inst.events.size(); ++i) {
      auto& ev = inst.events[i];
      ok &= remap(ev.event_type, schema, inst.id,
                  "events[" + std::to_string(i) + "].type", result.errors);
      for (std::size_t a = 0; a < ev.arguments.size(); ++a)
        ok &= remap(ev.arguments[a].role, schema, inst.id,
                    "events[" + std::to_string(i) + "].arguments[" + std::to_string(a) +
                        "].role",
                    result.errors);
    }
    if (ok) result.instances.push_back(std::move(inst));
  }
  return result;
}

LabelSchema infer_schema(std::span<const Instance> corpus, TaskCategory task,
                         std::string dataset, const AliasConfig& aliases) {
  LabelSchema schema;
  schema.dataset = std::move(dataset);
  schema.task = task;

  auto add = [&](std::vector<std::string>& list, const std::string& raw) {
    if (schema.raw_to_canonical.count(raw)) return;
    const std::string canon = naturalize_label(raw, aliases.overrides);
    schema.raw_to_canonical[raw] = canon;
    if (!contains(list, canon)) list.push_back(canon);
  };

  for (const auto& inst : corpus) {
    switch (task) {
      case TaskCategory::ner:
        for (const auto& e : inst.entities) add(schema.labels, e.label);
        break;
      case TaskCategory::re:
        for (const auto& r : inst.relations) add(schema.labels, r.relation);
        break;
      case TaskCategory::ee:
        for (const auto& ev : inst.events) {
          add(schema.event_types, ev.event_type);
          for (const auto& a : ev.arguments) add(schema.roles, a.role);
        }
        break;
    }
  }

  if (!aliases.groups.empty()) {
    std::vector<LabelSchema> one{std::move(schema)};
    unify_labels(one, aliases.groups);
    schema = std::move(one.front());
  }
  check_schema(schema);
  return schema;
}

std::string schema_to_json_string(const LabelSchema& schema) {
  njson j;
  j["dataset"] = schema.dataset;
  j["task"] = std::string(to_string(schema.task));
  j["labels"] = schema.labels;
  j["event_types"] = schema.event_types;
  j["roles"] = schema.roles;
  j["raw_to_canonical"] = schema.raw_to_canonical;
  return j.dump(2);
}

LabelSchema schema_from_json_string(std::string_view text) {
  njson j = njson::parse(text);
  LabelSchema schema;
  schema.dataset = j.at("dataset").get<std::string>();
  schema.task = category_from_string(j.at("task").get<std::string>());
  schema.labels = j.value("labels", std::vector<std::string>{});
  schema.event_types = j.value("event_types", std::vector<std::string>{});
  schema.roles = j.value("roles", std::vector<std::string>{});
  if (j.contains("raw_to_canonical"))
    schema.raw_to_canonical =
        j.at("raw_to_canonical").get<std::map<std::string, std::string>>();
  check_schema(schema);
  return schema;
}

LabelSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schema file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return schema_from_json_string(buf.str());
}

void save_schema(const LabelSchema& schema, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schema file: " + path.string());
  out << schema_to_json_string(schema) << "\n";
}

AliasConfig alias_config_from_json_string(std::string_view text) {
  njson j = njson::parse(text);
  AliasConfig cfg;
  if (j.contains("overrides"))
    cfg.overrides = j.at("overrides").get<std::map<std::string, std::string>>();
  for (const auto& g : j.value("groups", njson::array())) {
    AliasGroup group;
    group.canonical = g.at("canonical").get<std::string>();
    group.aliases = g.at("aliases").get<std::vector<std::string>>();
    cfg.groups.push_back(std::move(group));
  }
  return cfg;
}

AliasConfig load_alias_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open alias config: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return alias_config_from_json_string(buf.str());
}

}  // namespace ietk

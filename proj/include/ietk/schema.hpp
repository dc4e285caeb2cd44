#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ietk/instance.hpp"

namespace ietk {

enum class TaskCategory { ner, re, ee };

std::string_view to_string(TaskCategory c);
TaskCategory category_from_string(std::string_view s);

// Canonical, naturalized label inventory of one dataset. Canonical labels
// are lowercase, underscore-free, unique, and kept in insertion order.
// For NER schemas `labels` holds entity types; for RE, relation types;
// EE schemas use `event_types` and `roles` and leave `labels` empty.
struct LabelSchema {
  std::string dataset;
  TaskCategory task = TaskCategory::ner;
  std::vector<std::string> labels;
  std::vector<std::string> event_types;
  std::vector<std::string> roles;
  std::map<std::string, std::string> raw_to_canonical;

  // Case-insensitive, whitespace-collapsed lookup; returns the canonical
  // spelling or nullopt.
  std::optional<std::string> match_label(std::string_view text) const;
  std::optional<std::string> match_event_type(std::string_view text) const;
  std::optional<std::string> match_role(std::string_view text) const;

  // Raw -> canonical resolution: explicit mapping first, then identity for
  // names that are already canonical members.
  std::optional<std::string> resolve(std::string_view raw) const;
};

// Throws std::runtime_error on any canonical-label invariant violation
// (empty, underscore, duplicate).
void check_schema(const LabelSchema& schema);

// Rule-based label naturalization: an override wins verbatim; otherwise the
// final "/"-path segment is kept, "_" and "-" become spaces, whitespace is
// collapsed, and the result is lowercased. Throws on empty input or empty
// result.
std::string naturalize_label(std::string_view raw,
                             const std::map<std::string, std::string>& overrides = {});

struct AliasGroup {
  std::string canonical;             // designated representative
  std::vector<std::string> aliases;  // raw labels with identical semantics
};

struct AliasConfig {
  std::map<std::string, std::string> overrides;  // raw -> canonical, verbatim
  std::vector<AliasGroup> groups;
};

// Rewrites raw_to_canonical maps (and label lists) so every member of each
// alias group maps to the group's representative. A schema is touched only
// if it already mentions at least one member. Idempotent. Throws on
// conflicting representatives for the same label or on representatives that
// are not naturalization fixpoints.
void unify_labels(std::vector<LabelSchema>& schemas, const std::vector<AliasGroup>& groups);

// "Option: l1, l2, ..., ln" over the schema's canonical labels in schema
// order. EE schemas render event types and argument roles as two such
// lines (roles line omitted when the schema has no roles). Throws when the
// schema has no labels at all.
std::string render_options(const LabelSchema& schema);

// Maps every raw label in the given instances to its canonical name.
// Instances carrying labels the schema cannot resolve are dropped and
// reported.
struct CanonicalizeResult {
  std::vector<Instance> instances;
  std::vector<RecordError> errors;
};
CanonicalizeResult canonicalize_instances(std::vector<Instance> instances,
                                          const LabelSchema& schema);

// Builds a schema from a corpus: raw labels are collected in first-seen
// order and naturalized; alias groups, when given, are applied afterwards.
LabelSchema infer_schema(std::span<const Instance> corpus, TaskCategory task,
                         std::string dataset, const AliasConfig& aliases = {});

LabelSchema load_schema(const std::filesystem::path& path);
void save_schema(const LabelSchema& schema, const std::filesystem::path& path);
std::string schema_to_json_string(const LabelSchema& schema);
LabelSchema schema_from_json_string(std::string_view text);

AliasConfig load_alias_config(const std::filesystem::path& path);
AliasConfig alias_config_from_json_string(std::string_view text);

}  // namespace ietk

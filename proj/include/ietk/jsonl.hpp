#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ietk/instance.hpp"
#include "ietk/schema.hpp"

namespace ietk {

struct IngestOptions {
  // Record a warning when an instance carries annotations outside this kind.
  std::optional<TaskCategory> expected;
  // When set, raw labels are resolved to canonical names; records with
  // unmappable labels are rejected.
  const LabelSchema* schema = nullptr;
};

struct JsonlResult {
  std::vector<Instance> instances;
  std::vector<RecordError> errors;  // rejected records
  std::vector<std::string> warnings;
  std::size_t duplicates_collapsed = 0;  // identical mentions dropped
};

// Reads canonical JSONL (one instance per line). Every record is validated
// against the span invariants; failures are rejected with per-record
// diagnostics and valid records pass through. Exact duplicate mentions are
// collapsed and tallied. Order-preserving and deterministic.
JsonlResult ingest_json(std::istream& source, const IngestOptions& options = {});

std::string instance_to_json_line(const Instance& instance);
void write_jsonl(std::ostream& out, std::span<const Instance> instances);

}  // namespace ietk

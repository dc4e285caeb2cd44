#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ietk/instance.hpp"
#include "ietk/schema.hpp"
#include "ietk/tasks.hpp"

namespace ietk {

// A compiled four-part training/eval record.
struct PromptInstance {
  std::string id;
  std::string source_id;
  std::string dataset;
  TaskKind task = TaskKind::ner;
  std::string instruction;
  std::string options;
  std::string text;
  std::string gold_output;
  // Set when some gold surface collides with the output grammar's
  // separators, making the serialization lossy.
  bool ambiguous = false;

  bool operator==(const PromptInstance&) const = default;
};

// Instruction templates per task. Always contains the built-in bank; files
// may only extend it.
class InstructionBank {
 public:
  static InstructionBank builtin();
  static InstructionBank from_json_string(std::string_view text);
  static InstructionBank load(const std::filesystem::path& path);

  const std::vector<std::string>& templates(TaskKind task) const;
  void add(TaskKind task, std::string tmpl);

 private:
  std::array<std::vector<std::string>, 9> templates_;
};

// Gold-output serializers. Mentions are emitted verbatim in annotation
// order; an empty annotation list serializes to "None". No escaping:
// surfaces containing the separators make the line lossy, which compile
// flags as ambiguous.
std::string serialize_ner(const Instance& instance);
std::string serialize_re(const Instance& instance);
std::string serialize_ee(const Instance& instance);

// ES/ET/EP/EPR/EET serializations; for EEA, `event_index` names the event
// whose arguments are serialized ("filler: role" segments). Throws on a
// main-task kind or an out-of-range event index.
std::string serialize_aux(const Instance& instance, TaskKind task,
                          std::size_t event_index = 0);

// Round-trip check: true when parse(serialize(instance)) fails to recover
// the gold tuple set, i.e. a surface collides with the grammar separators.
// Parsing runs against a schema made of the instance's own labels.
bool is_delimiter_ambiguous(const Instance& instance, TaskKind task,
                            std::size_t event_index = 0);

// Compiles one prompt: instruction picked deterministically from the bank
// via hash(instance.id, seed); options rendered from the schema; prompt
// text carries the classify-me suffix for ET/EPR/EEA.
PromptInstance build_prompt(const Instance& instance, TaskKind task,
                            const LabelSchema& schema, const InstructionBank& bank,
                            std::uint64_t seed, std::size_t event_index = 0);

struct CompileResult {
  std::vector<PromptInstance> prompts;
  std::vector<RecordError> errors;  // instances rejected by validation
  std::size_t ambiguous_count = 0;
};

// Compiles every instance for every requested task (EEA expands per event).
// All tasks must derive from the schema's category. Deterministic: same
// inputs and seed give identical output, with prompts ordered by instance
// then task.
CompileResult compile_dataset(std::span<const Instance> instances,
                              const std::set<TaskKind>& tasks, const LabelSchema& schema,
                              const InstructionBank& bank, std::uint64_t seed);

std::string prompt_to_json_line(const PromptInstance& prompt);
PromptInstance prompt_from_json_line(std::string_view line);
void write_prompts(std::ostream& out, std::span<const PromptInstance> prompts);

struct PromptReadResult {
  std::vector<PromptInstance> prompts;
  std::vector<RecordError> errors;
};
PromptReadResult read_prompts(std::istream& in);

}  // namespace ietk

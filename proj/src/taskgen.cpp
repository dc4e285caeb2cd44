#include "ietk/taskgen.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ietk/hash.hpp"
#include "ietk/outparse.hpp"
#include "ietk/strings.hpp"
#include "ietk/validate.hpp"
#include "json.hpp"

namespace ietk {

using njson = nlohmann::ordered_json;

namespace {

constexpr std::size_t task_slot(TaskKind k) { return static_cast<std::size_t>(k); }

}  // namespace

InstructionBank InstructionBank::builtin() {
  InstructionBank bank;
  bank.add(TaskKind::ner,
           "Please list all entity words in the text that fit the category. Output "
           "format is \"type1: word1; type2: word2\".");
  bank.add(TaskKind::ner,
           "Please find all the entity words associated with the category in the given "
           "text. Output format is \"type1: word1; type2: word2\".");
  bank.add(TaskKind::ner,
           "Please tell me all the entity words in the text that belong to a given "
           "category. Output format is \"type1: word1; type2: word2\".");
  bank.add(TaskKind::re,
           "Given a phrase that describes the relationship between two words, extract "
           "the words and the lexical relationship between them. The output format "
           "should be \"relation1: word1, word2; relation2: word3, word4\".");
  bank.add(TaskKind::re,
           "Find the phrases in the following sentences that have a given relationship. "
           "The output format is \"relation1: word1, word2; relation2: word3, word4\".");
  bank.add(TaskKind::re,
           "Given a sentence, please extract the subject and object containing a "
           "certain relation in the sentence according to the following relation types, "
           "in the format of \"relation1: word1, word2; relation2: word3, word4\".");
  bank.add(TaskKind::ee,
           "Locate the role in the text that participated in the event based on the "
           "event type and return it in the event list.");
  bank.add(TaskKind::ee,
           "Extract the event information in the text and return them in the event "
           "list.");
  bank.add(TaskKind::es,
           "Please list all entity words in the text that fit the category. Output "
           "format is word1, word2.");
  bank.add(TaskKind::et,
           "Given options, please tell me the categories of all the listed entity "
           "words.Output format is \"type1: word1; type2: word2\".");
  bank.add(TaskKind::ep,
           "Please list all entity pairs containing a certain relationship in the given "
           "options.Output format is \"word1, word2; word3, word4\".");
  bank.add(TaskKind::epr,
           "Given options, please tell me the relationships of all the listed entity "
           "pairs.Output format is \"relation1: word1, word2; relation2: word3, "
           "word4\".");
  bank.add(TaskKind::eea,
           "Given event type and trigger, please tell me the arguments of all the "
           "listed option. Output format is \"name: role\".");
  bank.add(TaskKind::eet,
           "Please tell me event type and its trigger word from given type options. "
           "Output format is \"event type: trigger\".");
  return bank;
}

InstructionBank InstructionBank::from_json_string(std::string_view text) {
  InstructionBank bank = builtin();
  njson j = njson::parse(text);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const TaskKind task = task_from_string(it.key());
    for (const auto& tmpl : it.value()) bank.add(task, tmpl.get<std::string>());
  }
  return bank;
}

InstructionBank InstructionBank::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instruction bank: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

const std::vector<std::string>& InstructionBank::templates(TaskKind task) const {
  const auto& list = templates_[task_slot(task)];
  if (list.empty())
    throw std::runtime_error("instruction bank has no template for task " +
                             std::string(to_string(task)));
  return list;
}

void InstructionBank::add(TaskKind task, std::string tmpl) {
  auto& list = templates_[task_slot(task)];
  for (const auto& t : list)
    if (t == tmpl) return;
  list.push_back(std::move(tmpl));
}

std::string serialize_ner(const Instance& instance) {
  if (instance.entities.empty()) return "None";
  std::vector<std::string> segments;
  segments.reserve(instance.entities.size());
  for (const auto& e : instance.entities)
    segments.push_back(e.label + ": " + e.span.surface);
  return join(segments, "; ");
}

std::string serialize_re(const Instance& instance) {
  if (instance.relations.empty()) return "None";
  std::vector<std::string> segments;
  segments.reserve(instance.relations.size());
  for (const auto& r : instance.relations)
    segments.push_back(r.relation + ": " + r.head.surface + ", " + r.tail.surface);
  return join(segments, "; ");
}

std::string serialize_ee(const Instance& instance) {
  if (instance.events.empty()) return "None";
  std::vector<std::string> segments;
  segments.reserve(instance.events.size());
  for (const auto& ev : instance.events) {
    std::string seg = ev.event_type + ": " + ev.trigger.surface;
    for (const auto& a : ev.arguments) seg += ", " + a.role + ": " + a.filler.surface;
    segments.push_back(std::move(seg));
  }
  return join(segments, "; ");
}

std::string serialize_aux(const Instance& instance, TaskKind task,
                          std::size_t event_index) {
  switch (task) {
    case TaskKind::es: {
      if (instance.entities.empty()) return "None";
      std::vector<std::string> surfaces;
      for (const auto& e : instance.entities) surfaces.push_back(e.span.surface);
      return join(surfaces, ", ");
    }
    case TaskKind::et:
      return serialize_ner(instance);
    case TaskKind::ep: {
      if (instance.relations.empty()) return "None";
      std::vector<std::string> segments;
      for (const auto& r : instance.relations)
        segments.push_back(r.head.surface + ", " + r.tail.surface);
      return join(segments, "; ");
    }
    case TaskKind::epr:
      return serialize_re(instance);
    case TaskKind::eet: {
      if (instance.events.empty()) return "None";
      std::vector<std::string> segments;
      for (const auto& ev : instance.events)
        segments.push_back(ev.event_type + ": " + ev.trigger.surface);
      return join(segments, "; ");
    }
    case TaskKind::eea: {
      const auto& ev = instance.events.at(event_index);
      if (ev.arguments.empty()) return "None";
      std::vector<std::string> segments;
      for (const auto& a : ev.arguments)
        segments.push_back(a.filler.surface + ": " + a.role);
      return join(segments, "; ");
    }
    default:
      throw std::invalid_argument("serialize_aux: " + std::string(to_string(task)) +
                                  " is not an auxiliary task");
  }
}

namespace {

std::string serialize_for(const Instance& instance, TaskKind task,
                          std::size_t event_index) {
  switch (task) {
    case TaskKind::ner: return serialize_ner(instance);
    case TaskKind::re: return serialize_re(instance);
    case TaskKind::ee: return serialize_ee(instance);
    default: return serialize_aux(instance, task, event_index);
  }
}

void add_unique(std::vector<std::string>& list, const std::string& label) {
  for (const auto& l : list)
    if (l == label) return;
  list.push_back(label);
}

// Schema spanning exactly the labels this instance uses; enough for the
// serialize/parse round trip.
LabelSchema own_label_schema(const Instance& instance, TaskCategory category) {
  LabelSchema schema;
  schema.dataset = instance.dataset;
  schema.task = category;
  switch (category) {
    case TaskCategory::ner:
      for (const auto& e : instance.entities) add_unique(schema.labels, e.label);
      break;
    case TaskCategory::re:
      for (const auto& r : instance.relations) add_unique(schema.labels, r.relation);
      break;
    case TaskCategory::ee:
      for (const auto& ev : instance.events) {
        add_unique(schema.event_types, ev.event_type);
        for (const auto& a : ev.arguments) add_unique(schema.roles, a.role);
      }
      break;
  }
  return schema;
}

}  // namespace

bool is_delimiter_ambiguous(const Instance& instance, TaskKind task,
                            std::size_t event_index) {
  const LabelSchema schema = own_label_schema(instance, category_of(task));
  const std::string line = serialize_for(instance, task, event_index);
  const Prediction recovered = parse_generation(line, task, schema);
  return !same_tuples(recovered, gold_tuples(instance, task, event_index), task);
}

PromptInstance build_prompt(const Instance& instance, TaskKind task,
                            const LabelSchema& schema, const InstructionBank& bank,
                            std::uint64_t seed, std::size_t event_index) {
  const auto& templates = bank.templates(task);

  PromptInstance prompt;
  prompt.source_id = instance.id;
  prompt.dataset = instance.dataset;
  prompt.task = task;
  prompt.id = instance.id + ":" + std::string(to_string(task));
  if (task == TaskKind::eea) prompt.id += ":" + std::to_string(event_index);
  prompt.instruction = templates[bucket_of(instance.id, seed, templates.size())];
  prompt.options = render_options(schema);
  prompt.text = instance.text;

  // ET/EPR/EEA prompts name the items to classify on a suffix line.
  if (task == TaskKind::et) {
    std::vector<std::string> surfaces;
    for (const auto& e : instance.entities) surfaces.push_back(e.span.surface);
    prompt.text += "\nEntities: " + (surfaces.empty() ? "None" : join(surfaces, ", "));
  } else if (task == TaskKind::epr) {
    std::vector<std::string> pairs;
    for (const auto& r : instance.relations)
      pairs.push_back(r.head.surface + ", " + r.tail.surface);
    prompt.text += "\nEntity pairs: " + (pairs.empty() ? "None" : join(pairs, "; "));
  } else if (task == TaskKind::eea) {
    const auto& ev = instance.events.at(event_index);
    prompt.text += "\nEvent: " + ev.event_type + ", " + ev.trigger.surface;
  }

  prompt.gold_output = serialize_for(instance, task, event_index);
  prompt.ambiguous = is_delimiter_ambiguous(instance, task, event_index);
  return prompt;
}

CompileResult compile_dataset(std::span<const Instance> instances,
                              const std::set<TaskKind>& tasks, const LabelSchema& schema,
                              const InstructionBank& bank, std::uint64_t seed) {
  for (TaskKind task : tasks) {
    if (category_of(task) != schema.task)
      throw std::invalid_argument("task " + std::string(to_string(task)) +
                                  " is incompatible with a " +
                                  std::string(to_string(schema.task)) + " schema");
  }

  CompileResult result;
  for (const auto& source : instances) {
    // Raw labels resolve through the schema map; anything unresolvable or
    // structurally broken rejects the instance.
    auto canon = canonicalize_instances({source}, schema);
    if (canon.instances.empty()) {
      result.errors.insert(result.errors.end(), canon.errors.begin(),
                           canon.errors.end());
      continue;
    }
    const Instance& inst = canon.instances.front();
    const auto violations = validate_instance(inst, schema);
    if (!violations.empty()) {
      for (const auto& v : violations)
        result.errors.push_back({inst.id, 0, v.field, v.message});
      continue;
    }
    for (TaskKind task : kAllTaskKinds) {
      if (!tasks.count(task)) continue;
      if (task == TaskKind::eea) {
        for (std::size_t j = 0; j < inst.events.size(); ++j) {
          result.prompts.push_back(build_prompt(inst, task, schema, bank, seed, j));
          if (result.prompts.back().ambiguous) ++result.ambiguous_count;
        }
      } else {
        result.prompts.push_back(build_prompt(inst, task, schema, bank, seed));
        if (result.prompts.back().ambiguous) ++result.ambiguous_count;
      }
    }
  }
  return result;
}

std::string prompt_to_json_line(const PromptInstance& prompt) {
  njson j;
  j["id"] = prompt.id;
  j["source_id"] = prompt.source_id;
  j["dataset"] = prompt.dataset;
  j["task"] = std::string(to_string(prompt.task));
  j["instruction"] = prompt.instruction;
  j["options"] = prompt.options;
  j["text"] = prompt.text;
  j["gold_output"] = prompt.gold_output;
  if (prompt.ambiguous) j["ambiguous"] = true;
  return j.dump(-1, ' ', false, njson::error_handler_t::replace);
}

PromptInstance prompt_from_json_line(std::string_view line) {
  njson j = njson::parse(line);
  PromptInstance prompt;
  prompt.id = j.at("id").get<std::string>();
  prompt.source_id = j.at("source_id").get<std::string>();
  prompt.dataset = j.at("dataset").get<std::string>();
  prompt.task = task_from_string(j.at("task").get<std::string>());
  prompt.instruction = j.at("instruction").get<std::string>();
  prompt.options = j.at("options").get<std::string>();
  prompt.text = j.at("text").get<std::string>();
  prompt.gold_output = j.at("gold_output").get<std::string>();
  prompt.ambiguous = j.value("ambiguous", false);
  return prompt;
}

void write_prompts(std::ostream& out, std::span<const PromptInstance> prompts) {
  for (const auto& p : prompts) out << prompt_to_json_line(p) << "\n";
}

PromptReadResult read_prompts(std::istream& in) {
  PromptReadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      result.prompts.push_back(prompt_from_json_line(line));
    } catch (const std::exception& e) {
      result.errors.push_back({"", line_no, "", e.what()});
    }
  }
  return result;
}

}  // namespace ietk

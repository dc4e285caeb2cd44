// ietk - compile IE corpora to instruction/options/text/output records,
// parse model generations back into structured predictions, score them with
// strict micro-F1, build reproducible splits, and talk to a completion
// endpoint. One subcommand per pipeline stage; JSONL in, JSONL out.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ietk/bio.hpp"
#include "ietk/hash.hpp"
#include "ietk/infer.hpp"
#include "ietk/jsonl.hpp"
#include "ietk/metrics.hpp"
#include "ietk/schema.hpp"
#include "ietk/splits.hpp"
#include "ietk/strings.hpp"
#include "ietk/taskgen.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;
using namespace ietk;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty())
    fs::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void report_record_errors(const std::vector<RecordError>& errors,
                          const std::string& errors_path) {
  if (errors.empty()) return;
  std::cerr << errors.size() << " record(s) rejected\n";
  if (errors_path.empty()) {
    for (std::size_t i = 0; i < std::min<std::size_t>(errors.size(), 10); ++i) {
      const auto& e = errors[i];
      std::cerr << "  " << (e.id.empty() ? "line " + std::to_string(e.line) : e.id)
                << (e.field.empty() ? "" : " " + e.field) << ": " << e.message << "\n";
    }
    if (errors.size() > 10) std::cerr << "  ...\n";
    return;
  }
  auto out = open_output(errors_path);
  for (const auto& e : errors)
    out << njson{{"id", e.id}, {"line", e.line}, {"field", e.field}, {"message", e.message}}
               .dump()
        << "\n";
}

std::vector<Instance> load_instances(const std::string& path) {
  auto in = open_input(path);
  auto result = ingest_json(in);
  if (!result.errors.empty()) {
    report_record_errors(result.errors, "");
    throw std::runtime_error("invalid records in " + path);
  }
  return std::move(result.instances);
}

// --- ingest ---------------------------------------------------------------

struct IngestArgs {
  std::string input;
  std::string output;
  std::string format = "jsonl";  // bio | bio2 | jsonl
  std::string dataset;
  std::string task;
  std::string schema_path;
  std::string errors_path;
};

int run_ingest(const IngestArgs& args) {
  std::optional<LabelSchema> schema;
  if (!args.schema_path.empty()) schema = load_schema(args.schema_path);

  std::vector<Instance> instances;
  std::vector<RecordError> errors;
  auto in = open_input(args.input);

  if (args.format == "bio" || args.format == "bio2") {
    if (args.dataset.empty())
      throw std::runtime_error("--dataset is required for token-tagged input");
    auto result = ingest_token_tagged(
        in, args.format == "bio" ? TagFormat::bio : TagFormat::iob2, args.dataset);
    errors = std::move(result.errors);
    if (result.repaired_continuations > 0)
      std::cerr << "repaired " << result.repaired_continuations
                << " chunk-initial I- tag(s)\n";
    instances = std::move(result.instances);
    if (schema) {
      auto canon = canonicalize_instances(std::move(instances), *schema);
      instances = std::move(canon.instances);
      errors.insert(errors.end(), canon.errors.begin(), canon.errors.end());
    }
  } else if (args.format == "jsonl") {
    IngestOptions options;
    if (!args.task.empty()) options.expected = category_from_string(args.task);
    if (schema) options.schema = &*schema;
    auto result = ingest_json(in, options);
    errors = std::move(result.errors);
    instances = std::move(result.instances);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (result.duplicates_collapsed > 0)
      std::cerr << "collapsed " << result.duplicates_collapsed
                << " duplicate mention(s)\n";
  } else {
    throw std::runtime_error("unknown format: " + args.format);
  }

  auto out = open_output(args.output);
  write_jsonl(out, instances);
  report_record_errors(errors, args.errors_path);
  std::cerr << instances.size() << " instance(s) written\n";
  return 0;
}

// --- schema-build ----------------------------------------------------------

struct SchemaBuildArgs {
  std::string input;
  std::string output;
  std::string dataset;
  std::string task = "NER";
  std::string aliases_path;
};

int run_schema_build(const SchemaBuildArgs& args) {
  const auto corpus = load_instances(args.input);
  AliasConfig aliases;
  if (!args.aliases_path.empty()) aliases = load_alias_config(args.aliases_path);
  const std::string dataset =
      args.dataset.empty() && !corpus.empty() ? corpus.front().dataset : args.dataset;
  const auto schema =
      infer_schema(corpus, category_from_string(args.task), dataset, aliases);
  save_schema(schema, args.output);
  std::cerr << "schema with "
            << (schema.task == TaskCategory::ee
                    ? schema.event_types.size() + schema.roles.size()
                    : schema.labels.size())
            << " label(s) written\n";
  return 0;
}

// --- compile ---------------------------------------------------------------

struct CompileArgs {
  std::string input;
  std::string output;
  std::string schema_path;
  std::string bank_path;
  std::vector<std::string> tasks;
  std::uint64_t seed = 0;
};

int run_compile(const CompileArgs& args) {
  const auto schema = load_schema(args.schema_path);
  const auto bank = args.bank_path.empty() ? InstructionBank::builtin()
                                           : InstructionBank::load(args.bank_path);
  std::set<TaskKind> tasks;
  for (const auto& t : args.tasks)
    for (const auto part : split(t, ','))
      if (!trim(part).empty()) tasks.insert(task_from_string(part));
  if (tasks.empty()) {
    // Default: the schema's main task.
    tasks.insert(schema.task == TaskCategory::ner  ? TaskKind::ner
                 : schema.task == TaskCategory::re ? TaskKind::re
                                                   : TaskKind::ee);
  }

  const auto corpus = load_instances(args.input);
  const auto result = compile_dataset(corpus, tasks, schema, bank, args.seed);
  auto out = open_output(args.output);
  write_prompts(out, result.prompts);
  report_record_errors(result.errors, "");
  std::cerr << result.prompts.size() << " prompt(s) written";
  if (result.ambiguous_count > 0)
    std::cerr << ", " << result.ambiguous_count << " flagged delimiter-ambiguous";
  std::cerr << "\n";
  return 0;
}

// --- parse -----------------------------------------------------------------

struct ParseArgs {
  std::string input;
  std::string output;
  std::vector<std::string> schema_paths;
};

int run_parse(const ParseArgs& args) {
  std::map<std::string, LabelSchema> schemas;
  for (const auto& p : args.schema_paths) {
    auto schema = load_schema(p);
    schemas[schema.dataset] = std::move(schema);
  }
  if (schemas.empty()) throw std::runtime_error("at least one --schema is required");

  auto in = open_input(args.input);
  auto out = open_output(args.output);
  std::string line;
  std::size_t line_no = 0, parsed = 0, skipped = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    njson j = njson::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      std::cerr << "line " << line_no << ": invalid JSON, skipped\n";
      ++skipped;
      continue;
    }
    try {
      const auto task = task_from_string(j.at("task").get<std::string>());
      const auto dataset = j.at("dataset").get<std::string>();
      const auto generation = j.at("generation").get<std::string>();
      const LabelSchema* schema = nullptr;
      if (auto it = schemas.find(dataset); it != schemas.end())
        schema = &it->second;
      else if (schemas.size() == 1)
        schema = &schemas.begin()->second;
      else
        throw std::runtime_error("no schema for dataset " + dataset);

      const auto pred = parse_generation(generation, task, *schema);
      njson record;
      record["id"] = j.at("id").get<std::string>();
      if (j.contains("source_id")) record["source_id"] = j["source_id"];
      record["dataset"] = dataset;
      const njson body = njson::parse(prediction_to_json_string(pred));
      for (const auto& [key, value] : body.items()) record[key] = value;
      out << record.dump(-1, ' ', false, njson::error_handler_t::replace) << "\n";
      ++parsed;
    } catch (const std::exception& e) {
      std::cerr << "line " << line_no << ": " << e.what() << ", skipped\n";
      ++skipped;
    }
  }
  std::cerr << parsed << " generation(s) parsed";
  if (skipped > 0) std::cerr << ", " << skipped << " skipped";
  std::cerr << "\n";
  return 0;
}

// --- score -----------------------------------------------------------------

struct ScoreArgs {
  std::string gold_path;
  std::string pred_path;
  std::string task = "ner";  // ner | re | ee | ee-trigger | ee-argument
  std::string report_path;
  std::vector<std::string> schema_paths;
  bool by_dataset = false;
  bool exclude_ambiguous = false;
};

std::vector<LabeledPrediction> load_predictions(const std::string& path) {
  auto in = open_input(path);
  std::vector<LabeledPrediction> preds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    njson j = njson::parse(line, nullptr, false);
    if (j.is_discarded())
      throw std::runtime_error("invalid JSON at line " + std::to_string(line_no));
    LabeledPrediction p;
    // Predictions align with gold instances by source id when present.
    p.id = j.contains("source_id") ? j["source_id"].get<std::string>()
                                   : j.at("id").get<std::string>();
    p.dataset = j.at("dataset").get<std::string>();
    p.prediction = prediction_from_json_string(line);
    preds.push_back(std::move(p));
  }
  return preds;
}

int run_score(const ScoreArgs& args) {
  auto golds = load_instances(args.gold_path);
  if (!args.schema_paths.empty()) {
    // Gold corpora may still carry raw labels; resolve them so they live in
    // the same label space as parsed predictions.
    std::map<std::string, LabelSchema> schemas;
    for (const auto& p : args.schema_paths) {
      auto schema = load_schema(p);
      schemas[schema.dataset] = std::move(schema);
    }
    std::vector<Instance> canonical;
    for (auto& gold : golds) {
      const LabelSchema* schema = nullptr;
      if (auto it = schemas.find(gold.dataset); it != schemas.end())
        schema = &it->second;
      else if (schemas.size() == 1)
        schema = &schemas.begin()->second;
      else
        throw std::runtime_error("no schema for dataset " + gold.dataset);
      auto result = canonicalize_instances({std::move(gold)}, *schema);
      if (result.instances.empty())
        throw std::runtime_error("gold record not canonicalizable: " +
                                 result.errors.front().message);
      canonical.push_back(std::move(result.instances.front()));
    }
    golds = std::move(canonical);
  }
  const auto preds = load_predictions(args.pred_path);
  ScoreOptions options;
  options.exclude_ambiguous = args.exclude_ambiguous;

  std::vector<Metric> metrics;
  if (args.task == "ee")
    metrics = {Metric::ee_trigger, Metric::ee_argument};
  else
    metrics = {metric_from_string(args.task)};

  njson combined = njson::object();
  for (const Metric metric : metrics) {
    // Prediction files may interleave several task kinds (e.g. NER with its
    // auxiliary tasks); only records of the scored task participate.
    const TaskKind wanted = metric == Metric::ner  ? TaskKind::ner
                            : metric == Metric::re ? TaskKind::re
                                                   : TaskKind::ee;
    std::vector<LabeledPrediction> task_preds;
    for (const auto& p : preds)
      if (p.prediction.task == wanted) task_preds.push_back(p);

    auto report = score(metric, golds, task_preds, options);
    if (!args.by_dataset) {
      // Aggregate-only view.
      EvalReport flat = report;
      flat.per_dataset.clear();
      std::cout << std::string(to_string(metric)) << "\n"
                << report_to_table(flat);
    } else {
      std::cout << std::string(to_string(metric)) << "\n" << report_to_table(report);
    }
    combined[std::string(to_string(metric))] = njson::parse(report_to_json_string(report));
  }
  if (!args.report_path.empty()) {
    auto out = open_output(args.report_path);
    out << combined.dump(2) << "\n";
  }
  return 0;
}

// --- split -----------------------------------------------------------------

struct SplitArgs {
  std::string input;
  std::string out_dir;
  std::string mode = "811";  // 811 | half-val | official
  std::string train_path, val_path, test_path;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
  std::size_t zero_shot_m = 0;
  std::vector<std::uint64_t> zero_shot_seeds;
  std::string label_field = "relation";
  std::string schema_path;
};

PartitionInfo write_partition(const fs::path& dir, const std::string& name,
                              const std::vector<Instance>& instances) {
  std::ostringstream buffer;
  write_jsonl(buffer, instances);
  const std::string bytes = buffer.str();
  fs::create_directories(dir);
  const auto path = dir / (name + ".jsonl");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
  return {path.filename().string(), instances.size(), sha256_hex(bytes)};
}

void write_manifest(const fs::path& dir, const SplitManifest& manifest) {
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << manifest_to_json_string(manifest) << "\n";
}

int run_split(const SplitArgs& args) {
  const fs::path dir(args.out_dir);
  SplitManifest manifest;
  manifest.seed = args.seed;
  manifest.sample_cap = args.cap;

  if (args.zero_shot_m > 0) {
    manifest.mode = "zero-shot";
    auto corpus = load_instances(args.input);
    const LabelField field = args.label_field == "entity" ? LabelField::entity
                                                          : LabelField::relation;
    std::vector<std::string> label_set;
    if (!args.schema_path.empty()) {
      label_set = load_schema(args.schema_path).labels;
    } else {
      for (const auto& inst : corpus)
        for (const auto& l : instance_labels(inst, field))
          if (std::find(label_set.begin(), label_set.end(), l) == label_set.end())
            label_set.push_back(l);
    }
    auto seeds = args.zero_shot_seeds;
    if (seeds.empty()) seeds = {args.seed};
    const auto splits =
        zero_shot_label_split(corpus, label_set, args.zero_shot_m, seeds, field);
    for (const auto& zs : splits) {
      const fs::path sub = dir / ("zs-" + std::to_string(zs.seed));
      SplitManifest m = manifest;
      m.seed = zs.seed;
      m.partitions["train_pool"] = write_partition(sub, "train_pool", zs.train_pool);
      m.partitions["test"] = write_partition(sub, "test", zs.test_set);
      m.notes.push_back("unseen_labels: " + join(zs.unseen_labels, ", "));
      for (const auto& w : zs.warnings) m.notes.push_back("warning: " + w);
      write_manifest(sub, m);
      for (const auto& w : zs.warnings) std::cerr << "warning: " << w << "\n";
    }
    std::cerr << splits.size() << " zero-shot split(s) written\n";
    return 0;
  }

  ThreeWaySplit split;
  if (args.mode == "811") {
    manifest.mode = "811";
    split = split_811(load_instances(args.input), args.seed);
  } else if (args.mode == "half-val") {
    manifest.mode = "half-val";
    if (args.train_path.empty() || args.val_path.empty())
      throw std::runtime_error("--train and --val are required for half-val mode");
    split = split_half_val(load_instances(args.train_path),
                           load_instances(args.val_path), args.seed);
  } else if (args.mode == "official") {
    manifest.mode = "official";
    if (args.train_path.empty())
      throw std::runtime_error("--train is required for official mode");
    split.train = load_instances(args.train_path);
    if (!args.val_path.empty()) split.val = load_instances(args.val_path);
    if (!args.test_path.empty()) split.test = load_instances(args.test_path);
  } else {
    throw std::runtime_error("unknown split mode: " + args.mode);
  }

  if (args.cap) split.train = sample_cap(std::move(split.train), *args.cap, args.seed);

  manifest.partitions["train"] = write_partition(dir, "train", split.train);
  manifest.partitions["val"] = write_partition(dir, "val", split.val);
  manifest.partitions["test"] = write_partition(dir, "test", split.test);
  manifest.notes.push_back("counts: " + std::to_string(split.train.size()) + "/" +
                           std::to_string(split.val.size()) + "/" +
                           std::to_string(split.test.size()));
  write_manifest(dir, manifest);
  std::cerr << "train/val/test = " << split.train.size() << "/" << split.val.size()
            << "/" << split.test.size() << "\n";
  return 0;
}

// --- infer -----------------------------------------------------------------

struct InferArgs {
  std::string input;
  std::string output;
  EndpointConfig config;
  int max_tokens = 512;
  double temperature = 0.0;
};

int run_infer(const InferArgs& args) {
  auto in = open_input(args.input);
  const auto read = read_prompts(in);
  report_record_errors(read.errors, "");

  std::vector<GenerationRequest> requests;
  requests.reserve(read.prompts.size());
  for (const auto& p : read.prompts) {
    GenerationRequest r;
    r.id = p.id;
    r.prompt = render_full_prompt(p);
    r.params.max_tokens = args.max_tokens;
    r.params.temperature = args.temperature;
    requests.push_back(std::move(r));
  }

  InferenceClient client(args.config);
  const auto records = client.generate_batch(requests);

  auto out = open_output(args.output);
  std::size_t failed = 0, hits = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    const auto& prompt = read.prompts[i];
    njson j;
    j["id"] = record.id;
    j["source_id"] = prompt.source_id;
    j["dataset"] = prompt.dataset;
    j["task"] = std::string(to_string(prompt.task));
    j["generation"] = record.generation;
    j["latency_ms"] = record.latency_ms;
    j["attempts"] = record.attempts;
    j["cache_hit"] = record.cache_hit;
    if (record.error) {
      j["error"] = *record.error;
      ++failed;
    }
    hits += record.cache_hit;
    out << j.dump(-1, ' ', false, njson::error_handler_t::replace) << "\n";
  }
  std::cerr << records.size() << " generation(s), " << hits << " from cache";
  if (failed > 0) std::cerr << ", " << failed << " failed";
  std::cerr << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information-extraction corpus toolkit"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* cmd_ingest =
      app.add_subcommand("ingest", "normalize raw corpora into canonical JSONL");
  cmd_ingest->add_option("input", ingest_args.input, "input file")->required();
  cmd_ingest->add_option("-o,--output", ingest_args.output, "output JSONL")->required();
  cmd_ingest->add_option("--format", ingest_args.format,
                         "input format: bio, bio2, jsonl");
  cmd_ingest->add_option("--dataset", ingest_args.dataset, "dataset name");
  cmd_ingest->add_option("--task", ingest_args.task, "expected kind: NER, RE, EE");
  cmd_ingest->add_option("--schema", ingest_args.schema_path,
                         "schema file for label canonicalization");
  cmd_ingest->add_option("--errors", ingest_args.errors_path,
                         "write rejected records to this JSONL file");

  SchemaBuildArgs schema_args;
  auto* cmd_schema =
      app.add_subcommand("schema-build", "infer a label schema from a corpus");
  cmd_schema->add_option("input", schema_args.input, "canonical JSONL corpus")
      ->required();
  cmd_schema->add_option("-o,--output", schema_args.output, "schema JSON")->required();
  cmd_schema->add_option("--task", schema_args.task, "NER, RE, or EE");
  cmd_schema->add_option("--dataset", schema_args.dataset, "dataset name");
  cmd_schema->add_option("--aliases", schema_args.aliases_path,
                         "alias/override config JSON");

  CompileArgs compile_args;
  auto* cmd_compile = app.add_subcommand(
      "compile", "compile instances into instruction/options/text/output records");
  cmd_compile->add_option("input", compile_args.input, "canonical JSONL corpus")
      ->required();
  cmd_compile->add_option("-o,--output", compile_args.output, "compiled JSONL")
      ->required();
  cmd_compile->add_option("--schema", compile_args.schema_path, "schema JSON")
      ->required();
  cmd_compile->add_option("--bank", compile_args.bank_path,
                          "instruction bank JSON (extends the built-in bank)");
  cmd_compile->add_option("--tasks", compile_args.tasks,
                          "comma-separated task kinds, e.g. NER,ES,ET");
  cmd_compile->add_option("--seed", compile_args.seed, "instruction selector seed");

  ParseArgs parse_args;
  auto* cmd_parse =
      app.add_subcommand("parse", "parse model generations into predictions");
  cmd_parse->add_option("input", parse_args.input, "generations JSONL")->required();
  cmd_parse->add_option("-o,--output", parse_args.output, "predictions JSONL")
      ->required();
  cmd_parse->add_option("--schema", parse_args.schema_paths,
                        "schema JSON (repeatable; matched by dataset)");

  ScoreArgs score_args;
  auto* cmd_score = app.add_subcommand("score", "strict micro-F1 evaluation");
  cmd_score->add_option("--gold", score_args.gold_path, "gold canonical JSONL")
      ->required();
  cmd_score->add_option("--pred", score_args.pred_path, "predictions JSONL")
      ->required();
  cmd_score->add_option("--task", score_args.task,
                        "ner, re, ee, ee-trigger, or ee-argument");
  cmd_score->add_option("--schema", score_args.schema_paths,
                        "schema JSON for canonicalizing gold labels (repeatable)");
  cmd_score->add_option("-o,--report", score_args.report_path, "JSON report path");
  cmd_score->add_flag("--by-dataset", score_args.by_dataset,
                      "include per-dataset rows in the table");
  cmd_score->add_flag("--exclude-ambiguous", score_args.exclude_ambiguous,
                      "skip delimiter-ambiguous gold instances");

  SplitArgs split_args;
  auto* cmd_split = app.add_subcommand("split", "build reproducible dataset splits");
  cmd_split->add_option("input", split_args.input,
                        "corpus JSONL (811 and zero-shot modes)");
  cmd_split->add_option("-o,--out-dir", split_args.out_dir, "output directory")
      ->required();
  cmd_split->add_option("--mode", split_args.mode, "811, half-val, or official");
  cmd_split->add_option("--train", split_args.train_path, "train JSONL");
  cmd_split->add_option("--val", split_args.val_path, "validation JSONL");
  cmd_split->add_option("--test", split_args.test_path, "test JSONL");
  cmd_split->add_option("--seed", split_args.seed, "shuffle/sampling seed");
  std::size_t cap_value = 0;
  auto* cap_opt = cmd_split->add_option("--cap", cap_value,
                                        "sample cap applied to the train partition");
  cmd_split->add_option("--zero-shot", split_args.zero_shot_m,
                        "number of unseen labels m (enables zero-shot mode)");
  cmd_split->add_option("--zero-shot-seeds", split_args.zero_shot_seeds,
                        "comma-separated seeds for zero-shot draws")
      ->delimiter(',');
  cmd_split->add_option("--label-field", split_args.label_field,
                        "relation or entity");
  cmd_split->add_option("--schema", split_args.schema_path,
                        "schema JSON supplying the zero-shot label set");

  InferArgs infer_args;
  auto* cmd_infer =
      app.add_subcommand("infer", "send compiled prompts to a completion endpoint");
  cmd_infer->add_option("input", infer_args.input, "compiled JSONL")->required();
  cmd_infer->add_option("-o,--output", infer_args.output, "generations JSONL")
      ->required();
  cmd_infer->add_option("--endpoint", infer_args.config.url, "endpoint URL")
      ->required();
  cmd_infer->add_option("--model", infer_args.config.model, "model name")->required();
  cmd_infer->add_option("--concurrency", infer_args.config.concurrency,
                        "max in-flight requests");
  cmd_infer->add_option("--cache-dir", infer_args.config.cache_dir,
                        "response cache directory");
  cmd_infer->add_option("--max-tokens", infer_args.max_tokens, "max output tokens");
  cmd_infer->add_option("--temperature", infer_args.temperature, "sampling temperature");
  cmd_infer->add_option("--timeout-ms", infer_args.config.timeout_ms,
                        "per-request timeout");
  cmd_infer->add_option("--retries", infer_args.config.max_retries,
                        "retries on 5xx/transport errors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_ingest) return run_ingest(ingest_args);
    if (*cmd_schema) return run_schema_build(schema_args);
    if (*cmd_compile) return run_compile(compile_args);
    if (*cmd_parse) return run_parse(parse_args);
    if (*cmd_score) return run_score(score_args);
    if (*cmd_split) {
      if (cap_opt->count() > 0) split_args.cap = cap_value;
      return run_split(split_args);
    }
    if (*cmd_infer) {
      if (const char* token = std::getenv("IETK_API_TOKEN"))
        infer_args.config.auth_token = token;
      return run_infer(infer_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

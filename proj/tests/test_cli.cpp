// End-to-end exercise of the ietk binary: ingest -> schema-build -> compile
// -> parse -> score, plus split determinism. Runs the real executable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using njson = nlohmann::json;

namespace {

const char* kCli = IETK_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ietk-cli-test-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(kCli) + " " + args + " 2>/dev/null";
  return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out);
  out << content;
}

}  // namespace

TEST_CASE("cli: full NER pipeline hits self-evaluation F1 = 1.0") {
  TempDir dir;
  write_file(dir.file("corpus.bio"),
             "EU B-ORG\nrejects O\nGerman B-MISC\ncall O\n\n"
             "Peter B-PER\nBlackburn I-PER\n\n"
             "Tokyo B-LOC\nstocks O\nrose O\n\n");

  REQUIRE(run("ingest " + dir.file("corpus.bio") + " --format bio2 --dataset demo -o " +
              dir.file("corpus.jsonl")) == 0);
  REQUIRE(run("schema-build " + dir.file("corpus.jsonl") + " --task NER -o " +
              dir.file("schema.json")) == 0);
  REQUIRE(run("compile " + dir.file("corpus.jsonl") + " --schema " +
              dir.file("schema.json") + " --tasks NER,ES,ET --seed 3 -o " +
              dir.file("compiled.jsonl")) == 0);

  // 3 instances x {NER, ES, ET}
  std::istringstream compiled(slurp(dir.file("compiled.jsonl")));
  std::string line;
  int prompts = 0;
  std::ofstream gens(dir.file("gens.jsonl"));
  while (std::getline(compiled, line)) {
    ++prompts;
    const auto j = njson::parse(line);
    CHECK(j.at("instruction").is_string());
    CHECK(j.at("options").get<std::string>().rfind("Option: ", 0) == 0);
    if (j.at("task") == "NER") {
      gens << njson{{"id", j["id"]},
                    {"source_id", j["source_id"]},
                    {"dataset", j["dataset"]},
                    {"task", j["task"]},
                    {"generation", j["gold_output"]}}
                  .dump()
           << "\n";
    }
  }
  gens.close();
  CHECK(prompts == 9);

  REQUIRE(run("parse " + dir.file("gens.jsonl") + " --schema " + dir.file("schema.json") +
              " -o " + dir.file("preds.jsonl")) == 0);
  REQUIRE(run("score --gold " + dir.file("corpus.jsonl") + " --pred " +
              dir.file("preds.jsonl") + " --schema " + dir.file("schema.json") +
              " --task ner -o " + dir.file("report.json")) == 0);

  const auto report = njson::parse(slurp(dir.file("report.json")));
  CHECK(report.at("ner").at("overall").at("f1").get<double>() == 1.0);
  CHECK(report.at("ner").at("overall").at("fn").get<int>() == 0);
}

TEST_CASE("cli: split manifests are byte-identical across runs") {
  TempDir dir;
  std::ostringstream corpus;
  for (int i = 0; i < 101; ++i)
    corpus << njson{{"id", "s-" + std::to_string(i)},
                    {"dataset", "d"},
                    {"text", "text " + std::to_string(i)},
                    {"entities", njson::array()},
                    {"relations", njson::array()},
                    {"events", njson::array()}}
                  .dump()
           << "\n";
  write_file(dir.file("corpus.jsonl"), corpus.str());

  REQUIRE(run("split " + dir.file("corpus.jsonl") + " --mode 811 --seed 5 -o " +
              dir.file("run1")) == 0);
  REQUIRE(run("split " + dir.file("corpus.jsonl") + " --mode 811 --seed 5 -o " +
              dir.file("run2")) == 0);

  const auto m1 = slurp(dir.file("run1/manifest.json"));
  CHECK(m1 == slurp(dir.file("run2/manifest.json")));

  const auto parsed = njson::parse(m1);
  CHECK(parsed.at("partitions").at("train").at("count") == 80);
  CHECK(parsed.at("partitions").at("val").at("count") == 10);
  CHECK(parsed.at("partitions").at("test").at("count") == 11);
  CHECK(slurp(dir.file("run1/train.jsonl")) == slurp(dir.file("run2/train.jsonl")));
}

TEST_CASE("cli: zero-shot split emits per-seed directories") {
  TempDir dir;
  std::ostringstream corpus;
  for (int i = 0; i < 40; ++i) {
    const std::string rel = "rel " + std::to_string(i % 8);
    corpus << njson{{"id", "z-" + std::to_string(i)},
                    {"dataset", "d"},
                    {"text", "a b"},
                    {"entities", njson::array()},
                    {"relations",
                     njson::array({njson{{"relation", rel},
                                         {"head", {{"start", 0}, {"end", 1}, {"surface", "a"}}},
                                         {"tail", {{"start", 2}, {"end", 3}, {"surface", "b"}}}}})},
                    {"events", njson::array()}}
                  .dump()
           << "\n";
  }
  write_file(dir.file("corpus.jsonl"), corpus.str());

  REQUIRE(run("split " + dir.file("corpus.jsonl") +
              " --zero-shot 2 --zero-shot-seeds 1,2 --label-field relation -o " +
              dir.file("zs")) == 0);
  CHECK(fs::exists(dir.file("zs/zs-1/train_pool.jsonl")));
  CHECK(fs::exists(dir.file("zs/zs-1/test.jsonl")));
  CHECK(fs::exists(dir.file("zs/zs-2/manifest.json")));
  const auto manifest = njson::parse(slurp(dir.file("zs/zs-1/manifest.json")));
  CHECK(manifest.at("mode") == "zero-shot");
}

TEST_CASE("cli: bad usage fails cleanly") {
  CHECK(run("compile missing.jsonl --schema nowhere.json -o out.jsonl") != 0);
  CHECK(run("score --gold a --pred b --task bogus") != 0);
  CHECK(run("") != 0);
}

#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "ietk/infer.hpp"
#include "ietk/rng.hpp"
#include "json.hpp"

using namespace ietk;
using njson = nlohmann::json;

namespace {

PromptInstance sample_prompt() {
  PromptInstance p;
  p.id = "n-1:NER";
  p.source_id = "n-1";
  p.dataset = "d";
  p.task = TaskKind::ner;
  p.instruction =
      "Please list all entity words in the text that fit the category. Output format "
      "is \"type1: word1; type2: word2\".";
  p.options = "Option: person, organization";
  p.text = "Steve Jobs founded Apple";
  p.gold_output = "person: Steve Jobs; organization: Apple";
  return p;
}

// In-process mock completion endpoint with instrumentation.
class MockEndpoint {
 public:
  MockEndpoint() {
    server_.Post("/v1/completions", [this](const httplib::Request& req,
                                           httplib::Response& res) {
      const int now = ++in_flight_;
      max_in_flight_ = std::max(max_in_flight_.load(), now);
      ++hits_;

      const njson body = njson::parse(req.body, nullptr, false);
      const std::string prompt =
          body.is_object() && body.contains("prompt") ? body["prompt"].get<std::string>() : "";

      if (fail_first_.fetch_sub(1) > 0) {
        res.status = 500;
        res.set_content("boom", "text/plain");
      } else if (delay_ms_ > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(next_delay()));
        res.set_content(njson{{"text", "echo: " + prompt}}.dump(), "application/json");
      } else {
        res.set_content(njson{{"text", "echo: " + prompt}}.dump(), "application/json");
      }
      --in_flight_;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/completions";
  }

  int hits() const { return hits_.load(); }
  int max_in_flight() const { return max_in_flight_.load(); }

  void set_fail_first(int n) { fail_first_ = n; }
  void set_delay_ms(int ms, std::uint64_t seed = 0) {
    delay_ms_ = ms;
    rng_seed_ = seed;
  }

 private:
  int next_delay() {
    if (rng_seed_ == 0) return delay_ms_;
    std::lock_guard<std::mutex> lock(mu_);
    if (!rng_) rng_ = std::make_unique<DetRng>(rng_seed_);
    return static_cast<int>(rng_->below(delay_ms_));
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
  std::atomic<int> fail_first_{0};
  int delay_ms_ = 0;
  std::uint64_t rng_seed_ = 0;
  std::mutex mu_;
  std::unique_ptr<DetRng> rng_;
};

std::filesystem::path fresh_cache_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("ietk-test-cache-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<GenerationRequest> make_requests(int n) {
  std::vector<GenerationRequest> requests;
  for (int i = 0; i < n; ++i)
    requests.push_back({"req-" + std::to_string(i), "prompt " + std::to_string(i), {}});
  return requests;
}

}  // namespace

TEST_CASE("render_full_prompt layout") {
  const auto prompt = sample_prompt();
  const std::string rendered = render_full_prompt(prompt);

  // Frozen golden rendering.
  CHECK(rendered ==
        "Please list all entity words in the text that fit the category. Output format "
        "is \"type1: word1; type2: word2\".\n"
        "Option: person, organization\n"
        "Text: Steve Jobs founded Apple");

  // Instruction, options, text in that order.
  CHECK(rendered.find(prompt.instruction) == 0);
  CHECK(rendered.find(prompt.options) > rendered.find(prompt.instruction));
  CHECK(rendered.find("Text: ") > rendered.find(prompt.options));

  // Two prompts differing only in text differ only in the suffix.
  auto other = prompt;
  other.text = "Ann visits Paris";
  const std::string other_rendered = render_full_prompt(other);
  const auto split_at = rendered.rfind("Text: ");
  CHECK(other_rendered.substr(0, split_at) == rendered.substr(0, split_at));
  CHECK(other_rendered.substr(split_at) == "Text: Ann visits Paris");
}

TEST_CASE("cache_key depends on model, prompt, and decode params") {
  DecodeParams params;
  const auto base = cache_key("m", "p", params);
  CHECK(base == cache_key("m", "p", params));
  CHECK(base != cache_key("m2", "p", params));
  CHECK(base != cache_key("m", "p2", params));
  DecodeParams hotter = params;
  hotter.temperature = 0.7;
  CHECK(base != cache_key("m", "p", hotter));
  DecodeParams stopped = params;
  stopped.stop = {"\n"};
  CHECK(base != cache_key("m", "p", stopped));
}

TEST_CASE("generate_batch echoes through the endpoint in input order") {
  MockEndpoint endpoint;
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "test-model";
  config.concurrency = 4;
  InferenceClient client(config);

  const auto requests = make_requests(12);
  const auto records = client.generate_batch(requests);
  REQUIRE(records.size() == 12);
  for (int i = 0; i < 12; ++i) {
    CHECK(records[i].id == requests[i].id);
    CHECK(records[i].generation == "echo: " + requests[i].prompt);
    CHECK(records[i].attempts == 1);
    CHECK_FALSE(records[i].cache_hit);
    CHECK_FALSE(records[i].error.has_value());
  }
  CHECK(endpoint.hits() == 12);
}

TEST_CASE("input order is preserved under shuffled completion order") {
  MockEndpoint endpoint;
  endpoint.set_delay_ms(40, 99);  // random per-request delays up to 40ms
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "m";
  config.concurrency = 8;
  InferenceClient client(config);

  const auto requests = make_requests(24);
  const auto records = client.generate_batch(requests);
  REQUIRE(records.size() == requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    CHECK(records[i].id == requests[i].id);
    CHECK(records[i].generation == "echo: " + requests[i].prompt);
  }
}

TEST_CASE("concurrency bound is respected") {
  MockEndpoint endpoint;
  endpoint.set_delay_ms(15);
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "m";
  config.concurrency = 8;
  InferenceClient client(config);

  client.generate_batch(make_requests(100));
  CHECK(endpoint.max_in_flight() <= 8);
  CHECK(endpoint.max_in_flight() >= 2);  // parallelism actually happened
  CHECK(endpoint.hits() == 100);
}

TEST_CASE("one 500 then success yields attempts == 2") {
  MockEndpoint endpoint;
  endpoint.set_fail_first(1);
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "m";
  config.concurrency = 1;
  config.retry_backoff_ms = 1;
  InferenceClient client(config);

  const auto records = client.generate_batch(make_requests(1));
  REQUIRE(records.size() == 1);
  CHECK(records[0].attempts == 2);
  CHECK_FALSE(records[0].error.has_value());
  CHECK(records[0].generation == "echo: prompt 0");
  CHECK(endpoint.hits() == 2);
}

TEST_CASE("persistent failure becomes a per-record error and the batch continues") {
  MockEndpoint endpoint;
  endpoint.set_fail_first(1000);
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "m";
  config.concurrency = 2;
  config.max_retries = 2;
  config.retry_backoff_ms = 1;
  InferenceClient client(config);

  const auto records = client.generate_batch(make_requests(3));
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    CHECK(r.attempts == 3);
    REQUIRE(r.error.has_value());
    CHECK(r.error->find("HTTP 500") != std::string::npos);
  }
}

TEST_CASE("unreachable endpoint reports transport errors, not crashes") {
  EndpointConfig config;
  config.url = "http://127.0.0.1:9/v1/completions";  // discard port, nothing listens
  config.model = "m";
  config.max_retries = 0;
  config.timeout_ms = 500;
  InferenceClient client(config);
  const auto records = client.generate_batch(make_requests(1));
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].error.has_value());
  CHECK(records[0].error->find("transport error") != std::string::npos);
}

TEST_CASE("cache: repeated request is a hit with zero network calls") {
  MockEndpoint endpoint;
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "m";
  config.cache_dir = fresh_cache_dir("hit").string();
  InferenceClient client(config);

  const auto first = client.generate_batch(make_requests(1));
  CHECK(endpoint.hits() == 1);
  CHECK_FALSE(first[0].cache_hit);

  const auto second = client.generate_batch(make_requests(1));
  CHECK(endpoint.hits() == 1);  // no new network call
  CHECK(second[0].cache_hit);
  CHECK(second[0].attempts == 0);
  CHECK(second[0].generation == first[0].generation);
}

TEST_CASE("fully cached batch rerun is idempotent with zero network calls") {
  MockEndpoint endpoint;
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "m";
  config.concurrency = 6;
  config.cache_dir = fresh_cache_dir("batch").string();

  const auto requests = make_requests(30);
  const auto first = InferenceClient(config).generate_batch(requests);
  CHECK(endpoint.hits() == 30);

  const auto second = InferenceClient(config).generate_batch(requests);
  CHECK(endpoint.hits() == 30);  // untouched
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(second[i].cache_hit);
    CHECK(second[i].generation == first[i].generation);
    CHECK(second[i].id == first[i].id);
  }
}

TEST_CASE("failed requests are not cached") {
  MockEndpoint endpoint;
  endpoint.set_fail_first(1);
  EndpointConfig config;
  config.url = endpoint.url();
  config.model = "m";
  config.max_retries = 0;
  config.retry_backoff_ms = 0;
  config.cache_dir = fresh_cache_dir("fail").string();

  const auto failed = InferenceClient(config).generate_batch(make_requests(1));
  REQUIRE(failed[0].error.has_value());

  // The retry (fresh client, same cache) must go to the network again.
  const auto retried = InferenceClient(config).generate_batch(make_requests(1));
  CHECK_FALSE(retried[0].cache_hit);
  CHECK_FALSE(retried[0].error.has_value());
  CHECK(endpoint.hits() == 2);
}

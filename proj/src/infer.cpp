#include "ietk/infer.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "ietk/hash.hpp"
#include "json.hpp"

namespace ietk {

using njson = nlohmann::ordered_json;

std::string render_full_prompt(const PromptInstance& prompt) {
  return prompt.instruction + "\n" + prompt.options + "\nText: " + prompt.text;
}

std::string cache_key(const std::string& model, const std::string& prompt,
                      const DecodeParams& params) {
  njson j;
  j["model"] = model;
  j["prompt"] = prompt;
  j["max_tokens"] = params.max_tokens;
  j["temperature"] = params.temperature;
  j["stop"] = params.stop;
  return sha256_hex(j.dump());
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  njson j = njson::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.contains("text") || !j["text"].is_string())
    return std::nullopt;  // truncated or foreign file: treat as a miss
  return j["text"].get<std::string>();
}

void ResponseCache::store(const std::string& key, const std::string& text) const {
  if (!enabled()) return;
  static std::atomic<std::uint64_t> counter{0};
  const auto tmp =
      dir_ / (key + ".tmp." + std::to_string(counter.fetch_add(1)) + "." +
              std::to_string(static_cast<unsigned long long>(
                  std::hash<std::thread::id>{}(std::this_thread::get_id()))));
  {
    std::ofstream out(tmp, std::ios::binary);
    out << njson{{"text", text}}.dump();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, dir_ / (key + ".json"), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

InferenceClient::InferenceClient(EndpointConfig config) : config_(std::move(config)) {
  if (!config_.cache_dir.empty()) cache_ = ResponseCache(config_.cache_dir);
}

namespace {

struct ParsedUrl {
  std::string base;  // scheme://host:port
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw std::runtime_error("endpoint url must start with http:// or https://: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

GenerationRecord InferenceClient::run_one(const GenerationRequest& request) const {
  GenerationRecord record;
  record.id = request.id;

  const std::string key = cache_key(config_.model, request.prompt, request.params);
  if (auto hit = cache_.lookup(key)) {
    record.generation = std::move(*hit);
    record.cache_hit = true;
    return record;
  }

  njson body;
  body["model"] = config_.model;
  body["prompt"] = request.prompt;
  body["max_tokens"] = request.params.max_tokens;
  body["temperature"] = request.params.temperature;
  body["stop"] = request.params.stop;
  const std::string payload = body.dump(-1, ' ', false, njson::error_handler_t::replace);

  const ParsedUrl url = parse_url(config_.url);
  httplib::Client client(url.base);
  client.set_connection_timeout(config_.timeout_ms / 1000,
                                (config_.timeout_ms % 1000) * 1000);
  client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
  httplib::Headers headers;
  if (!config_.auth_token.empty())
    headers.emplace("Authorization", "Bearer " + config_.auth_token);

  const auto start = std::chrono::steady_clock::now();
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_retries + 1; ++attempt) {
    record.attempts = attempt;
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status >= 500) {
      last_error = "server error: HTTP " + std::to_string(res->status);
    } else if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      break;  // client errors are permanent
    } else {
      njson j = njson::parse(res->body, nullptr, false);
      if (j.is_discarded() || !j.contains("text") || !j["text"].is_string()) {
        last_error = "malformed endpoint response";
        break;
      }
      record.generation = j["text"].get<std::string>();
      record.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      cache_.store(key, record.generation);
      return record;
    }
    if (attempt <= config_.max_retries && config_.retry_backoff_ms > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.retry_backoff_ms * attempt));
  }
  record.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  record.error = last_error;
  return record;
}

std::vector<GenerationRecord> InferenceClient::generate_batch(
    std::span<const GenerationRequest> requests) {
  std::vector<GenerationRecord> records(requests.size());
  if (requests.empty()) return records;

  const std::size_t workers =
      std::min<std::size_t>(std::max(config_.concurrency, 1), requests.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) return;
      records[i] = run_one(requests[i]);  // slot i: input order is preserved
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

}  // namespace ietk

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ietk/taskgen.hpp"

namespace ietk {

struct DecodeParams {
  int max_tokens = 512;
  double temperature = 0.0;
  std::vector<std::string> stop;
};

struct GenerationRequest {
  std::string id;  // prompt instance id
  std::string prompt;
  DecodeParams params;
};

struct GenerationRecord {
  std::string id;
  std::string generation;
  std::optional<std::string> error;  // set when all attempts failed
  std::int64_t latency_ms = 0;
  int attempts = 0;  // network attempts; 0 on a cache hit
  bool cache_hit = false;
};

// Completion-style wire contract:
//   POST <url>  {"model", "prompt", "max_tokens", "temperature", "stop"}
//   -> 200      {"text": "..."}
struct EndpointConfig {
  std::string url;  // e.g. "http://127.0.0.1:8080/v1/completions"
  std::string model;
  std::string auth_token;       // sent as "Authorization: Bearer <token>" when set
  std::string cache_dir;        // empty disables the response cache
  int timeout_ms = 30000;
  int max_retries = 2;          // retries after the first attempt, on 5xx/transport
  int retry_backoff_ms = 250;   // grows linearly with the attempt number
  int concurrency = 4;
};

// Frozen prompt layout: instruction line, options line(s), then the text.
std::string render_full_prompt(const PromptInstance& prompt);

// Content-address of a request; generations are cached under this key.
std::string cache_key(const std::string& model, const std::string& prompt,
                      const DecodeParams& params);

// On-disk content-addressed store, one immutable file per key. Writes go
// through a temp file and an atomic rename, which keeps concurrent readers
// and writers (including other processes) safe without locking.
class ResponseCache {
 public:
  ResponseCache() = default;  // disabled
  explicit ResponseCache(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty(); }
  std::optional<std::string> lookup(const std::string& key) const;
  void store(const std::string& key, const std::string& text) const;

 private:
  std::filesystem::path dir_;
};

class InferenceClient {
 public:
  explicit InferenceClient(EndpointConfig config);

  // Answers every request, in input order, fanning out over at most
  // `concurrency` connections. Failures after retries become per-record
  // errors; the batch always completes.
  std::vector<GenerationRecord> generate_batch(std::span<const GenerationRequest> requests);

  const EndpointConfig& config() const { return config_; }

 private:
  GenerationRecord run_one(const GenerationRequest& request) const;

  EndpointConfig config_;
  ResponseCache cache_;
};

}  // namespace ietk

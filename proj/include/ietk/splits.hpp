#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ietk/instance.hpp"

namespace ietk {

// All split operations are pure functions of (input order, seed). The RNG
// is mt19937_64 with hand-rolled bounded draws, so results are identical
// across platforms; the manifest records the algorithm name.
inline constexpr const char* kSplitRngName = "mt19937_64/fisher-yates";

struct ThreeWaySplit {
  std::vector<Instance> train;
  std::vector<Instance> val;
  std::vector<Instance> test;
};

// Shuffle by seed, then partition floor(0.8n) / floor(0.1n) / remainder.
// Throws when fewer than 10 instances are given.
ThreeWaySplit split_811(std::vector<Instance> instances, std::uint64_t seed);

// Shuffle the validation set by seed; the first floor(|val|/2) records
// become the new validation set and the rest the test set. Train passes
// through untouched. Throws when |val| < 2.
ThreeWaySplit split_half_val(std::vector<Instance> train, std::vector<Instance> val,
                             std::uint64_t seed);

// Keeps all records when |instances| <= cap (order preserved); otherwise a
// uniform sample without replacement of exactly cap records, in input order.
std::vector<Instance> sample_cap(std::vector<Instance> instances,
                                 std::size_t cap = 10000, std::uint64_t seed = 0);

enum class LabelField { relation, entity };

// Labels an instance carries, for zero-shot regrouping.
std::vector<std::string> instance_labels(const Instance& instance, LabelField field);

struct ZeroShotSplit {
  std::uint64_t seed = 0;
  std::vector<std::string> unseen_labels;
  std::vector<Instance> train_pool;  // instances carrying no unseen label
  std::vector<Instance> test_set;    // instances carrying >= 1 unseen label
  std::vector<std::string> warnings;
};

// Per seed: draw m unseen labels uniformly from label_set; every instance
// with at least one unseen label goes to test (instances mixing seen and
// unseen labels go to test so nothing leaks into train). A drawn label with
// zero instances triggers one warned redraw for that seed.
std::vector<ZeroShotSplit> zero_shot_label_split(std::span<const Instance> instances,
                                                 const std::vector<std::string>& label_set,
                                                 std::size_t m,
                                                 std::span<const std::uint64_t> seeds,
                                                 LabelField field);

// Manifest describing emitted partitions: spec fields plus content hashes.
// Serialization is byte-stable so reruns can be compared directly.
struct PartitionInfo {
  std::string path;
  std::size_t count = 0;
  std::string sha256;
};

struct SplitManifest {
  std::string mode;  // "811", "half-val", "official", "zero-shot"
  std::uint64_t seed = 0;
  std::optional<std::size_t> sample_cap;
  std::map<std::string, PartitionInfo> partitions;  // keyed by partition name
  std::vector<std::string> notes;
};

std::string manifest_to_json_string(const SplitManifest& manifest);

}  // namespace ietk

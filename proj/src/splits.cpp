#include "ietk/splits.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ietk/rng.hpp"
#include "json.hpp"

namespace ietk {

using njson = nlohmann::ordered_json;

ThreeWaySplit split_811(std::vector<Instance> instances, std::uint64_t seed) {
  const std::size_t n = instances.size();
  if (n < 10)
    throw std::runtime_error("split_811 needs at least 10 instances, got " +
                             std::to_string(n));
  DetRng rng(seed);
  det_shuffle(instances, rng);

  const std::size_t n_train = n * 8 / 10;  // floor(0.8n)
  const std::size_t n_val = n / 10;        // floor(0.1n)

  ThreeWaySplit out;
  out.train.assign(std::make_move_iterator(instances.begin()),
                   std::make_move_iterator(instances.begin() + n_train));
  out.val.assign(std::make_move_iterator(instances.begin() + n_train),
                 std::make_move_iterator(instances.begin() + n_train + n_val));
  out.test.assign(std::make_move_iterator(instances.begin() + n_train + n_val),
                  std::make_move_iterator(instances.end()));
  return out;
}

ThreeWaySplit split_half_val(std::vector<Instance> train, std::vector<Instance> val,
                             std::uint64_t seed) {
  if (val.size() < 2)
    throw std::runtime_error("split_half_val needs at least 2 validation instances");
  DetRng rng(seed);
  det_shuffle(val, rng);
  const std::size_t n_val = val.size() / 2;

  ThreeWaySplit out;
  out.train = std::move(train);
  out.val.assign(std::make_move_iterator(val.begin()),
                 std::make_move_iterator(val.begin() + n_val));
  out.test.assign(std::make_move_iterator(val.begin() + n_val),
                  std::make_move_iterator(val.end()));
  return out;
}

std::vector<Instance> sample_cap(std::vector<Instance> instances, std::size_t cap,
                                 std::uint64_t seed) {
  if (cap == 0) throw std::invalid_argument("sample_cap: cap must be >= 1");
  if (instances.size() <= cap) return instances;
  DetRng rng(seed);
  const auto picked = sample_indices(instances.size(), cap, rng);
  std::vector<Instance> out;
  out.reserve(cap);
  for (std::size_t idx : picked) out.push_back(std::move(instances[idx]));
  return out;
}

std::vector<std::string> instance_labels(const Instance& instance, LabelField field) {
  std::vector<std::string> out;
  auto add = [&](const std::string& l) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  if (field == LabelField::relation) {
    for (const auto& r : instance.relations) add(r.relation);
  } else {
    for (const auto& e : instance.entities) add(e.label);
  }
  return out;
}

namespace {

std::vector<std::string> draw_labels(const std::vector<std::string>& label_set,
                                     std::size_t m, DetRng& rng) {
  const auto idx = sample_indices(label_set.size(), m, rng);
  std::vector<std::string> out;
  out.reserve(m);
  for (std::size_t i : idx) out.push_back(label_set[i]);
  return out;
}

}  // namespace

std::vector<ZeroShotSplit> zero_shot_label_split(std::span<const Instance> instances,
                                                 const std::vector<std::string>& label_set,
                                                 std::size_t m,
                                                 std::span<const std::uint64_t> seeds,
                                                 LabelField field) {
  if (m == 0 || m >= label_set.size())
    throw std::invalid_argument("zero_shot_label_split: need 1 <= m < |label set|");
  {
    std::set<std::string> distinct(label_set.begin(), label_set.end());
    if (distinct.size() != label_set.size())
      throw std::invalid_argument("zero_shot_label_split: label set has duplicates");
  }

  std::map<std::string, std::size_t> support;
  for (const auto& inst : instances)
    for (const auto& l : instance_labels(inst, field)) ++support[l];

  std::vector<ZeroShotSplit> out;
  for (std::uint64_t seed : seeds) {
    ZeroShotSplit split;
    split.seed = seed;
    DetRng rng(seed);
    split.unseen_labels = draw_labels(label_set, m, rng);

    auto unsupported = [&]() {
      std::vector<std::string> empty;
      for (const auto& l : split.unseen_labels)
        if (support.find(l) == support.end()) empty.push_back(l);
      return empty;
    };
    if (auto empty = unsupported(); !empty.empty()) {
      // One redraw per seed is allowed when a drawn label has no instances.
      split.warnings.push_back("seed " + std::to_string(seed) +
                               ": unseen label(s) without instances, redrawing once");
      split.unseen_labels = draw_labels(label_set, m, rng);
      if (auto still = unsupported(); !still.empty())
        for (const auto& l : still)
          split.warnings.push_back("unseen label '" + l + "' has no instances");
    }

    const std::set<std::string> unseen(split.unseen_labels.begin(),
                                       split.unseen_labels.end());
    for (const auto& inst : instances) {
      bool has_unseen = false;
      for (const auto& l : instance_labels(inst, field))
        if (unseen.count(l)) {
          has_unseen = true;
          break;
        }
      (has_unseen ? split.test_set : split.train_pool).push_back(inst);
    }
    out.push_back(std::move(split));
  }
  return out;
}

std::string manifest_to_json_string(const SplitManifest& manifest) {
  njson j;
  j["rng"] = kSplitRngName;
  j["mode"] = manifest.mode;
  j["seed"] = manifest.seed;
  if (manifest.sample_cap)
    j["sample_cap"] = *manifest.sample_cap;
  else
    j["sample_cap"] = nullptr;
  njson parts = njson::object();
  for (const auto& [name, info] : manifest.partitions)
    parts[name] = njson{{"path", info.path}, {"count", info.count}, {"sha256", info.sha256}};
  j["partitions"] = std::move(parts);
  j["notes"] = manifest.notes;
  return j.dump(2);
}

}  // namespace ietk

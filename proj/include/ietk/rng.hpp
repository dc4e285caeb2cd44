#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ietk {

// Deterministic RNG for split construction. mt19937_64 has a
// standard-specified bit stream, and the bounded draw below avoids
// std::uniform_int_distribution (whose output is implementation-defined),
// so sequences are identical across platforms and library versions.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw in [0, n). Classic rejection bound keeps it unbiased.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by DetRng.
template <typename T>
void det_shuffle(std::vector<T>& items, DetRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

// k distinct indices drawn uniformly from [0, n), returned in ascending
// order so that sampled records keep their input order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, DetRng& rng);

}  // namespace ietk

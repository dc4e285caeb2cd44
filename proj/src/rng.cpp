#include "ietk/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ietk {

std::uint64_t DetRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("DetRng::below: n must be >= 1");
  std::uint64_t x, r;
  do {
    x = engine_();
    r = x % n;
  } while (x - r > std::uint64_t(0) - n);
  return r;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, DetRng& rng) {
  if (k > n) throw std::invalid_argument("sample_indices: k exceeds n");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace ietk

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ietk {

// Hex-encoded SHA-256 digest (OpenSSL-backed). Used for cache keys and
// split-manifest content hashes.
std::string sha256_hex(std::string_view data);

std::uint64_t fnv1a64(std::string_view data);

// splitmix64 finalizer; fixed, platform-independent mixing.
std::uint64_t mix64(std::uint64_t x);

// Deterministic template pick: hash of (key, seed) reduced mod count.
std::size_t bucket_of(std::string_view key, std::uint64_t seed, std::size_t count);

}  // namespace ietk

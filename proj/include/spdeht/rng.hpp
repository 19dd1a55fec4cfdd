#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace spdeht {

// Philox 4x32-10 (Salmon et al., SC'11): a keyed bijection of a 128-bit
// counter. All randomness in this library is addressed, never streamed, so
// any (seed, mode, step) cell can be regenerated independently of the order
// in which threads or replicates run.

namespace detail {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM4x32A) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM4x32B) * ctr[2];
  ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
         static_cast<std::uint32_t>(p0)};
  key[0] += kPhiloxW32A;
  key[1] += kPhiloxW32B;
}

}  // namespace detail

/// Ten-round Philox block: counter + key -> four uniform 32-bit words.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) detail::philox_round(counter, key);
  return counter;
}

/// splitmix64 finalizer; avalanches all 64 bits of z.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of Monte Carlo replicate r: one avalanche away from the base seed, so
/// consecutive replicates get unrelated key streams.
inline std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t replicate) {
  return mix64(base_seed ^ mix64(replicate));
}

/// Standard normal draw addressed by (mode k, step j), both 1-based: Philox
/// with counter (k, j, 0, 0) and the seed split into the two key words, then
/// Box-Muller on the resulting 64-bit uniforms.
inline double normal_draw(std::uint64_t seed, std::uint32_t mode, std::uint32_t step) {
  const std::array<std::uint32_t, 4> block =
      philox4x32({mode, step, 0u, 0u},
                 {static_cast<std::uint32_t>(seed),
                  static_cast<std::uint32_t>(seed >> 32)});
  const std::uint64_t hi = (static_cast<std::uint64_t>(block[0]) << 32) | block[1];
  const std::uint64_t lo = (static_cast<std::uint64_t>(block[2]) << 32) | block[3];
  const double u1 = (static_cast<double>(hi) + 1.0) * 0x1p-64;  // (0, 1]
  const double u2 = static_cast<double>(lo) * 0x1p-64;          // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace spdeht

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "spdeht/rng.hpp"

using namespace spdeht;

// Published known-answer vectors for Philox 4x32 with 10 rounds (Salmon et
// al., SC'11 reference implementation's kat_vectors file).
TEST(Philox, KnownAnswerVectors) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0u, 0u, 0u, 0u}, {0u, 0u}),
            (A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                       {0xffffffffu, 0xffffffffu}),
            (A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                       {0xa4093822u, 0x299f31d0u}),
            (A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, SmallCounterVector) {
  // frozen from an independent big-integer implementation of the same cipher
  EXPECT_EQ(philox4x32({1u, 2u, 3u, 3u}, {56u, 712u}),
            (std::array<std::uint32_t, 4>{0x282a1226u, 0x1527e88fu, 0x95b351f9u,
                                          0xc06e1aacu}));
}

TEST(Mix64, KnownValues) {
  // first outputs of the splitmix64 sequence seeded at 0 and 1
  EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(mix64(1), 0x910A2DEC89025CC1ull);
  EXPECT_EQ(mix64(0xDEADBEEFull), 0x4ADFB90F68C9EB9Bull);
}

TEST(ReplicateSeed, FrozenValuesAndDistinctness) {
  EXPECT_EQ(replicate_seed(7, 0), 0x64BF61B512FFABE7ull);
  EXPECT_EQ(replicate_seed(7, 1), 0x7716DA39CBA275B2ull);
  // consecutive replicates and consecutive base seeds must not collide
  std::vector<std::uint64_t> seen;
  for (std::uint64_t base = 0; base < 8; ++base) {
    for (std::uint64_t r = 0; r < 64; ++r) seen.push_back(replicate_seed(base, r));
  }
  std::sort(seen.begin(), seen.end());
  EXPECT_TRUE(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST(NormalDraw, FrozenValues) {
  // frozen from the big-integer reference + Box-Muller by hand
  EXPECT_NEAR(normal_draw(42, 5, 17), 1.0252190331749493, 1e-12);
  EXPECT_NEAR(normal_draw(1, 1, 1), 0.20352890531357884, 1e-12);
  EXPECT_NEAR(normal_draw(0x123456789ABCDEF0ull, 3, 250), -1.2085336860723834, 1e-12);
}

TEST(NormalDraw, PureFunctionOfAddress) {
  const double a = normal_draw(99, 4, 1000);
  EXPECT_EQ(a, normal_draw(99, 4, 1000));
  EXPECT_NE(a, normal_draw(99, 4, 1001));
  EXPECT_NE(a, normal_draw(99, 5, 1000));
  EXPECT_NE(a, normal_draw(100, 4, 1000));
}

TEST(NormalDraw, MomentsAcrossPanel) {
  // 10^4 cells; mean ~ N(0, 1/n), fourth moment of a gaussian is 3
  double sum = 0.0, sq = 0.0, quad = 0.0;
  int n = 0;
  for (std::uint32_t k = 1; k <= 40; ++k) {
    for (std::uint32_t j = 1; j <= 250; ++j) {
      const double z = normal_draw(9, k, j);
      sum += z;
      sq += z * z;
      quad += z * z * z * z;
      ++n;
    }
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(var, 1.0, 0.06);
  EXPECT_NEAR(quad / n, 3.0, 0.35);
}

#pragma once

#include <cstdint>

#include "bmcx/simd/vecmath.hpp"

// Counter-based random streams (Philox4x32-10, Salmon et al. SC 2011).
// Stream layout: key = 64-bit seed, counter = (block index, path index), so
// every (seed, path) pair owns an independent, skip-free sequence and results
// do not depend on scheduling or worker count.
namespace bmcx {

struct Philox4x32 {
  std::uint32_t c[4];
};

namespace detail {

inline void philox_round(Philox4x32& ctr, std::uint32_t k0, std::uint32_t k1) {
  constexpr std::uint32_t mA = 0xD2511F53u, mB = 0xCD9E8D57u;
  const std::uint64_t p0 = static_cast<std::uint64_t>(mA) * ctr.c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(mB) * ctr.c[2];
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0), hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1), hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const Philox4x32 out{{hi1 ^ ctr.c[1] ^ k0, lo1, hi0 ^ ctr.c[3] ^ k1, lo0}};
  ctr = out;
}

}  // namespace detail

inline Philox4x32 philox4x32_10(Philox4x32 ctr, std::uint64_t key) {
  constexpr std::uint32_t wA = 0x9E3779B9u, wB = 0xBB67AE85u;
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    detail::philox_round(ctr, k0, k1);
    k0 += wA;
    k1 += wB;
  }
  return ctr;
}

// one 128-bit block -> two doubles in (0, 1]
inline void block_to_u01(const Philox4x32& b, double& u1, double& u2) {
  const std::uint64_t x = (static_cast<std::uint64_t>(b.c[0]) << 32) | b.c[1];
  const std::uint64_t y = (static_cast<std::uint64_t>(b.c[2]) << 32) | b.c[3];
  u1 = static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
  u2 = static_cast<double>((y >> 11) + 1) * 0x1.0p-53;
}

// Per-path stream: consecutive blocks of the (seed, path) counter sequence.
class PathRng {
 public:
  PathRng() = default;
  PathRng(std::uint64_t seed, std::uint64_t path) : seed_(seed), path_(path) {}

  void uniform_pair(double& u1, double& u2) {
    Philox4x32 ctr{{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                    static_cast<std::uint32_t>(path_), static_cast<std::uint32_t>(path_ >> 32)}};
    ++block_;
    block_to_u01(philox4x32_10(ctr, seed_), u1, u2);
  }

  double uniform() {
    double u1, u2;
    uniform_pair(u1, u2);
    return u1;
  }

  // standard normal pair via Box-Muller with the engine's shared log/sincos
  void normal_pair(double& g1, double& g2) {
    double u1, u2;
    uniform_pair(u1, u2);
    const double r = std::sqrt(-2.0 * simd::vlog(u1));
    double s, c;
    simd::vsincos(2.0 * M_PI * u2, s, c);
    g1 = r * c;
    g2 = r * s;
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t path_ = 0;
  std::uint64_t block_ = 0;
};

}  // namespace bmcx

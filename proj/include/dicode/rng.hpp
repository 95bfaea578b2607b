#pragma once
// Counter-based seeding: every random draw sequence is keyed by
// (master seed, stream, counter), so results never depend on which thread
// ran a trial or in which order.

#include <cstdint>
#include <limits>

namespace dicode::rng {

enum class Stream : std::uint64_t {
  Codebook = 0x636f6465626f6f6bULL,
  MissedIdentification = 0x6d69737365640001ULL,
  FalseIdentification = 0x66616c7365000002ULL,
  Channel = 0x6368616e6e656c03ULL,
  Verify = 0x7665726966790004ULL,
  Sweep = 0x7377656570000005ULL,
};

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t counter) noexcept {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ stream;
  h = splitmix64(s);
  s = h ^ counter;
  return splitmix64(s);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t counter) noexcept {
  return derive_seed(master, static_cast<std::uint64_t>(stream), counter);
}

/// xoshiro256++ (Blackman & Vigna). Cheap to construct, which is what lets
/// every Monte Carlo trial own a fresh engine.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
};

inline Xoshiro256pp engine_for(std::uint64_t master, Stream stream, std::uint64_t counter) {
  return Xoshiro256pp(derive_seed(master, stream, counter));
}

}  // namespace dicode::rng

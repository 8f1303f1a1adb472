#pragma once

#include <cstdint>
#include <random>

namespace hozon {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream tags keep substreams of different purposes disjoint.
enum class StreamTag : uint64_t {
  kDirect = 1,
  kSphereDirs = 2,
  kChords = 3,
  kVolume = 4,
  kGrid = 5,
  kSteinerDirs = 6,
  kUniform = 7,
  kQuadNode = 8,
  kBodies = 9,
  kRelint = 10,
  kShuffle = 11,
};

inline uint64_t derive_seed(uint64_t seed, StreamTag tag, uint64_t a = 0,
                            uint64_t b = 0) {
  uint64_t h = splitmix64(seed ^ (static_cast<uint64_t>(tag) * 0x9e3779b97f4a7c15ull));
  h = splitmix64(h ^ (a * 0xc2b2ae3d27d4eb4full));
  h = splitmix64(h ^ (b * 0x165667b19e3779f9ull));
  return h;
}

// Deterministic generator: mt19937_64 engine with explicit double conversion
// (std distributions are avoided so the byte stream is implementation-stable).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform in [0,1).
  double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Exponential(1).
  double exponential() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return -std::log(u);
  }

  uint64_t below(uint64_t bound) { return eng_() % bound; }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Seed + shard layout of a Monte-Carlo run. Identical (seed, shards) yields
// bit-identical estimates regardless of thread count: every shard owns an
// independent substream and reduction order is fixed by shard index.
struct RngPlan {
  uint64_t seed = 20260809ull;
  int shards = 8;

  RngPlan with_seed(uint64_t s) const { return RngPlan{s, shards}; }
  uint64_t shard_seed(StreamTag tag, uint64_t context, int shard) const {
    return derive_seed(derive_seed(seed, tag, context), StreamTag::kShuffle,
                       static_cast<uint64_t>(shard) + 1);
  }
  uint64_t stream(StreamTag tag, uint64_t a = 0, uint64_t b = 0) const {
    return derive_seed(seed, tag, a, b);
  }
};

}  // namespace hozon

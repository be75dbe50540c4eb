#pragma once

#include <cstdint>
#include <random>

namespace conflictsim {

// Mixes a key into a seed (SplitMix64 finalizer). Used to derive child
// streams so that every stochastic step can be replayed in isolation.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key);

// Seedable, splittable random stream. Children are derived from the seed,
// not from the engine position, so split(k) gives the same stream no matter
// how many values the parent has already produced.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive. Rejection
  // sampling keeps the result unbiased and independent of the standard
  // library's distribution implementation.
  std::uint64_t below(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double unit();

  RandomStream split(std::uint64_t key) const { return RandomStream(mix_seed(seed_, key)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace conflictsim

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace tsloc {

// Version tag of the random algorithms below together with the built-in
// generator definitions. Stored in every dataset's metadata; bump it whenever
// any of them changes the numbers they produce.
inline constexpr std::string_view kGeneratorCatalogVersion =
    "tsloc-catalog-1/xoshiro256ss-splitmix64-boxmuller";

// Seedable, splittable pseudo-random stream.
//
// The engine is xoshiro256** seeded through splitmix64. Uniform doubles take
// the top 53 bits; normals use the Box-Muller cosine branch with no cached
// second value, so every normal() call consumes exactly two 64-bit words.
// The standard library distributions are deliberately not used because their
// output differs between implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [low, high).
  double uniform(double low, double high);
  // Standard normal.
  double normal();
  // Normal(0, sigma^2).
  double normal(double sigma) { return sigma * normal(); }

  // Uniform integer in [low, high], unbiased. Consumes nothing when
  // low == high.
  std::uint64_t uniform_int(std::uint64_t low, std::uint64_t high);

  // Independent stream derived from this stream's seed and `key`. Does not
  // advance this stream.
  RandomStream split(std::uint64_t key) const;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

// splitmix64 finalizer; exposed for hashing seeds and keys.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace tsloc

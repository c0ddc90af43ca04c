#include "tsloc/random.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace tsloc {
namespace {
__extension__ using uint128 = unsigned __int128;
}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double low, double high) {
  const double u = uniform();
  const double x = low + (high - low) * u;
  // Rounding can land exactly on `high` for wide intervals.
  return x < high ? x : std::nextafter(high, low);
}

double RandomStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::uniform_int(std::uint64_t low, std::uint64_t high) {
  if (low == high) return low;
  const std::uint64_t span = high - low;
  if (span == ~std::uint64_t{0}) return next_u64();
  const std::uint64_t range = span + 1;
  // Lemire's multiply-and-reject.
  uint128 product =
      static_cast<uint128>(next_u64()) * range;
  auto lo = static_cast<std::uint64_t>(product);
  if (lo < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (lo < threshold) {
      product = static_cast<uint128>(next_u64()) * range;
      lo = static_cast<std::uint64_t>(product);
    }
  }
  return low + static_cast<std::uint64_t>(product >> 64);
}

RandomStream RandomStream::split(std::uint64_t key) const {
  std::uint64_t sm = seed_ ^ 0x6a09e667f3bcc909ULL;
  const std::uint64_t a = splitmix64(sm);
  sm = a ^ key;
  return RandomStream(splitmix64(sm));
}

}  // namespace tsloc

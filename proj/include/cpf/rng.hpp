#pragma once

#include <cstdint>
#include <random>

namespace cpf {

/// Deterministic RNG wrapper. All randomized builders and estimators derive
/// their streams from explicit 64-bit seeds through this class so that equal
/// seeds give byte-identical results independent of platform and thread
/// schedule (std::uniform_int_distribution is implementation-defined, so we
/// roll the bounded draw ourselves).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  bool coin() { return gen_() & 1u; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double angle() { return uniform() * 6.283185307179586476925286766559; }

  /// splitmix64 finalizer; used to derive independent substream seeds.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed ^ mix(stream));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cpf

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace kdq {

/// Mixes (seed, tag) into a new seed with the splitmix64 finaliser.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

/// Seeded generator used by every stochastic path.
///
/// Draws are built directly from std::mt19937_64 output (53-bit uniforms,
/// Box-Muller normals) so sequences are identical across standard library
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling keeps this unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  double normal();
  /// Standard complex normal: real and imaginary parts N(0, 1/2).
  std::complex<double> complex_normal();
  /// Uniform point on the unit circle.
  std::complex<double> phase();

  /// Generator for the sub-stream `tag` of `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t tag);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace kdq

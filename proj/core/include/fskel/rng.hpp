#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace fskel {

// Deterministic sampler used by every audit. Normal variates go through an
// explicit Box-Muller transform instead of std::normal_distribution, whose
// output is implementation-defined; mt19937_64 itself is pinned by the
// standard, so a (seed, call sequence) pair reproduces byte-identical draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in the open interval (0, 1).
  double uniform01() {
    const std::uint64_t bits = eng_() >> 11;  // 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard complex normal: E|z|^2 = 1.
  std::complex<double> complex_normal() {
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-std::log(u));
    const double t = 6.283185307179586476925286766559 * v;
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Uniform integer in [lo, hi] via rejection-free modulo (bias negligible
  // for the tiny ranges used here, but keep it exact anyway).
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

  bool coin() { return (eng_() & 1u) != 0; }

 private:
  std::mt19937_64 eng_;
};

// Derives an independent per-suite seed from the run seed and a tag, so
// iteration-order changes in one suite never shift another suite's samples.
inline std::uint64_t substream_seed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ull ^ base;
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  // splitmix64 finalizer
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

}  // namespace fskel

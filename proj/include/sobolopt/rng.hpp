// Seeded uniform draws with a bit-reproducible mapping. The mt19937_64
// output sequence is pinned by the standard; std::uniform_real_distribution
// is not, so the engine output is mapped to doubles by hand.
#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace sobolopt {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0,1): top 53 bits of the engine word.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1,1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  void fill_symmetric(std::span<double> out) {
    for (double& v : out) v = symmetric();
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sobolopt

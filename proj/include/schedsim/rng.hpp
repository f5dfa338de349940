#ifndef SCHEDSIM_RNG_HPP
#define SCHEDSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace schedsim {

// Seeded generator plus the two draws the agents need. Hand-rolled
// mappings (instead of std distributions) so that a seed produces the
// same stream on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}. Modulo bias is negligible for the tiny n
    // used here.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    // Uniform in [-a, a].
    double symmetric(double a) { return (2.0 * uniform() - 1.0) * a; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace schedsim

#endif

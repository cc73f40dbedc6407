#ifndef SGTRACK_RANDOM_HPP_
#define SGTRACK_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace sgtrack {

// splitmix64 step, used to derive independent substream seeds from a
// master seed plus a sequence of tags (object id, tracker id, frame, ...).
inline uint64_t mix_seed(uint64_t state, uint64_t tag) {
  uint64_t z = state + 0x9e3779b97f4a7c15ULL + tag;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename... Tags>
uint64_t derive_seed(uint64_t master, Tags... tags) {
  uint64_t s = mix_seed(master, 0x5eedULL);
  ((s = mix_seed(s, static_cast<uint64_t>(tags))), ...);
  return s;
}

// Deterministic random stream with its own Gaussian state. Samples do not
// depend on library distribution internals, so identical seeds reproduce
// identical sequences everywhere.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed = 0) : engine_(seed) {}

  // Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the spare value is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double gaussian(double mean, double stddev) {
    return mean + stddev * gaussian();
  }

  // Uniform integer in [0, n).
  uint64_t uniform_index(uint64_t n) {
    return static_cast<uint64_t>(uniform01() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sgtrack

#endif  // SGTRACK_RANDOM_HPP_

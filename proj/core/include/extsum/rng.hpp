#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace extsum {

// All randomness flows through this wrapper. Draws are hand-rolled on top of
// mt19937_64 so results never depend on implementation-defined behaviour of
// the standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::size_t index(std::size_t bound) { return static_cast<std::size_t>(below(bound)); }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

std::uint64_t fnv1a64(std::string_view text);

// Stable combination of a run seed with a per-item salt (document id hash,
// epoch number, ...) so derived streams do not collide.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace extsum

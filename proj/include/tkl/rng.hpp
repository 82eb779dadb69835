#pragma once

#include <cstdint>
#include <random>

namespace tkl {

inline constexpr std::uint64_t kDefaultSeed = 3486784401ull;  // 3^20

// mt19937_64 plus rejection sampling; std::uniform_int_distribution is not
// reproducible across standard libraries, this is.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound ? (~std::uint64_t{0} / bound) * bound : 0;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tkl

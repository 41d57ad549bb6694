#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace grips {

// Deterministic random source.  All sampling goes through below() so that
// results are identical across platforms and standard-library versions
// (std::uniform_int_distribution is not pinned by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  // Independent stream derived from the original seed and a stage name.
  Rng substream(std::string_view name) const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return Rng(seed_ ^ h);
  }

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n) by rejection.
  int below(int n) {
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return static_cast<int>(v % n);
  }

  bool chance(double p) { return next() < p * 18446744073709551616.0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[i], v[below(i + 1)]);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace grips

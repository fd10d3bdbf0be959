#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace sqa {

// Deterministic xoshiro256** stream seeded through splitmix64.
// Used everywhere instead of <random> so that corpora are reproducible
// across standard libraries and platforms, not just across runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Unbiased integer in [0, n) via bitmask rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    assert(n > 0);
    if (n == 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
    std::uint64_t r;
    do {
      r = next() & mask;
    } while (r >= n);
    return r;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    assert(lo <= hi);
    return lo + static_cast<int>(uniform_below(
                    static_cast<std::uint64_t>(hi - lo) + 1));
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    assert(!xs.empty());
    return xs[uniform_below(xs.size())];
  }

  template <class T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::size_t j = uniform_below(i);
      using std::swap;
      swap(xs[i - 1], xs[j]);
    }
  }

  // Independent child stream, stable under the parent's consumption history.
  Rng fork(std::uint64_t stream) const { return Rng(seed_, stream); }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
  std::uint64_t seed_;
};

}  // namespace sqa

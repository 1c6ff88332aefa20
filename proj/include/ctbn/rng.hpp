#ifndef CTBN_RNG_HPP
#define CTBN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ctbn {

// SplitMix64 finalizer, used to derive independent seed streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return mix64(mix64(master ^ mix64(a)) ^ mix64(b ^ 0x517cc1b727220a95ull));
}

// mt19937_64 with explicit inverse-CDF draws; avoids the
// implementation-defined behaviour of the standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  int uniform_int(int n) {
    return static_cast<int>(static_cast<double>(n) * uniform());
  }

  // exponential sojourn; strictly positive so event times stay distinct
  double exponential(double rate) {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return -std::log1p(-u) / rate;
  }

  // index drawn proportionally to nonnegative weights
  int categorical(std::span<const double> weights) {
    double total = 0;
    for (double w : weights) total += w;
    const double u = uniform() * total;
    double acc = 0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  template <typename It>
  void shuffle(It first, It last) {
    for (auto n = last - first; n > 1; --n) {
      const int k = uniform_int(static_cast<int>(n));
      std::swap(first[n - 1], first[k]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ctbn

#endif

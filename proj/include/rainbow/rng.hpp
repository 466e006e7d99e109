#pragma once

// Deterministic pseudorandom source. Everything that samples goes through
// this class so that results are reproducible from a seed across platforms
// and standard libraries (std distributions are implementation-defined).

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rainbow {

// splitmix64 step; also used to derive child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x9E3779B97F4A7C15ull));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound > 0. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [lo, hi], inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::between: empty range");
    return lo + below(hi - lo + 1);
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  // `count` distinct values from [0, universe), uniform, O(count) memory.
  // Sparse Fisher-Yates: a hash map stands in for the virtual array.
  std::vector<std::uint64_t> sample_without_replacement(std::uint64_t universe,
                                                        std::uint64_t count) {
    if (count > universe)
      throw std::invalid_argument("sample_without_replacement: count exceeds universe");
    std::unordered_map<std::uint64_t, std::uint64_t> displaced;
    auto value_at = [&](std::uint64_t pos) {
      auto it = displaced.find(pos);
      return it == displaced.end() ? pos : it->second;
    };
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t j = i + below(universe - i);
      const std::uint64_t vi = value_at(i);
      const std::uint64_t vj = value_at(j);
      out.push_back(vj);
      displaced[j] = vi;
    }
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace rainbow

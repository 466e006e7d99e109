#pragma once

// Exact counting and k-subset enumeration / unranking.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rainbow/bigint.hpp"

namespace rainbow {

// C(n, k); exact, 0 when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) after each step
  }
  return result;
}

// C(n, k) in 64 bits; throws std::overflow_error instead of wrapping.
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  return to_u64(binomial(n, k));
}

inline BigInt ipow(std::uint64_t base, std::uint32_t exp) {
  BigInt r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

inline std::uint64_t pow_u64_checked(std::uint64_t base, std::uint32_t exp) {
  return to_u64(ipow(base, exp));
}

// Visits all k-subsets of {1..n} in lexicographic order.
inline void for_each_combination(std::uint32_t n, std::uint32_t k,
                                 const std::function<void(std::span<const std::uint32_t>)>& visit) {
  if (k > n) return;
  std::vector<std::uint32_t> comb(k);
  for (std::uint32_t i = 0; i < k; ++i) comb[i] = i + 1;
  for (;;) {
    visit(comb);
    if (k == 0) return;
    // advance: rightmost position that can still grow
    std::int64_t pos = static_cast<std::int64_t>(k) - 1;
    while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == n - (k - 1 - static_cast<std::uint32_t>(pos)))
      --pos;
    if (pos < 0) return;
    ++comb[static_cast<std::size_t>(pos)];
    for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < k; ++i)
      comb[i] = comb[i - 1] + 1;
  }
}

// Lexicographic unranking of k-subsets of {1..n}; rank in [0, C(n,k)).
inline std::vector<std::uint32_t> unrank_combination(std::uint64_t rank, std::uint32_t n,
                                                     std::uint32_t k) {
  if (binomial(n, k) <= rank)
    throw std::out_of_range("unrank_combination: rank out of range");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  std::uint32_t c = 1;
  for (std::uint32_t pos = 0; pos < k; ++pos) {
    for (;;) {
      const std::uint64_t block = binomial_u64(n - c, k - pos - 1);
      if (rank < block) break;
      rank -= block;
      ++c;
    }
    out.push_back(c);
    ++c;
  }
  return out;
}

}  // namespace rainbow

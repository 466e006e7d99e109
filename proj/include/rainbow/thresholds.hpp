#pragma once

// Closed-form size thresholds. All exact integer arithmetic; callers that
// need fixed width convert with to_u64 (checked).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rainbow/combinatorics.hpp"

namespace rainbow {

// (t-1) * n^(r-1): the per-family size bound for r-partite families with
// parts of size n. Families strictly above it admit a rainbow matching (for
// n large enough relative to k and t); at the bound there are tight families
// that do not.
inline BigInt threshold_partite(std::uint64_t n, std::uint32_t r, std::uint32_t t) {
  if (n < 1 || r < 1 || t < 1)
    throw std::invalid_argument("threshold_partite: n, r, t must be >= 1");
  return BigInt(t - 1) * ipow(n, r - 1);
}

// max{ C(kt-1, k), C(n, k) - C(n-t+1, k) }: the classical bound on the size
// of a k-graph on [n] with no t disjoint edges.
inline BigInt threshold_erdos(std::uint64_t n, std::uint32_t k, std::uint32_t t) {
  if (k < 1 || t < 1 || n < k)
    throw std::invalid_argument("threshold_erdos: need n >= k >= 1 and t >= 1");
  const BigInt clique = binomial(std::uint64_t{k} * t - 1, k);
  const std::uint64_t tm1 = std::uint64_t{t} - 1;
  const std::uint64_t rest = n >= tm1 ? n - tm1 : 0;
  const BigInt cover = binomial(n, k) - binomial(rest, k);
  return clique > cover ? clique : cover;
}

// C(n-1, k1-1) * C(n-1, k2-1) * prod_{i>=3} C(n, ki) for uniformities sorted
// descending. Product-type bound: families whose size product exceeds it
// admit a rainbow matching (n large); two stars at a common vertex plus
// complete families meet it exactly and do not.
inline BigInt threshold_product(std::uint64_t n, const std::vector<std::uint32_t>& ks) {
  if (ks.size() < 2) throw std::invalid_argument("threshold_product: need t >= 2");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i - 1] < ks[i])
      throw std::invalid_argument("threshold_product: uniformities must be nonincreasing");
  if (ks.back() < 1 || n < ks.front())
    throw std::invalid_argument("threshold_product: need n >= k_1 >= ... >= k_t >= 1");
  BigInt result = binomial(n - 1, ks[0] - 1) * binomial(n - 1, ks[1] - 1);
  for (std::size_t i = 2; i < ks.size(); ++i) result *= binomial(n, ks[i]);
  return result;
}

// C(n, k) - C(n-t+1, k): the number of k-subsets of [n] meeting a fixed
// (t-1)-set.
inline BigInt threshold_cover(std::uint64_t n, std::uint32_t k, std::uint32_t t) {
  if (k < 1 || t < 1 || n < k)
    throw std::invalid_argument("threshold_cover: need n >= k >= 1 and t >= 1");
  const std::uint64_t tm1 = std::uint64_t{t} - 1;
  const std::uint64_t rest = n >= tm1 ? n - tm1 : 0;
  return binomial(n, k) - binomial(rest, k);
}

}  // namespace rainbow

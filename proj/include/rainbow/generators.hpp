#pragma once

// Parameterized extremal constructions and random family samplers. Each
// generator produces exactly the advertised edge set; size identities are
// asserted by the test suite, not silently trusted.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/thresholds.hpp"
#include "rainbow/types.hpp"

namespace rainbow {

// Refuse to materialize absurd edge lists; generators are desk-scale tools.
inline constexpr std::uint64_t kMaxMaterializedEdges = 10'000'000;

namespace detail {

inline void check_edge_budget(const BigInt& count, const char* who) {
  if (count > kMaxMaterializedEdges)
    throw std::invalid_argument(std::string(who) + ": would materialize " + count.str() +
                                " edges (limit " + std::to_string(kMaxMaterializedEdges) + ")");
}

}  // namespace detail

// All k-subsets of [n].
inline Hypergraph gen_complete(std::uint32_t n, std::uint32_t k) {
  if (k < 1 || k > n) throw std::invalid_argument("gen_complete: need 1 <= k <= n");
  detail::check_edge_budget(binomial(n, k), "gen_complete");
  std::vector<Edge> edges;
  for_each_combination(n, k, [&](std::span<const std::uint32_t> c) {
    edges.emplace_back(std::vector<VertexId>(c.begin(), c.end()));
  });
  return Hypergraph(n, k, std::move(edges));
}

// All k-subsets of [n] through `center`; size C(n-1, k-1).
inline Hypergraph gen_star(std::uint32_t n, std::uint32_t k, VertexId center) {
  if (k < 1 || k > n) throw std::invalid_argument("gen_star: need 1 <= k <= n");
  if (center < 1 || center > n) throw std::invalid_argument("gen_star: center outside [n]");
  detail::check_edge_budget(binomial(n - 1, k - 1), "gen_star");
  std::vector<VertexId> others;
  for (VertexId v = 1; v <= n; ++v)
    if (v != center) others.push_back(v);
  std::vector<Edge> edges;
  for_each_combination(n - 1, k - 1, [&](std::span<const std::uint32_t> c) {
    std::vector<VertexId> vs{center};
    for (std::uint32_t i : c) vs.push_back(others[i - 1]);
    edges.emplace_back(std::move(vs));
  });
  return Hypergraph(n, k, std::move(edges));
}

// All k-subsets of [n] meeting the fixed set {1, ..., t-1};
// size C(n,k) - C(n-t+1,k). Empty for t = 1.
inline Hypergraph gen_cover(std::uint32_t n, std::uint32_t k, std::uint32_t t) {
  if (k < 1 || k > n) throw std::invalid_argument("gen_cover: need 1 <= k <= n");
  if (t < 1 || t - 1 > n) throw std::invalid_argument("gen_cover: need 1 <= t <= n+1");
  detail::check_edge_budget(binomial(n, k), "gen_cover");
  std::vector<Edge> edges;
  for_each_combination(n, k, [&](std::span<const std::uint32_t> c) {
    if (c.front() <= t - 1)  // combinations are sorted: front is the minimum
      edges.emplace_back(std::vector<VertexId>(c.begin(), c.end()));
  });
  return Hypergraph(n, k, std::move(edges));
}

// All k-subsets of {1, ..., kt-1}, as a hypergraph on [n]; size C(kt-1, k).
// Empty for t = 1 (k-1 vertices cannot host a k-edge).
inline Hypergraph gen_clique(std::uint32_t n, std::uint32_t k, std::uint32_t t) {
  if (k < 1 || t < 1) throw std::invalid_argument("gen_clique: need k, t >= 1");
  const std::uint64_t span = std::uint64_t{k} * t - 1;
  if (span > n) throw std::invalid_argument("gen_clique: need kt-1 <= n");
  detail::check_edge_budget(binomial(span, k), "gen_clique");
  std::vector<Edge> edges;
  for_each_combination(static_cast<std::uint32_t>(span), k,
                       [&](std::span<const std::uint32_t> c) {
                         edges.emplace_back(std::vector<VertexId>(c.begin(), c.end()));
                       });
  return Hypergraph(n, k, std::move(edges));
}

// All legal k-partite edges (one vertex per part, canonical labeling);
// size n^k.
inline Hypergraph gen_partite_complete(std::uint32_t n, std::uint32_t k) {
  if (k < 1 || n < 1) throw std::invalid_argument("gen_partite_complete: need n, k >= 1");
  detail::check_edge_budget(ipow(n, k), "gen_partite_complete");
  const PartiteStructure ps{k, n};
  std::vector<Edge> edges;
  std::vector<std::uint32_t> slot(k, 1);
  for (;;) {
    std::vector<VertexId> vs(k);
    for (std::uint32_t p = 1; p <= k; ++p) vs[p - 1] = ps.vertex_in(p, slot[p - 1]);
    edges.emplace_back(std::move(vs));
    std::int64_t pos = k - 1;
    while (pos >= 0 && slot[static_cast<std::size_t>(pos)] == n) {
      slot[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++slot[static_cast<std::size_t>(pos)];
  }
  return Hypergraph(ps.universe(), k, std::move(edges), ps);
}

// All legal k-partite edges whose part-`part` vertex lies in a fixed
// (t-1)-subset of that part (default: the first t-1 slots); size exactly
// (t-1) * n^(k-1).
inline Hypergraph gen_partite_threshold(std::uint32_t n, std::uint32_t k, std::uint32_t t,
                                        std::uint32_t part = 1,
                                        const std::vector<VertexId>* fixed = nullptr) {
  if (k < 1 || n < 1 || t < 1)
    throw std::invalid_argument("gen_partite_threshold: need n, k, t >= 1");
  if (part < 1 || part > k)
    throw std::invalid_argument("gen_partite_threshold: part outside [k]");
  if (t - 1 > n)
    throw std::invalid_argument("gen_partite_threshold: fixed set larger than a part");
  const PartiteStructure ps{k, n};
  std::vector<VertexId> anchors;
  if (fixed) {
    anchors = *fixed;
    if (anchors.size() != t - 1)
      throw std::invalid_argument("gen_partite_threshold: fixed set must have t-1 vertices");
    for (VertexId v : anchors)
      if (v < 1 || v > ps.universe() || ps.part_of(v) != part)
        throw std::invalid_argument("gen_partite_threshold: fixed vertex not in part " +
                                    std::to_string(part));
  } else {
    for (std::uint32_t s = 1; s < t; ++s) anchors.push_back(ps.vertex_in(part, s));
  }
  detail::check_edge_budget(BigInt(t - 1) * ipow(n, k - 1), "gen_partite_threshold");

  std::vector<std::uint32_t> free_parts;
  for (std::uint32_t p = 1; p <= k; ++p)
    if (p != part) free_parts.push_back(p);

  std::vector<Edge> edges;
  for (VertexId anchor : anchors) {
    std::vector<std::uint32_t> slot(free_parts.size(), 1);
    for (;;) {
      std::vector<VertexId> vs{anchor};
      for (std::size_t i = 0; i < free_parts.size(); ++i)
        vs.push_back(ps.vertex_in(free_parts[i], slot[i]));
      edges.emplace_back(std::move(vs));
      if (free_parts.empty()) break;
      std::int64_t pos = static_cast<std::int64_t>(free_parts.size()) - 1;
      while (pos >= 0 && slot[static_cast<std::size_t>(pos)] == n) {
        slot[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++slot[static_cast<std::size_t>(pos)];
    }
  }
  return Hypergraph(ps.universe(), k, std::move(edges), ps);
}

// F_1, F_2 = stars at vertex 1 (uniformities k_1, k_2); F_i = complete for
// i >= 3. Size product equals threshold_product(n, ks) exactly, and the two
// stars collide at vertex 1, so the family admits no rainbow matching.
inline Family gen_theorem13_tight(std::uint32_t n, const std::vector<std::uint32_t>& ks) {
  if (ks.size() < 2)
    throw std::invalid_argument("gen_theorem13_tight: need at least two families");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i - 1] < ks[i])
      throw std::invalid_argument("gen_theorem13_tight: uniformities must be nonincreasing");
  if (ks.back() < 1 || ks.front() > n)
    throw std::invalid_argument("gen_theorem13_tight: need n >= k_1 >= ... >= k_t >= 1");
  std::vector<Hypergraph> members;
  members.push_back(gen_star(n, ks[0], 1));
  members.push_back(gen_star(n, ks[1], 1));
  for (std::size_t i = 2; i < ks.size(); ++i) members.push_back(gen_complete(n, ks[i]));
  return Family(std::move(members));
}

// Uniform sample (without replacement) of `size` edges over the legal tuples
// on the given parts of a partite structure. Edges come out in rank order.
inline Hypergraph gen_random_partite_member(const PartiteStructure& ps,
                                            const std::vector<std::uint32_t>& parts,
                                            std::uint64_t size, Rng& rng) {
  const std::uint32_t r = static_cast<std::uint32_t>(parts.size());
  if (r < 1) throw std::invalid_argument("gen_random_partite_member: need >= 1 part");
  for (std::uint32_t p : parts)
    if (p < 1 || p > ps.k)
      throw std::invalid_argument("gen_random_partite_member: part outside [k]");
  const std::uint64_t total = pow_u64_checked(ps.n, r);
  if (size > total)
    throw std::invalid_argument("gen_random_partite_member: infeasible size " +
                                std::to_string(size) + " of " + std::to_string(total));
  detail::check_edge_budget(BigInt(size), "gen_random_partite_member");
  std::vector<std::uint64_t> ranks = rng.sample_without_replacement(total, size);
  std::sort(ranks.begin(), ranks.end());
  std::vector<Edge> edges;
  edges.reserve(size);
  for (std::uint64_t rank : ranks) {
    std::vector<VertexId> vs(r);
    std::uint64_t x = rank;
    for (std::uint32_t i = r; i-- > 0;) {
      vs[i] = ps.vertex_in(parts[i], static_cast<std::uint32_t>(x % ps.n) + 1);
      x /= ps.n;
    }
    edges.emplace_back(std::move(vs));
  }
  return Hypergraph(ps.universe(), r, std::move(edges), ps);
}

// Uniform sample of `size` k-subsets of [n], lexicographic rank order.
inline Hypergraph gen_random_uniform_member(std::uint32_t n, std::uint32_t k,
                                            std::uint64_t size, Rng& rng) {
  if (k < 1 || k > n)
    throw std::invalid_argument("gen_random_uniform_member: need 1 <= k <= n");
  const BigInt total_big = binomial(n, k);
  if (total_big < size)
    throw std::invalid_argument("gen_random_uniform_member: infeasible size");
  const std::uint64_t total = to_u64(total_big);
  detail::check_edge_budget(BigInt(size), "gen_random_uniform_member");
  std::vector<std::uint64_t> ranks = rng.sample_without_replacement(total, size);
  std::sort(ranks.begin(), ranks.end());
  std::vector<Edge> edges;
  edges.reserve(size);
  for (std::uint64_t rank : ranks) {
    auto c = unrank_combination(rank, n, k);
    edges.emplace_back(std::vector<VertexId>(c.begin(), c.end()));
  }
  return Hypergraph(n, k, std::move(edges));
}

// Random family: sizes[i] edges for member i, uniform without replacement,
// reproducible from the seed. Partite sampling requires all uniformities
// equal (the members are k-partite k-graphs on the canonical structure).
inline Family gen_random_family(std::uint32_t n, const std::vector<std::uint32_t>& ks,
                                const std::vector<std::uint64_t>& sizes, bool partite,
                                std::uint64_t seed) {
  if (ks.empty() || ks.size() != sizes.size())
    throw std::invalid_argument("gen_random_family: ks and sizes must align");
  std::vector<Hypergraph> members;
  if (partite) {
    for (std::uint32_t k : ks)
      if (k != ks.front())
        throw std::invalid_argument(
            "gen_random_family: partite members must share one uniformity");
    const PartiteStructure ps{ks.front(), n};
    std::vector<std::uint32_t> parts;
    for (std::uint32_t p = 1; p <= ps.k; ++p) parts.push_back(p);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      Rng rng(mix_seed(seed, i));
      members.push_back(gen_random_partite_member(ps, parts, sizes[i], rng));
    }
  } else {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      Rng rng(mix_seed(seed, i));
      members.push_back(gen_random_uniform_member(n, ks[i], sizes[i], rng));
    }
  }
  return Family(std::move(members));
}

}  // namespace rainbow

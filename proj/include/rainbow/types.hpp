#pragma once

// Core domain types: hyperedges over a 1-based vertex universe, uniform
// hypergraphs (optionally k-partite), families of hypergraphs, and rainbow
// matchings with their universal validity check.
//
// Hypergraph and Family are immutable after construction and safe to share
// read-only across threads. Degree queries are served by an inverted index
// (vertex -> incident edge ids) built once at construction.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/combinatorics.hpp"

namespace rainbow {

using VertexId = std::uint32_t;  // 1-based, in [1, universe]

// Construction-time violation; carries the offending edge index when known.
class HypergraphError : public std::invalid_argument {
 public:
  explicit HypergraphError(const std::string& msg, std::int64_t edge_index = -1)
      : std::invalid_argument(msg), edge_index_(edge_index) {}
  std::int64_t edge_index() const { return edge_index_; }

 private:
  std::int64_t edge_index_;
};

// A hyperedge: strictly increasing vertex ids. Input order is canonicalized
// by sorting; a repeated vertex is rejected.
class Edge {
 public:
  Edge() = default;
  explicit Edge(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw HypergraphError("edge has a repeated vertex");
  }
  Edge(std::initializer_list<VertexId> vs) : Edge(std::vector<VertexId>(vs)) {}

  std::span<const VertexId> vertices() const { return vertices_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(vertices_.size()); }

  bool contains(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  bool disjoint_with(const Edge& other) const {
    std::size_t i = 0, j = 0;
    while (i < vertices_.size() && j < other.vertices_.size()) {
      if (vertices_[i] == other.vertices_[j]) return false;
      if (vertices_[i] < other.vertices_[j])
        ++i;
      else
        ++j;
    }
    return true;
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;

 private:
  std::vector<VertexId> vertices_;
};

// Balanced partition of [k*n] into k parts of size n with the canonical
// labeling: vertex (q-1)*k + p lies in part p, for p in [k], q in [n].
struct PartiteStructure {
  std::uint32_t k = 0;  // part count
  std::uint32_t n = 0;  // part size

  std::uint32_t universe() const { return k * n; }
  std::uint32_t part_of(VertexId v) const { return (v - 1) % k + 1; }
  std::uint32_t slot_of(VertexId v) const { return (v - 1) / k + 1; }
  VertexId vertex_in(std::uint32_t part, std::uint32_t slot) const {
    return (slot - 1) * k + part;
  }

  // Legal: at most one vertex per part.
  bool legal(std::span<const VertexId> t) const {
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j)
        if (part_of(t[i]) == part_of(t[j])) return false;
    return true;
  }

  friend bool operator==(const PartiteStructure&, const PartiteStructure&) = default;
};

// Per-edge bit vector; used for word-wise disjointness tests when the
// universe fits (<= kMaskBits vertices). Larger universes fall back to the
// sparse per-vertex path.
inline constexpr std::uint32_t kMaskBits = 512;

struct EdgeMask {
  std::array<std::uint64_t, kMaskBits / 64> w{};
};

class Hypergraph {
 public:
  Hypergraph(std::uint32_t universe_size, std::uint32_t uniformity, std::vector<Edge> edges,
             std::optional<PartiteStructure> partite = std::nullopt)
      : universe_size_(universe_size),
        uniformity_(uniformity),
        partite_(std::move(partite)),
        edges_(std::move(edges)) {
    if (universe_size_ == 0) throw HypergraphError("universe must be nonempty");
    if (uniformity_ == 0 || uniformity_ > universe_size_)
      throw HypergraphError("uniformity must be in [1, universe]");
    if (partite_) {
      if (partite_->k == 0 || partite_->n == 0 ||
          partite_->universe() != universe_size_)
        throw HypergraphError("partite structure does not cover the universe");
      if (uniformity_ > partite_->k)
        throw HypergraphError("uniformity exceeds the part count");
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.size() != uniformity_)
        throw HypergraphError("edge size differs from uniformity",
                              static_cast<std::int64_t>(i));
      for (VertexId v : e.vertices())
        if (v == 0 || v > universe_size_)
          throw HypergraphError("vertex outside universe", static_cast<std::int64_t>(i));
      if (partite_ && !partite_->legal(e.vertices()))
        throw HypergraphError("edge takes two vertices from one part",
                              static_cast<std::int64_t>(i));
      // note: when uniformity == k, "at most one per part" over k vertices
      // forces exactly one per part.
    }

    lex_order_.resize(edges_.size());
    for (std::uint32_t i = 0; i < edges_.size(); ++i) lex_order_[i] = i;
    std::sort(lex_order_.begin(), lex_order_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return edges_[a] < edges_[b]; });
    for (std::size_t i = 1; i < lex_order_.size(); ++i)
      if (edges_[lex_order_[i - 1]] == edges_[lex_order_[i]])
        throw HypergraphError("duplicate edge",
                              static_cast<std::int64_t>(
                                  std::max(lex_order_[i - 1], lex_order_[i])));

    incidence_.assign(universe_size_ + 1, {});
    for (std::uint32_t i = 0; i < edges_.size(); ++i)
      for (VertexId v : edges_[i].vertices()) incidence_[v].push_back(i);

    if (universe_size_ <= kMaskBits) {
      masks_.resize(edges_.size());
      for (std::uint32_t i = 0; i < edges_.size(); ++i)
        for (VertexId v : edges_[i].vertices())
          masks_[i].w[(v - 1) / 64] |= std::uint64_t{1} << ((v - 1) % 64);
    }
  }

  std::uint32_t universe_size() const { return universe_size_; }
  std::uint32_t uniformity() const { return uniformity_; }
  const std::optional<PartiteStructure>& partite() const { return partite_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::uint64_t edge_count() const { return edges_.size(); }
  const std::vector<std::uint32_t>& lex_order() const { return lex_order_; }

  bool contains(const Edge& e) const {
    auto it = std::lower_bound(lex_order_.begin(), lex_order_.end(), e,
                               [&](std::uint32_t id, const Edge& x) { return edges_[id] < x; });
    return it != lex_order_.end() && edges_[*it] == e;
  }

  const std::vector<std::uint32_t>& incident(VertexId v) const {
    check_vertex(v);
    return incidence_[v];
  }

  std::uint64_t vertex_degree(VertexId v) const { return incident(v).size(); }

  // d_H(T): number of edges containing every vertex of T. T = {} counts all
  // edges; a T that is illegal under the partite structure has degree 0.
  std::uint64_t degree(std::span<const VertexId> t) const {
    for (VertexId v : t) check_vertex(v);
    std::vector<VertexId> key(t.begin(), t.end());
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (key.empty()) return edge_count();
    if (partite_ && !partite_->legal(key)) return 0;
    // scan the shortest incidence list
    VertexId pivot = key[0];
    for (VertexId v : key)
      if (incidence_[v].size() < incidence_[pivot].size()) pivot = v;
    std::uint64_t count = 0;
    for (std::uint32_t id : incidence_[pivot]) {
      const Edge& e = edges_[id];
      bool all = true;
      for (VertexId v : key)
        if (!e.contains(v)) {
          all = false;
          break;
        }
      if (all) ++count;
    }
    return count;
  }

  std::uint64_t degree(std::initializer_list<VertexId> t) const {
    return degree(std::span<const VertexId>(t.begin(), t.size()));
  }

  // Minimum l-degree over all l-subsets of the universe (legal ones only
  // when partite). l = 0 gives the edge count.
  std::uint64_t min_l_degree(std::uint32_t l) const {
    if (l > uniformity_)
      throw std::invalid_argument("min_l_degree: l exceeds uniformity");
    if (l == 0) return edge_count();
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    bool seen = false;
    for_each_combination(universe_size_, l, [&](std::span<const std::uint32_t> comb) {
      if (best == 0 && seen) return;
      if (partite_ && !partite_->legal(comb)) return;
      seen = true;
      best = std::min(best, degree(comb));
    });
    return seen ? best : 0;
  }

  bool has_masks() const { return !masks_.empty() || edges_.empty(); }
  std::uint32_t mask_words() const { return (universe_size_ + 63) / 64; }
  const EdgeMask& mask(std::uint32_t edge_id) const { return masks_[edge_id]; }

 private:
  void check_vertex(VertexId v) const {
    if (v == 0 || v > universe_size_)
      throw std::out_of_range("vertex " + std::to_string(v) + " outside universe [1, " +
                              std::to_string(universe_size_) + "]");
  }

  std::uint32_t universe_size_;
  std::uint32_t uniformity_;
  std::optional<PartiteStructure> partite_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> lex_order_;                 // edge ids sorted by edge
  std::vector<std::vector<std::uint32_t>> incidence_;    // vertex -> edge ids
  std::vector<EdgeMask> masks_;                          // universe <= kMaskBits only
};

// Ordered list of hypergraphs over one shared universe. If any member is
// partite, all must carry the same structure. Uniformities may differ.
class Family {
 public:
  explicit Family(std::vector<Hypergraph> members) : members_(std::move(members)) {
    if (members_.empty()) throw HypergraphError("family needs at least one member");
    const std::uint32_t universe = members_.front().universe_size();
    bool any_partite = false;
    for (const Hypergraph& h : members_) {
      if (h.universe_size() != universe)
        throw HypergraphError("family members live on different universes");
      any_partite = any_partite || h.partite().has_value();
    }
    if (any_partite) {
      const auto& first = members_.front().partite();
      for (const Hypergraph& h : members_)
        if (!h.partite() || !(*h.partite() == *first))
          throw HypergraphError("family mixes partite structures");
    }
  }

  const std::vector<Hypergraph>& members() const { return members_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(members_.size()); }
  std::uint32_t universe_size() const { return members_.front().universe_size(); }
  const std::optional<PartiteStructure>& partite() const {
    return members_.front().partite();
  }

 private:
  std::vector<Hypergraph> members_;
};

struct Pick {
  std::uint32_t family = 0;  // 1-based index into the Family
  Edge edge;
  friend bool operator==(const Pick&, const Pick&) = default;
};

// t pairwise-disjoint edges, the i-th from family member i.
struct RainbowMatching {
  std::vector<Pick> picks;
  friend bool operator==(const RainbowMatching&, const RainbowMatching&) = default;
};

enum class RainbowFault { None, WrongCount, NotMember, Overlap };

inline const char* to_string(RainbowFault f) {
  switch (f) {
    case RainbowFault::None: return "none";
    case RainbowFault::WrongCount: return "wrong-count";
    case RainbowFault::NotMember: return "not-member";
    case RainbowFault::Overlap: return "overlap";
  }
  return "?";
}

struct RainbowCheck {
  bool ok = false;
  RainbowFault fault = RainbowFault::None;
  std::string detail;
};

// The universal post-check: exactly one pick per family, each pick an edge of
// its family, all picks pairwise vertex-disjoint.
inline RainbowCheck validate_rainbow(const Family& family, const RainbowMatching& m) {
  const std::uint32_t t = family.size();
  if (m.picks.size() != t)
    return {false, RainbowFault::WrongCount,
            "expected " + std::to_string(t) + " picks, got " + std::to_string(m.picks.size())};
  std::vector<char> seen(t + 1, 0);
  for (const Pick& p : m.picks) {
    if (p.family == 0 || p.family > t)
      return {false, RainbowFault::WrongCount,
              "pick references family " + std::to_string(p.family)};
    if (seen[p.family])
      return {false, RainbowFault::WrongCount,
              "family " + std::to_string(p.family) + " picked twice"};
    seen[p.family] = 1;
  }
  for (const Pick& p : m.picks)
    if (!family.members()[p.family - 1].contains(p.edge))
      return {false, RainbowFault::NotMember,
              "edge is not a member of family " + std::to_string(p.family)};
  std::vector<VertexId> all;
  for (const Pick& p : m.picks)
    all.insert(all.end(), p.edge.vertices().begin(), p.edge.vertices().end());
  std::sort(all.begin(), all.end());
  auto dup = std::adjacent_find(all.begin(), all.end());
  if (dup != all.end())
    return {false, RainbowFault::Overlap, "vertex " + std::to_string(*dup) + " reused"};
  return {true, RainbowFault::None, ""};
}

}  // namespace rainbow

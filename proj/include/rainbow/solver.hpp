#pragma once

// Exact decision procedures. find_rainbow is the ground truth for rainbow
// matching existence: backtracking over families with a used-vertex set and
// a fail-fast prune (some unprocessed family has no edge avoiding the used
// vertices). brute_force_rainbow is a deliberately independent oracle with
// no shared search code. matching_number computes nu(H) by branch and bound.
//
// Verdicts are exact: NoMatching is returned only after exhaustive
// refutation; running out of node budget is its own verdict, never folded
// into NoMatching. Order heuristics and seeds change which witness is found
// and how fast, never the verdict.

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/rng.hpp"
#include "rainbow/types.hpp"

namespace rainbow {

enum class Verdict { Matching, NoMatching, BudgetExceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Matching: return "matching";
    case Verdict::NoMatching: return "no-matching";
    case Verdict::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

enum class OrderHeuristic { InputOrder, SmallestFamilyFirst, MinDegreeVertex };

inline const char* to_string(OrderHeuristic h) {
  switch (h) {
    case OrderHeuristic::InputOrder: return "input-order";
    case OrderHeuristic::SmallestFamilyFirst: return "smallest-family-first";
    case OrderHeuristic::MinDegreeVertex: return "min-degree-vertex";
  }
  return "?";
}

struct SolverConfig {
  std::optional<std::uint64_t> node_budget;
  OrderHeuristic order_heuristic = OrderHeuristic::SmallestFamilyFirst;
  std::uint64_t seed = 0;  // tie-breaking / witness choice only
};

struct SolveResult {
  Verdict verdict = Verdict::NoMatching;
  std::optional<RainbowMatching> witness;
  std::uint64_t nodes = 0;
  double millis = 0.0;
};

namespace detail {

// Dynamic bitset over the universe; word-parallel intersection against the
// precomputed edge masks when the universe fits, per-vertex tests otherwise.
class UsedVertices {
 public:
  explicit UsedVertices(std::uint32_t universe)
      : words_((universe + 63) / 64, 0) {}

  void add(const Edge& e) {
    for (VertexId v : e.vertices()) words_[(v - 1) / 64] |= bit(v);
  }
  void remove(const Edge& e) {
    for (VertexId v : e.vertices()) words_[(v - 1) / 64] &= ~bit(v);
  }
  bool intersects(const Edge& e) const {
    for (VertexId v : e.vertices())
      if (words_[(v - 1) / 64] & bit(v)) return true;
    return false;
  }
  bool intersects(const EdgeMask& m) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & m.w[i]) return true;
    return false;
  }

 private:
  static std::uint64_t bit(VertexId v) { return std::uint64_t{1} << ((v - 1) % 64); }
  std::vector<std::uint64_t> words_;
};

struct RainbowSearch {
  const Family& family;
  const SolverConfig& cfg;
  bool use_masks;
  UsedVertices used;
  std::vector<std::vector<std::uint32_t>> edge_order;  // per member
  std::vector<std::uint32_t> member_order;             // static order
  std::vector<char> processed;
  std::vector<Pick> picks;
  std::uint64_t nodes = 0;
  bool budget_hit = false;

  explicit RainbowSearch(const Family& f, const SolverConfig& c)
      : family(f), cfg(c), used(f.universe_size()) {
    const std::uint32_t t = family.size();
    use_masks = true;
    for (const Hypergraph& h : family.members()) use_masks = use_masks && h.has_masks();

    edge_order.resize(t);
    for (std::uint32_t i = 0; i < t; ++i) {
      const std::uint64_t m = family.members()[i].edge_count();
      edge_order[i].resize(m);
      for (std::uint32_t e = 0; e < m; ++e) edge_order[i][e] = e;
      if (cfg.seed != 0) Rng(mix_seed(cfg.seed, i)).shuffle(edge_order[i]);
    }

    member_order.resize(t);
    for (std::uint32_t i = 0; i < t; ++i) member_order[i] = i;
    if (cfg.order_heuristic == OrderHeuristic::SmallestFamilyFirst) {
      std::stable_sort(member_order.begin(), member_order.end(),
                       [&](std::uint32_t a, std::uint32_t b) {
                         return family.members()[a].edge_count() <
                                family.members()[b].edge_count();
                       });
      if (cfg.seed != 0) {
        // randomize within runs of equal size
        Rng tie(mix_seed(cfg.seed, 0x7135));
        std::size_t i = 0;
        while (i < member_order.size()) {
          std::size_t j = i + 1;
          while (j < member_order.size() &&
                 family.members()[member_order[j]].edge_count() ==
                     family.members()[member_order[i]].edge_count())
            ++j;
          if (j - i > 1) {
            std::vector<std::uint32_t> run(member_order.begin() + i, member_order.begin() + j);
            tie.shuffle(run);
            std::copy(run.begin(), run.end(), member_order.begin() + i);
          }
          i = j;
        }
      }
    }
    processed.assign(t, 0);
  }

  bool edge_free(std::uint32_t member, std::uint32_t edge_id) const {
    const Hypergraph& h = family.members()[member];
    return use_masks ? !used.intersects(h.mask(edge_id))
                     : !used.intersects(h.edges()[edge_id]);
  }

  // Count edges of `member` not blocked by the used set, stopping at `cap`.
  std::uint64_t free_edges(std::uint32_t member, std::uint64_t cap) const {
    std::uint64_t count = 0;
    const std::uint64_t m = family.members()[member].edge_count();
    for (std::uint32_t e = 0; e < m && count < cap; ++e)
      if (edge_free(member, e)) ++count;
    return count;
  }

  bool dfs(std::uint32_t level) {
    ++nodes;
    if (cfg.node_budget && nodes > *cfg.node_budget) {
      budget_hit = true;
      return false;
    }
    const std::uint32_t t = family.size();
    if (level == t) return true;

    // prune: every unprocessed family must still have a free edge
    for (std::uint32_t i = 0; i < t; ++i)
      if (!processed[i] && free_edges(i, 1) == 0) return false;

    std::uint32_t chosen;
    if (cfg.order_heuristic == OrderHeuristic::MinDegreeVertex) {
      // most-constrained family first
      chosen = t;
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
      for (std::uint32_t i = 0; i < t; ++i) {
        if (processed[i]) continue;
        const std::uint64_t c = free_edges(i, best);
        if (c < best) {
          best = c;
          chosen = i;
        }
      }
    } else {
      chosen = t;
      for (std::uint32_t i : member_order)
        if (!processed[i]) {
          chosen = i;
          break;
        }
    }

    const Hypergraph& h = family.members()[chosen];
    processed[chosen] = 1;
    for (std::uint32_t e : edge_order[chosen]) {
      if (!edge_free(chosen, e)) continue;
      const Edge& edge = h.edges()[e];
      used.add(edge);
      picks.push_back({chosen + 1, edge});
      if (dfs(level + 1)) return true;
      picks.pop_back();
      used.remove(edge);
      if (budget_hit) break;
    }
    processed[chosen] = 0;
    return false;
  }
};

}  // namespace detail

inline SolveResult find_rainbow(const Family& family, const SolverConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::RainbowSearch search(family, cfg);
  const bool found = search.dfs(0);
  SolveResult result;
  result.nodes = search.nodes;
  if (found) {
    RainbowMatching m{std::move(search.picks)};
    std::sort(m.picks.begin(), m.picks.end(),
              [](const Pick& a, const Pick& b) { return a.family < b.family; });
    if (!validate_rainbow(family, m).ok)
      throw std::logic_error("find_rainbow produced an invalid matching");
    result.verdict = Verdict::Matching;
    result.witness = std::move(m);
  } else {
    result.verdict = search.budget_hit ? Verdict::BudgetExceeded : Verdict::NoMatching;
  }
  result.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return result;
}

// --- maximum matching size ------------------------------------------------

struct NuResult {
  std::uint32_t lower = 0;  // size of the best matching found
  std::uint32_t upper = 0;  // proven upper bound; == lower iff search completed
  std::uint64_t nodes = 0;
  double millis = 0.0;
  bool exact() const { return lower == upper; }
};

namespace detail {

struct NuSearch {
  const Hypergraph& h;
  const SolverConfig& cfg;
  std::vector<char> edge_alive;
  std::vector<std::uint32_t> vertex_free;  // free = not covered by the current matching
  std::uint32_t cur = 0, best = 0;
  std::uint32_t open_ub = 0;  // largest optimistic bound among budget-cut branches
  std::uint64_t nodes = 0;
  bool budget_hit = false;

  NuSearch(const Hypergraph& hg, const SolverConfig& c) : h(hg), cfg(c) {
    edge_alive.assign(h.edge_count(), 1);
    vertex_free.assign(h.universe_size() + 1, 1);
  }

  std::uint32_t upper_bound_here() const {
    std::uint64_t alive = 0;
    std::vector<char> touched(h.universe_size() + 1, 0);
    for (std::uint32_t e = 0; e < h.edge_count(); ++e)
      if (edge_alive[e]) {
        ++alive;
        for (VertexId v : h.edges()[e].vertices()) touched[v] = 1;
      }
    std::uint64_t touched_count = 0;
    for (std::uint32_t v = 1; v <= h.universe_size(); ++v)
      if (touched[v]) ++touched_count;
    const std::uint64_t by_vertices = touched_count / h.uniformity();
    return cur + static_cast<std::uint32_t>(std::min<std::uint64_t>(alive, by_vertices));
  }

  void search() {
    ++nodes;
    const std::uint32_t ub = upper_bound_here();
    if (cfg.node_budget && nodes > *cfg.node_budget) {
      budget_hit = true;
      open_ub = std::max(open_ub, ub);
      return;
    }
    if (ub <= best) return;  // subtree cannot beat the witnessed best
    // pick a covered vertex of minimum positive degree
    VertexId pivot = 0;
    std::uint64_t pivot_deg = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t v = 1; v <= h.universe_size(); ++v) {
      if (!vertex_free[v]) continue;
      std::uint64_t d = 0;
      for (std::uint32_t e : h.incident(v))
        if (edge_alive[e]) ++d;
      if (d > 0 && d < pivot_deg) {
        pivot_deg = d;
        pivot = v;
      }
    }
    if (pivot == 0) {  // no edges left
      best = std::max(best, cur);
      return;
    }

    // include each live edge through the pivot
    std::vector<std::uint32_t> branch_edges;
    for (std::uint32_t e : h.incident(pivot))
      if (edge_alive[e]) branch_edges.push_back(e);
    for (std::uint32_t e : branch_edges) {
      std::vector<std::uint32_t> killed;
      for (VertexId v : h.edges()[e].vertices()) {
        vertex_free[v] = 0;
        for (std::uint32_t f : h.incident(v))
          if (edge_alive[f]) {
            edge_alive[f] = 0;
            killed.push_back(f);
          }
      }
      ++cur;
      search();
      --cur;
      for (std::uint32_t f : killed) edge_alive[f] = 1;
      for (VertexId v : h.edges()[e].vertices()) vertex_free[v] = 1;
      if (budget_hit) {
        // this node's bound covers its unexplored sibling branches
        open_ub = std::max(open_ub, ub);
        return;
      }
    }

    // exclude the pivot: no chosen edge may contain it
    std::vector<std::uint32_t> killed;
    for (std::uint32_t f : h.incident(pivot))
      if (edge_alive[f]) {
        edge_alive[f] = 0;
        killed.push_back(f);
      }
    search();
    for (std::uint32_t f : killed) edge_alive[f] = 1;
    if (budget_hit) open_ub = std::max(open_ub, ub);
  }
};

}  // namespace detail

inline NuResult matching_number(const Hypergraph& h, const SolverConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::NuSearch search(h, cfg);
  // greedy matching seeds the lower bound
  {
    detail::UsedVertices used(h.universe_size());
    std::uint32_t size = 0;
    for (const Edge& e : h.edges())
      if (!used.intersects(e)) {
        used.add(e);
        ++size;
      }
    search.best = size;
  }
  search.search();
  NuResult result;
  result.lower = search.best;
  result.upper = search.budget_hit ? std::max(search.best, search.open_ub) : search.best;
  result.nodes = search.nodes;
  result.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return result;
}

// --- independent oracle -----------------------------------------------------

struct BruteResult {
  Verdict verdict = Verdict::NoMatching;
  std::optional<RainbowMatching> witness;
};

// Enumerates all tuples of F_1 x ... x F_t in lexicographic index order and
// returns the first pairwise-disjoint one. Shares no search machinery with
// find_rainbow: disjointness is re-derived from raw vertex lists.
inline BruteResult brute_force_rainbow(const Family& family,
                                       std::uint64_t product_guard = 10'000'000) {
  const std::uint32_t t = family.size();
  long double product = 1.0L;
  for (const Hypergraph& h : family.members()) product *= h.edge_count();
  if (product > static_cast<long double>(product_guard))
    throw std::invalid_argument("brute_force_rainbow: family product exceeds guard");
  for (const Hypergraph& h : family.members())
    if (h.edge_count() == 0) return {Verdict::NoMatching, std::nullopt};

  std::vector<std::uint64_t> index(t, 0);
  for (;;) {
    std::vector<VertexId> all;
    for (std::uint32_t i = 0; i < t; ++i) {
      const Edge& e = family.members()[i].edges()[index[i]];
      all.insert(all.end(), e.vertices().begin(), e.vertices().end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) == all.end()) {
      RainbowMatching m;
      for (std::uint32_t i = 0; i < t; ++i)
        m.picks.push_back({i + 1, family.members()[i].edges()[index[i]]});
      return {Verdict::Matching, std::move(m)};
    }
    // odometer step
    std::int64_t pos = t - 1;
    while (pos >= 0) {
      if (++index[static_cast<std::size_t>(pos)] <
          family.members()[static_cast<std::size_t>(pos)].edge_count())
        break;
      index[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return {Verdict::NoMatching, std::nullopt};
  }
}

}  // namespace rainbow

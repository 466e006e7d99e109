#pragma once

// Constructive rainbow-matching procedures with replayable traces.
//
// bipartite_greedy: two-phase greedy for families of bipartite edge sets on
// a common k-part structure. Phase 1 picks anchor vertices x_1..x_t of large
// residual degree; phase 2 walks back from x_t choosing edges through the
// anchors that avoid everything chosen so far.
//
// partite_recursive: recursive construction for r-partite families of size
// above (t-1)*n^(r-1). Case analysis per call:
//   BASE-T1            t = 1, take any edge
//   BASE-BIPARTITE     r = 2, delegate to bipartite_greedy
//   LINK-RECURSE       every family has >= t vertices of degree
//                      > 2(t-1)n^(r-2): pick distinct representatives,
//                      recurse on their links with r-1
//   EXTEND-DISJOINT    some family has < t such vertices and max degree
//                      <= (t-1)(r-1)n^(r-2): solve the other t-1 and extend
//                      by a disjoint edge found by scan
//   HIGH-DEGREE-VERTEX same but a vertex x of larger degree exists: drop x
//                      from the other families, solve them, then extend with
//                      an edge through x
//
// Procedures throw HypothesisViolated only when a required vertex/edge does
// not exist, which cannot happen while the size hypotheses hold; below the
// thresholds a violation is an honest outcome, not an error in the caller.
//
// random_permutation_certify: samples part-preserving permutations of the
// universe (k independent uniform permutations, one per part), reads off the
// n blocks, and succeeds when at least t block indices hit their families.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rainbow/combinatorics.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/types.hpp"

namespace rainbow {

class HypothesisViolated : public std::runtime_error {
 public:
  HypothesisViolated(std::string stage, std::uint32_t family_index, const std::string& msg)
      : std::runtime_error("hypothesis violated at " + stage + " (family " +
                           std::to_string(family_index) + "): " + msg),
        stage_(std::move(stage)),
        family_index_(family_index) {}

  const std::string& stage() const { return stage_; }
  std::uint32_t family_index() const { return family_index_; }  // 1-based

 private:
  std::string stage_;
  std::uint32_t family_index_;
};

// --- two-phase bipartite greedy --------------------------------------------

struct VertexChoice {
  VertexId vertex = 0;
  std::uint64_t residual_degree = 0;  // degree after deleting earlier anchors
};

struct GreedyTrace {
  std::vector<VertexChoice> anchors;       // x_1..x_t in selection order
  std::vector<Edge> edges_in_pick_order;   // e_t..e_1 as selected
};

struct GreedyResult {
  RainbowMatching matching;
  GreedyTrace trace;
};

inline GreedyResult bipartite_greedy(const Family& family) {
  if (!family.partite())
    throw std::invalid_argument("bipartite_greedy: family must be partite");
  for (const Hypergraph& h : family.members())
    if (h.uniformity() != 2)
      throw std::invalid_argument("bipartite_greedy: members must be 2-uniform");

  const std::uint32_t t = family.size();
  const std::uint32_t universe = family.universe_size();

  GreedyTrace trace;
  std::vector<VertexId> anchors;                 // x_1..x_t
  std::vector<std::uint32_t> anchor_rank(universe + 1, 0);  // vertex -> s (1-based)

  // Phase 1: anchors of maximum residual degree (ties to the lowest id).
  for (std::uint32_t s = 1; s <= t; ++s) {
    const Hypergraph& f = family.members()[s - 1];
    std::vector<std::uint64_t> deg(universe + 1, 0);
    for (const Edge& e : f.edges()) {
      bool hits_anchor = false;
      for (VertexId v : e.vertices())
        if (anchor_rank[v] != 0) {
          hits_anchor = true;
          break;
        }
      if (hits_anchor) continue;
      for (VertexId v : e.vertices()) ++deg[v];
    }
    VertexId x = 0;
    for (VertexId v = 1; v <= universe; ++v)
      if (deg[v] > (x == 0 ? 0 : deg[x])) x = v;
    const std::uint64_t need = t - s + 1;
    if (x == 0 || deg[x] < need)
      throw HypothesisViolated(
          "vertex-selection", s,
          "no vertex of residual degree >= " + std::to_string(need));
    anchors.push_back(x);
    anchor_rank[x] = s;
    trace.anchors.push_back({x, deg[x]});
  }

  // Phase 2: edges e_t, ..., e_1; lowest lexicographic qualifying edge.
  std::vector<std::optional<Edge>> chosen(t + 1);
  for (std::uint32_t s = t; s >= 1; --s) {
    const Hypergraph& f = family.members()[s - 1];
    const VertexId x = anchors[s - 1];
    std::optional<Edge> picked;
    for (std::uint32_t id : f.lex_order()) {
      const Edge& e = f.edges()[id];
      if (!e.contains(x)) continue;
      bool bad = false;
      for (VertexId v : e.vertices())
        if (anchor_rank[v] != 0 && anchor_rank[v] < s) {  // meets X_{s-1}
          bad = true;
          break;
        }
      if (bad) continue;
      for (std::uint32_t j = s + 1; j <= t && !bad; ++j)
        if (!e.disjoint_with(*chosen[j])) bad = true;
      if (bad) continue;
      picked = e;
      break;
    }
    if (!picked)
      throw HypothesisViolated("edge-selection", s,
                               "no edge through its anchor avoids the chosen edges");
    chosen[s] = std::move(picked);
    trace.edges_in_pick_order.push_back(*chosen[s]);
  }

  RainbowMatching m;
  for (std::uint32_t s = 1; s <= t; ++s) m.picks.push_back({s, *chosen[s]});
  if (!validate_rainbow(family, m).ok)
    throw std::logic_error("bipartite_greedy produced an invalid matching");
  return {std::move(m), std::move(trace)};
}

// --- recursive construction -------------------------------------------------

enum class RecursionCase { LinkRecurse, ExtendDisjoint, HighDegreeVertex, BaseBipartite, BaseT1 };

inline const char* to_string(RecursionCase c) {
  switch (c) {
    case RecursionCase::LinkRecurse: return "LINK-RECURSE";
    case RecursionCase::ExtendDisjoint: return "EXTEND-DISJOINT";
    case RecursionCase::HighDegreeVertex: return "HIGH-DEGREE-VERTEX";
    case RecursionCase::BaseBipartite: return "BASE-BIPARTITE";
    case RecursionCase::BaseT1: return "BASE-T1";
  }
  return "?";
}

struct RecursionEvent {
  std::uint32_t depth = 0;
  RecursionCase tag{};
  std::uint32_t t = 0, r = 0;
  std::vector<std::uint32_t> family_ids;      // processing order, original 1-based ids
  std::vector<VertexId> link_vertices;        // LinkRecurse: x_i aligned with family_ids
  VertexId pivot = 0;                         // HighDegreeVertex: the vertex x
  std::uint64_t high_degree_threshold = 0;    // bound defining "high degree" vertices
  std::uint64_t min_high_degree_count = 0;    // LinkRecurse: min_i |H_i|
  std::uint64_t last_high_degree_count = 0;   // d-cases: |H_last| (< t)
  std::uint64_t extend_threshold = 0;         // d-cases: max-degree split bound
  std::uint64_t last_max_degree = 0;          // d-cases: max degree in the last family
};

struct RecursiveResult {
  RainbowMatching matching;
  std::vector<RecursionEvent> events;
};

namespace detail {

struct WorkFam {
  std::uint32_t orig = 0;  // 1-based id in the input family
  std::vector<Edge> edges;  // kept sorted ascending
};

inline std::vector<std::uint64_t> fam_degrees(const WorkFam& f, std::uint32_t universe) {
  std::vector<std::uint64_t> deg(universe + 1, 0);
  for (const Edge& e : f.edges)
    for (VertexId v : e.vertices()) ++deg[v];
  return deg;
}

// System of distinct representatives via augmenting paths: one vertex per
// family, drawn from its candidate list, all distinct.
inline std::vector<VertexId> distinct_representatives(
    const std::vector<std::vector<VertexId>>& candidates) {
  const std::size_t t = candidates.size();
  std::unordered_map<VertexId, std::size_t> owner;  // vertex -> family
  std::vector<VertexId> rep(t, 0);

  std::function<bool(std::size_t, std::unordered_map<VertexId, char>&)> augment =
      [&](std::size_t i, std::unordered_map<VertexId, char>& visited) -> bool {
    for (VertexId v : candidates[i]) {
      if (visited.count(v)) continue;
      visited[v] = 1;
      auto it = owner.find(v);
      if (it == owner.end() || augment(it->second, visited)) {
        if (it != owner.end()) { /* reassigned below */ }
        owner[v] = i;
        rep[i] = v;
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < t; ++i) {
    std::unordered_map<VertexId, char> visited;
    if (!augment(i, visited)) return {};
  }
  return rep;
}

inline std::vector<char> covered_vertices(const std::vector<Pick>& picks,
                                          std::uint32_t universe) {
  std::vector<char> used(universe + 1, 0);
  for (const Pick& p : picks)
    for (VertexId v : p.edge.vertices()) used[v] = 1;
  return used;
}

inline bool edge_avoids(const Edge& e, const std::vector<char>& used) {
  for (VertexId v : e.vertices())
    if (used[v]) return false;
  return true;
}

inline std::vector<Pick> recursive_rainbow(std::vector<WorkFam> fams, std::uint32_t r,
                                           std::uint32_t depth, const PartiteStructure& ps,
                                           std::vector<RecursionEvent>& events) {
  const std::uint32_t t = static_cast<std::uint32_t>(fams.size());
  const std::uint32_t n = ps.n;

  RecursionEvent ev;
  ev.depth = depth;
  ev.t = t;
  ev.r = r;
  for (const WorkFam& f : fams) ev.family_ids.push_back(f.orig);

  if (t == 1) {
    ev.tag = RecursionCase::BaseT1;
    events.push_back(ev);
    if (fams[0].edges.empty())
      throw HypothesisViolated("base-t1", fams[0].orig, "family is empty");
    return {{fams[0].orig, fams[0].edges.front()}};
  }

  if (r == 2) {
    ev.tag = RecursionCase::BaseBipartite;
    events.push_back(ev);
    std::vector<Hypergraph> members;
    for (const WorkFam& f : fams)
      members.emplace_back(ps.universe(), 2, f.edges, ps);
    GreedyResult g = bipartite_greedy(Family(std::move(members)));
    std::vector<Pick> picks;
    for (const Pick& p : g.matching.picks) picks.push_back({fams[p.family - 1].orig, p.edge});
    return picks;
  }

  const std::uint64_t hd_threshold = to_u64(BigInt(2) * (t - 1) * ipow(n, r - 2));
  std::vector<std::vector<VertexId>> high(t);
  for (std::uint32_t i = 0; i < t; ++i) {
    const auto deg = fam_degrees(fams[i], ps.universe());
    for (VertexId v = 1; v <= ps.universe(); ++v)
      if (deg[v] > hd_threshold) high[i].push_back(v);
  }

  std::uint32_t weak = t;  // first family with < t high-degree vertices
  std::uint64_t min_count = std::numeric_limits<std::uint64_t>::max();
  for (std::uint32_t i = 0; i < t; ++i) {
    min_count = std::min<std::uint64_t>(min_count, high[i].size());
    if (weak == t && high[i].size() < t) weak = i;
  }

  if (weak == t) {
    // every family is rich in high-degree vertices: peel one representative
    // from each and recurse on the links
    ev.tag = RecursionCase::LinkRecurse;
    ev.high_degree_threshold = hd_threshold;
    ev.min_high_degree_count = min_count;
    std::vector<VertexId> reps = distinct_representatives(high);
    if (reps.empty())
      throw std::logic_error("distinct representatives must exist when all |H_i| >= t");
    ev.link_vertices = reps;
    events.push_back(ev);

    std::vector<char> in_x(ps.universe() + 1, 0);
    for (VertexId v : reps) in_x[v] = 1;

    std::vector<WorkFam> links(t);
    for (std::uint32_t i = 0; i < t; ++i) {
      links[i].orig = fams[i].orig;
      for (const Edge& e : fams[i].edges) {
        if (!e.contains(reps[i])) continue;
        bool hits_other = false;
        for (VertexId v : e.vertices())
          if (in_x[v] && v != reps[i]) {
            hits_other = true;
            break;
          }
        if (hits_other) continue;
        std::vector<VertexId> vs;
        for (VertexId v : e.vertices())
          if (v != reps[i]) vs.push_back(v);
        links[i].edges.emplace_back(std::move(vs));
      }
      std::sort(links[i].edges.begin(), links[i].edges.end());
    }

    std::vector<Pick> picks = recursive_rainbow(std::move(links), r - 1, depth + 1, ps, events);
    std::unordered_map<std::uint32_t, VertexId> attach;
    for (std::uint32_t i = 0; i < t; ++i) attach[fams[i].orig] = reps[i];
    for (Pick& p : picks) {
      std::vector<VertexId> vs(p.edge.vertices().begin(), p.edge.vertices().end());
      vs.push_back(attach.at(p.family));
      p.edge = Edge(std::move(vs));
    }
    return picks;
  }

  // reindex: the weak family is processed last
  std::vector<WorkFam> rest;
  for (std::uint32_t i = 0; i < t; ++i)
    if (i != weak) rest.push_back(fams[i]);
  WorkFam last = std::move(fams[weak]);

  ev.family_ids.clear();
  for (const WorkFam& f : rest) ev.family_ids.push_back(f.orig);
  ev.family_ids.push_back(last.orig);
  ev.high_degree_threshold = hd_threshold;
  ev.last_high_degree_count = high[weak].size();
  ev.extend_threshold = to_u64(BigInt(t - 1) * (r - 1) * ipow(n, r - 2));

  const auto last_deg = fam_degrees(last, ps.universe());
  VertexId pivot = 0;
  std::uint64_t max_deg = 0;
  for (VertexId v = 1; v <= ps.universe(); ++v)
    if (last_deg[v] > max_deg) {
      max_deg = last_deg[v];
      pivot = v;
    }
  ev.last_max_degree = max_deg;

  if (max_deg <= ev.extend_threshold) {
    // counting guarantees an edge of the weak family avoiding the partial
    // matching; find it by scan
    ev.tag = RecursionCase::ExtendDisjoint;
    events.push_back(ev);
    std::vector<Pick> picks = recursive_rainbow(std::move(rest), r, depth + 1, ps, events);
    const auto used = covered_vertices(picks, ps.universe());
    for (const Edge& e : last.edges)
      if (edge_avoids(e, used)) {
        picks.push_back({last.orig, e});
        return picks;
      }
    throw HypothesisViolated("extend-disjoint", last.orig,
                             "no edge avoids the partial matching");
  }

  // a vertex of large degree: remove its edges from the other families,
  // solve them, then extend through it
  ev.tag = RecursionCase::HighDegreeVertex;
  ev.pivot = pivot;
  events.push_back(ev);
  std::vector<WorkFam> pruned;
  for (const WorkFam& f : rest) {
    WorkFam g;
    g.orig = f.orig;
    for (const Edge& e : f.edges)
      if (!e.contains(pivot)) g.edges.push_back(e);
    pruned.push_back(std::move(g));
  }
  std::vector<Pick> picks = recursive_rainbow(std::move(pruned), r, depth + 1, ps, events);
  const auto used = covered_vertices(picks, ps.universe());
  for (const Edge& e : last.edges) {
    if (!e.contains(pivot)) continue;
    bool ok = true;
    for (VertexId v : e.vertices())
      if (v != pivot && used[v]) {
        ok = false;
        break;
      }
    if (ok && !used[pivot]) {
      picks.push_back({last.orig, e});
      return picks;
    }
  }
  throw HypothesisViolated("high-degree-extend", last.orig,
                           "no edge through the pivot avoids the partial matching");
}

}  // namespace detail

inline RecursiveResult partite_recursive(const Family& family) {
  if (!family.partite())
    throw std::invalid_argument("partite_recursive: family must be partite");
  const PartiteStructure ps = *family.partite();
  const std::uint32_t r = family.members().front().uniformity();
  if (r < 2)
    throw std::invalid_argument("partite_recursive: members must be at least 2-uniform");
  for (const Hypergraph& h : family.members())
    if (h.uniformity() != r)
      throw std::invalid_argument(
          "partite_recursive: members must share one uniformity (mixed r is not supported)");
  // every member must live on a fixed set of r parts
  for (std::uint32_t i = 0; i < family.size(); ++i) {
    const Hypergraph& h = family.members()[i];
    std::optional<std::vector<std::uint32_t>> parts;
    for (const Edge& e : h.edges()) {
      std::vector<std::uint32_t> p;
      for (VertexId v : e.vertices()) p.push_back(ps.part_of(v));
      std::sort(p.begin(), p.end());
      if (!parts)
        parts = std::move(p);
      else if (*parts != p)
        throw std::invalid_argument("partite_recursive: family " + std::to_string(i + 1) +
                                    " does not live on a fixed set of parts");
    }
  }

  std::vector<detail::WorkFam> fams(family.size());
  for (std::uint32_t i = 0; i < family.size(); ++i) {
    fams[i].orig = i + 1;
    fams[i].edges = family.members()[i].edges();
    std::sort(fams[i].edges.begin(), fams[i].edges.end());
  }

  RecursiveResult result;
  std::vector<Pick> picks = detail::recursive_rainbow(std::move(fams), r, 0, ps, result.events);
  std::sort(picks.begin(), picks.end(),
            [](const Pick& a, const Pick& b) { return a.family < b.family; });
  result.matching.picks = std::move(picks);
  if (!validate_rainbow(family, result.matching).ok)
    throw std::logic_error("partite_recursive produced an invalid matching");
  return result;
}

// --- randomized block certification ------------------------------------------

struct CertifyOutcome {
  bool success = false;
  std::vector<std::uint32_t> indices;  // winning member indices, ascending, 1-based
  std::vector<Edge> blocks;            // blocks[j] is an edge of member indices[j]
  std::uint32_t trials = 0;            // trials consumed
};

namespace detail {

// One part-preserving permutation sample; returns the indices whose block
// landed inside their family, and all n blocks.
inline std::vector<std::uint32_t> permutation_trial(const Family& family, Rng& rng,
                                                    std::vector<Edge>* blocks_out) {
  const PartiteStructure& ps = *family.partite();
  const std::uint32_t k = ps.k, n = ps.n;
  std::vector<std::vector<std::uint32_t>> slot(k);
  for (std::uint32_t p = 0; p < k; ++p) {
    slot[p].resize(n);
    for (std::uint32_t i = 0; i < n; ++i) slot[p][i] = i + 1;
    rng.shuffle(slot[p]);
  }
  std::vector<std::uint32_t> hits;
  std::vector<char> seen(ps.universe() + 1, 0);
  for (std::uint32_t i = 1; i <= n; ++i) {
    std::vector<VertexId> vs(k);
    for (std::uint32_t p = 1; p <= k; ++p) {
      vs[p - 1] = ps.vertex_in(p, slot[p - 1][i - 1]);
      if (ps.part_of(vs[p - 1]) != p)
        throw std::logic_error("permutation does not preserve parts");
    }
    Edge block(std::move(vs));
    for (VertexId v : block.vertices()) {
      if (seen[v]) throw std::logic_error("blocks are not disjoint");
      seen[v] = 1;
    }
    if (family.members()[i - 1].contains(block)) hits.push_back(i);
    if (blocks_out) blocks_out->push_back(std::move(block));
  }
  return hits;
}

inline void check_certify_input(const Family& family) {
  if (!family.partite())
    throw std::invalid_argument("random_permutation_certify: family must be partite");
  const PartiteStructure& ps = *family.partite();
  for (const Hypergraph& h : family.members())
    if (h.uniformity() != ps.k)
      throw std::invalid_argument(
          "random_permutation_certify: members must be k-partite k-graphs");
  if (family.size() != ps.n)
    throw std::invalid_argument(
        "random_permutation_certify: needs exactly one family per block (n = part size)");
}

}  // namespace detail

inline CertifyOutcome random_permutation_certify(const Family& family, std::uint32_t t,
                                                 std::uint32_t max_trials,
                                                 std::uint64_t seed) {
  detail::check_certify_input(family);
  const std::uint32_t n = family.partite()->n;
  if (t < 1 || t > n)
    throw std::invalid_argument("random_permutation_certify: need 1 <= t <= n");

  CertifyOutcome out;
  for (std::uint32_t trial = 0; trial < max_trials; ++trial) {
    Rng rng(mix_seed(seed, trial));
    std::vector<Edge> blocks;
    std::vector<std::uint32_t> hits = detail::permutation_trial(family, rng, &blocks);
    if (hits.size() >= t) {
      out.success = true;
      out.trials = trial + 1;
      for (std::uint32_t j = 0; j < t; ++j) {
        out.indices.push_back(hits[j]);
        out.blocks.push_back(blocks[hits[j] - 1]);
      }
      return out;
    }
  }
  out.success = false;
  out.trials = max_trials;
  return out;
}

struct BlockStats {
  std::uint32_t trials = 0;
  double mean = 0.0;      // empirical mean of the per-trial hit count
  double stddev = 0.0;    // empirical standard deviation
  double expected = 0.0;  // sum of |F_i| / n^k
  double standard_error() const { return trials > 0 ? stddev / std::sqrt(trials) : 0.0; }
};

inline BlockStats block_success_stats(const Family& family, std::uint32_t trials,
                                      std::uint64_t seed) {
  detail::check_certify_input(family);
  const PartiteStructure& ps = *family.partite();
  BlockStats stats;
  stats.trials = trials;
  double sum = 0.0, sumsq = 0.0;
  for (std::uint32_t trial = 0; trial < trials; ++trial) {
    Rng rng(mix_seed(seed, trial));
    const double x = static_cast<double>(detail::permutation_trial(family, rng, nullptr).size());
    sum += x;
    sumsq += x * x;
  }
  if (trials > 0) {
    stats.mean = sum / trials;
    const double var = std::max(0.0, sumsq / trials - stats.mean * stats.mean);
    stats.stddev = std::sqrt(var);
  }
  const double total = std::pow(static_cast<double>(ps.n), static_cast<double>(ps.k));
  for (const Hypergraph& h : family.members())
    stats.expected += static_cast<double>(h.edge_count()) / total;
  return stats;
}

}  // namespace rainbow

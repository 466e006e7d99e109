#pragma once

// Local search for large families without a rainbow matching: hill-climb on
// the size product with single-edge additions, perturb on plateaus, restart
// from fresh seeds. Output is a lower-bound witness; optimality is never
// claimed.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rainbow/generators.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solver.hpp"
#include "rainbow/types.hpp"

namespace rainbow {

struct ExtremalConfig {
  std::uint64_t eval_budget = 5000;  // solver invocations allowed
  std::uint64_t seed = 0;
  bool relax_guards = false;  // lift the n <= 8, k <= 3, t <= 3 defaults
};

struct ExtremalResult {
  std::optional<Family> best;  // family with no rainbow matching
  BigInt product = 0;
  std::uint64_t evaluations = 0;
  bool budget_exhausted = false;  // stopped while improving moves may remain
  bool verified = false;          // best re-checked NoMatching at the end
};

namespace detail {

struct ExtremalState {
  std::vector<std::vector<Edge>> pool;       // candidate edges per member
  std::vector<std::vector<char>> selected;   // parallel to pool
  std::vector<std::uint64_t> sizes;

  Family to_family(std::uint32_t n, const std::vector<std::uint32_t>& ks) const {
    std::vector<Hypergraph> members;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::vector<Edge> edges;
      for (std::size_t e = 0; e < pool[i].size(); ++e)
        if (selected[i][e]) edges.push_back(pool[i][e]);
      members.emplace_back(n, ks[i], std::move(edges));
    }
    return Family(std::move(members));
  }

  BigInt product() const {
    BigInt p = 1;
    for (std::uint64_t s : sizes) p *= s;
    return p;
  }
};

}  // namespace detail

inline ExtremalResult extremal_search(std::uint32_t n, const std::vector<std::uint32_t>& ks,
                                      const ExtremalConfig& cfg = {}) {
  const std::uint32_t t = static_cast<std::uint32_t>(ks.size());
  if (t < 1) throw std::invalid_argument("extremal_search: need at least one family");
  for (std::uint32_t k : ks)
    if (k < 1 || k > n) throw std::invalid_argument("extremal_search: need 1 <= k_i <= n");
  if (!cfg.relax_guards && (n > 8 || t > 3 ||
                            *std::max_element(ks.begin(), ks.end()) > 3))
    throw std::invalid_argument(
        "extremal_search: parameters beyond the default guard (n <= 8, k <= 3, t <= 3)");

  ExtremalResult result;

  if (t == 1) {
    // any nonempty single family admits a rainbow matching, so the best
    // blocking family is empty
    result.best = Family({Hypergraph(n, ks[0], {})});
    result.product = 0;
    result.verified = true;
    return result;
  }

  detail::ExtremalState state;
  state.pool.resize(t);
  state.selected.resize(t);
  state.sizes.assign(t, 0);
  for (std::uint32_t i = 0; i < t; ++i) {
    state.pool[i] = gen_complete(n, ks[i]).edges();
    state.selected[i].assign(state.pool[i].size(), 0);
  }

  Rng rng(mix_seed(cfg.seed, 0xE57));
  std::uint64_t evals = 0;
  auto blocked = [&](const detail::ExtremalState& s) {
    ++evals;
    return find_rainbow(s.to_family(n, ks)).verdict == Verdict::NoMatching;
  };

  BigInt best_product = 0;
  std::optional<detail::ExtremalState> best_state;
  bool out_of_budget = false;

  auto climb = [&]() {
    // accept-first passes over shuffled single-edge additions
    bool improved = true;
    while (improved) {
      improved = false;
      std::vector<std::pair<std::uint32_t, std::uint32_t>> moves;
      for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t e = 0; e < state.pool[i].size(); ++e)
          if (!state.selected[i][e]) moves.push_back({i, e});
      rng.shuffle(moves);
      for (auto [i, e] : moves) {
        if (evals >= cfg.eval_budget) {
          out_of_budget = true;
          return;
        }
        state.selected[i][e] = 1;
        ++state.sizes[i];
        if (blocked(state)) {
          improved = true;
        } else {
          state.selected[i][e] = 0;
          --state.sizes[i];
        }
      }
    }
  };

  auto restart = [&]() {
    const VertexId v = static_cast<VertexId>(rng.between(1, n));
    for (std::uint32_t i = 0; i < t; ++i) {
      std::fill(state.selected[i].begin(), state.selected[i].end(), 0);
      std::vector<std::uint32_t> through;
      for (std::uint32_t e = 0; e < state.pool[i].size(); ++e)
        if (state.pool[i][e].contains(v)) through.push_back(e);
      state.selected[i][through[rng.below(through.size())]] = 1;
      state.sizes[i] = 1;
    }
  };

  restart();
  std::uint32_t fruitless = 0;
  while (!out_of_budget && evals < cfg.eval_budget) {
    climb();
    if (state.product() > best_product) {
      best_product = state.product();
      best_state = state;
      fruitless = 0;
    } else {
      ++fruitless;
    }
    if (out_of_budget) break;
    if (fruitless >= 3) {
      restart();
      fruitless = 0;
      continue;
    }
    // plateau perturbation: drop one random selected edge
    std::vector<std::pair<std::uint32_t, std::uint32_t>> present;
    for (std::uint32_t i = 0; i < t; ++i)
      for (std::uint32_t e = 0; e < state.pool[i].size(); ++e)
        if (state.selected[i][e] && state.sizes[i] > 1) present.push_back({i, e});
    if (present.empty()) {
      restart();
      continue;
    }
    auto [i, e] = present[rng.below(present.size())];
    state.selected[i][e] = 0;
    --state.sizes[i];
  }

  result.evaluations = evals;
  result.budget_exhausted = out_of_budget;
  if (best_state) {
    Family fam = best_state->to_family(n, ks);
    result.product = best_product;
    // certify the witness with the independent oracle when feasible
    long double prod = 1.0L;
    for (const Hypergraph& h : fam.members()) prod *= h.edge_count();
    if (prod <= 10'000'000.0L)
      result.verified = brute_force_rainbow(fam).verdict == Verdict::NoMatching;
    else
      result.verified = find_rainbow(fam).verdict == Verdict::NoMatching;
    result.best = std::move(fam);
  }
  return result;
}

}  // namespace rainbow

// Pareto sets over (objective, finish time), both minimized.

#ifndef LATESCHED_PARETO_HPP
#define LATESCHED_PARETO_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "latesched/model.hpp"

namespace latesched {

struct Candidate {
  Permutation order;
  double objective = 0.0;
  double finish = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Canonical order: finish, then objective, then lexicographic job order.
bool canonical_less(const Candidate& a, const Candidate& b);

// No item dominates another; items are in canonical order.
struct ParetoFrontier {
  std::vector<Candidate> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
};

// a <= b in both criteria and strictly better in at least one.
inline bool dominates(double a_objective, double a_finish, double b_objective,
                      double b_finish) {
  return a_objective <= b_objective && a_finish <= b_finish &&
         (a_objective < b_objective || a_finish < b_finish);
}

inline bool dominates(const Candidate& a, const Candidate& b) {
  return dominates(a.objective, a.finish, b.objective, b.finish);
}

// Keeps every candidate no other candidate dominates. Candidates sharing the
// same (objective, finish) are all kept.
ParetoFrontier pareto_filter(std::vector<Candidate> candidates);

struct ThinOptions {
  // Keep the minimum-objective item even when the stride skips it.
  bool retain_min_objective = true;
};

// Reduces a frontier to at most max_kept items: sort canonically, then take
// indices 0, step, 2*step, ... with step = floor(L / max_kept). Identity when
// L <= max_kept. Throws std::invalid_argument when max_kept < 1.
ParetoFrontier thin(ParetoFrontier frontier, std::size_t max_kept,
                    ThinOptions options = {});

// Same rule over an arbitrary candidate list (not necessarily a frontier).
std::vector<Candidate> thin_candidates(std::vector<Candidate> items,
                                       std::size_t max_kept,
                                       ThinOptions options = {});

// The thinning rule over count abstract items. canonical(i, j) orders items
// as canonical_less does; best(i, j) orders by objective, then finish, then
// job order. Returns the kept item indices in canonical order.
template <typename CanonicalLess, typename BestLess>
std::vector<std::size_t> thin_indices(std::size_t count, std::size_t max_kept,
                                      CanonicalLess canonical, BestLess best,
                                      ThinOptions options = {}) {
  if (max_kept < 1) throw std::invalid_argument("thin: max_kept must be >= 1");
  std::vector<std::size_t> sorted(count);
  for (std::size_t i = 0; i < count; ++i) sorted[i] = i;
  std::sort(sorted.begin(), sorted.end(), canonical);
  if (count <= max_kept) return sorted;

  const std::size_t step = count / max_kept;
  std::vector<std::size_t> picks;
  picks.reserve(max_kept);
  for (std::size_t idx = 0; idx < count && picks.size() < max_kept; idx += step) {
    picks.push_back(idx);
  }
  if (options.retain_min_objective) {
    std::size_t top = 0;
    for (std::size_t idx = 1; idx < count; ++idx) {
      if (best(sorted[idx], sorted[top])) top = idx;
    }
    if (std::find(picks.begin(), picks.end(), top) == picks.end()) {
      if (picks.size() == max_kept) picks.pop_back();
      picks.push_back(top);
      std::sort(picks.begin(), picks.end());
    }
  }
  for (std::size_t& idx : picks) idx = sorted[idx];
  return picks;
}

// Positions in items of the candidates thin_candidates would keep, in
// canonical order.
std::vector<std::size_t> thin_selection(const std::vector<Candidate>& items,
                                        std::size_t max_kept, ThinOptions options = {});

}  // namespace latesched

#endif  // LATESCHED_PARETO_HPP

#include <algorithm>
#include <chrono>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "latesched/heuristics.hpp"
#include "latesched/pareto.hpp"

namespace latesched {
namespace {

// Calls visit(state) for every ordering of pool[depth..] appended to the
// current sequence. Shared prefixes are evaluated once. The path is only
// maintained when the visitor needs it.
template <bool kTrackPath, typename Visit>
void for_each_ordering(const Instance& inst, std::vector<JobIndex>& pool,
                       std::size_t depth, Permutation& path, PrefixState state,
                       Visit& visit) {
  if (depth == pool.size()) {
    visit(state);
    return;
  }
  for (std::size_t i = depth; i < pool.size(); ++i) {
    std::swap(pool[depth], pool[i]);
    if constexpr (kTrackPath) path.push_back(pool[depth]);
    for_each_ordering<kTrackPath>(inst, pool, depth + 1, path,
                                  extend(state, inst.jobs[pool[depth]], inst.penalties),
                                  visit);
    if constexpr (kTrackPath) path.pop_back();
    std::swap(pool[depth], pool[i]);
  }
}

struct BranchPoint {
  PrefixState totals;
  std::size_t branch;
};

// Adds p to the local frontier stored in points[begin..]: distinct
// nondominated (objective, finish) points reached through one branch.
void add_local(std::vector<BranchPoint>& points, std::size_t begin, PrefixState p,
               std::size_t branch) {
  for (std::size_t i = begin; i < points.size(); ++i) {
    const PrefixState& q = points[i].totals;
    if (q.objective <= p.objective && q.finish <= p.finish) return;
  }
  const auto first = points.begin() + static_cast<std::ptrdiff_t>(begin);
  points.erase(std::remove_if(first, points.end(),
                              [&](const BranchPoint& q) {
                                return p.objective <= q.totals.objective &&
                                       p.finish <= q.totals.finish;
                              }),
               points.end());
  points.push_back({p, branch});
}

// A fixed prefix with its totals and the visible jobs it has not used yet,
// kept in preliminary order.
struct Prefix {
  Permutation order;
  PrefixState totals;
  std::vector<JobIndex> pool;
};

}  // namespace

void check_params(const SelectionParams& params) {
  if (params.kept_permutations && *params.kept_permutations < 1) {
    throw std::invalid_argument("selection: kept permutations must be >= 1");
  }
  if (params.window < 1) {
    throw std::invalid_argument("selection: window must be >= 1");
  }
  if (params.window > kMaxSelectionWindow && !params.allow_large_window) {
    throw std::invalid_argument("selection: window " + std::to_string(params.window) +
                                " exceeds " + std::to_string(kMaxSelectionWindow) +
                                " (override explicitly to allow)");
  }
}

ScheduleResult selection_schedule(const Instance& inst, const SelectionParams& params) {
  check_params(params);
  if (inst.size() == 0) throw std::invalid_argument("selection: empty instance");
  const auto t0 = std::chrono::steady_clock::now();

  ScheduleResult result;
  const Permutation prelim = dispatch_order(inst, params.preliminary_rule);
  const std::size_t n = prelim.size();
  const std::size_t window = std::min(params.window, n);
  const std::size_t stages = n - window + 1;

  std::vector<Prefix> prefixes(1);
  prefixes[0].pool.assign(prelim.begin(), prelim.begin() + static_cast<std::ptrdiff_t>(window));

  // Branch b continues prefix branch_key[b].first with job branch_key[b].second.
  std::vector<std::pair<std::size_t, JobIndex>> branch_key;
  std::vector<BranchPoint> points;
  Permutation no_path;

  for (std::size_t stage = 0; stage < stages; ++stage) {
    const bool last_stage = stage + 1 == stages;
    std::uint64_t evaluated = 0;
    branch_key.clear();
    points.clear();

    PrefixState best_totals{std::numeric_limits<double>::infinity(), 0.0};
    Permutation best_order;

    for (std::size_t pi = 0; pi < prefixes.size(); ++pi) {
      std::vector<JobIndex>& pool = prefixes[pi].pool;  // restored after each enumeration
      const PrefixState base = prefixes[pi].totals;

      if (last_stage) {
        Permutation path = prefixes[pi].order;
        auto visit = [&](PrefixState st) {
          ++evaluated;
          if (st.objective < best_totals.objective ||
              (st.objective == best_totals.objective &&
               (st.finish < best_totals.finish ||
                (st.finish == best_totals.finish && path < best_order)))) {
            best_totals = st;
            best_order = path;
          }
        };
        for_each_ordering<true>(inst, pool, 0, path, base, visit);
        continue;
      }

      // Enumerate per leading job so each branch has its own local frontier.
      for (std::size_t lead = 0; lead < pool.size(); ++lead) {
        std::swap(pool[0], pool[lead]);
        const JobIndex first = pool[0];
        const std::size_t branch = branch_key.size();
        const std::size_t begin = points.size();
        auto visit = [&](PrefixState st) {
          ++evaluated;
          add_local(points, begin, st, branch);
        };
        for_each_ordering<false>(inst, pool, 1, no_path,
                                 extend(base, inst.jobs[first], inst.penalties), visit);
        std::swap(pool[0], pool[lead]);
        branch_key.emplace_back(pi, first);
      }
    }
    result.stage_evaluations.push_back(evaluated);
    result.evaluations_count += evaluated;

    if (last_stage) {
      result.best = evaluate(inst, best_order);
      break;
    }

    // Global Pareto filter over all complete stage sequences (ties kept).
    std::sort(points.begin(), points.end(), [](const BranchPoint& a, const BranchPoint& b) {
      if (a.totals.finish != b.totals.finish) return a.totals.finish < b.totals.finish;
      return a.totals.objective < b.totals.objective;
    });
    // Surviving branches with their best point, objective first.
    std::vector<std::optional<PrefixState>> survivor(branch_key.size());
    double best_before = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size();) {
      std::size_t end = i;
      while (end < points.size() && points[end].totals.finish == points[i].totals.finish) ++end;
      const double run_min = points[i].totals.objective;
      if (run_min < best_before) {
        for (std::size_t k = i; k < end && points[k].totals.objective == run_min; ++k) {
          auto& cur = survivor[points[k].branch];
          const PrefixState& cand = points[k].totals;
          if (!cur || cand.objective < cur->objective ||
              (cand.objective == cur->objective && cand.finish < cur->finish)) {
            cur = cand;
          }
        }
        best_before = run_min;
      }
      i = end;
    }

    std::vector<std::size_t> alive;
    for (std::size_t branch = 0; branch < survivor.size(); ++branch) {
      if (survivor[branch]) alive.push_back(branch);
    }
    std::vector<std::size_t> kept(alive.size());
    for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
    if (params.kept_permutations && alive.size() > *params.kept_permutations) {
      // Prefixes share one length, so a branch's job order compares as
      // (rank of its prefix, next job).
      std::vector<std::size_t> by_order(prefixes.size());
      for (std::size_t i = 0; i < by_order.size(); ++i) by_order[i] = i;
      std::sort(by_order.begin(), by_order.end(), [&](std::size_t a, std::size_t b) {
        return prefixes[a].order < prefixes[b].order;
      });
      std::vector<std::size_t> rank(prefixes.size());
      for (std::size_t i = 0; i < by_order.size(); ++i) rank[by_order[i]] = i;
      auto order_less = [&](std::size_t a, std::size_t b) {
        const auto& [pa, fa] = branch_key[alive[a]];
        const auto& [pb, fb] = branch_key[alive[b]];
        return rank[pa] != rank[pb] ? rank[pa] < rank[pb] : fa < fb;
      };
      auto canonical = [&](std::size_t a, std::size_t b) {
        const PrefixState& x = *survivor[alive[a]];
        const PrefixState& y = *survivor[alive[b]];
        if (x.finish != y.finish) return x.finish < y.finish;
        if (x.objective != y.objective) return x.objective < y.objective;
        return order_less(a, b);
      };
      auto best = [&](std::size_t a, std::size_t b) {
        const PrefixState& x = *survivor[alive[a]];
        const PrefixState& y = *survivor[alive[b]];
        if (x.objective != y.objective) return x.objective < y.objective;
        if (x.finish != y.finish) return x.finish < y.finish;
        return order_less(a, b);
      };
      kept = thin_indices(alive.size(), *params.kept_permutations, canonical, best);
    }

    const JobIndex incoming = prelim[window + stage];
    std::vector<Prefix> following;
    following.reserve(kept.size());
    for (std::size_t idx : kept) {
      const auto& [pi, first] = branch_key[alive[idx]];
      const Prefix& parent = prefixes[pi];
      Prefix child{{}, extend(parent.totals, inst.jobs[first], inst.penalties), {}};
      child.order.reserve(parent.order.size() + 1);
      child.order = parent.order;
      child.order.push_back(first);
      child.pool.reserve(window);
      for (JobIndex j : parent.pool) {
        if (j != first) child.pool.push_back(j);
      }
      child.pool.push_back(incoming);
      following.push_back(std::move(child));
    }
    prefixes = std::move(following);
  }

  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace latesched

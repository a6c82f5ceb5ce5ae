#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>

#include "latesched/heuristics.hpp"
#include "latesched/pareto.hpp"

namespace latesched {
namespace {

// A retained sequence plus the running totals after each of its prefixes,
// so re-evaluation after an insertion starts at the insertion point.
struct Sequence {
  Permutation order;
  std::vector<PrefixState> states;  // states[i]: totals after order[0..i)
};

Sequence make_sequence(const Instance& inst, Permutation order) {
  Sequence seq;
  seq.states.reserve(order.size() + 1);
  seq.states.push_back({});
  for (JobIndex j : order) {
    seq.states.push_back(extend(seq.states.back(), inst.jobs[j], inst.penalties));
  }
  seq.order = std::move(order);
  return seq;
}

struct Child {
  std::size_t parent;
  std::size_t position;
  PrefixState totals;
};

// Removes children dominated on (objective, finish); ties are kept.
std::vector<Child> nondominated(std::vector<Child> children) {
  std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
    if (a.totals.finish != b.totals.finish) return a.totals.finish < b.totals.finish;
    return a.totals.objective < b.totals.objective;
  });
  std::vector<Child> out;
  double best_before = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < children.size()) {
    std::size_t end = i;
    while (end < children.size() && children[end].totals.finish == children[i].totals.finish) {
      ++end;
    }
    const double run_min = children[i].totals.objective;
    if (run_min < best_before) {
      for (std::size_t k = i; k < end && children[k].totals.objective == run_min; ++k) {
        out.push_back(children[k]);
      }
      best_before = run_min;
    }
    i = end;
  }
  return out;
}

Permutation insert_at(const Permutation& base, std::size_t position, JobIndex job) {
  Permutation out;
  out.reserve(base.size() + 1);
  out.insert(out.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(position));
  out.push_back(job);
  out.insert(out.end(), base.begin() + static_cast<std::ptrdiff_t>(position), base.end());
  return out;
}

// All orderings of `jobs`, evaluated depth-first so each shared prefix is
// computed once.
void enumerate_orderings(const Instance& inst, std::vector<JobIndex>& pool,
                         Permutation& current, PrefixState state,
                         std::vector<Candidate>& out) {
  if (pool.empty()) {
    out.push_back({current, state.objective, state.finish});
    return;
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const JobIndex j = pool[i];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    current.push_back(j);
    enumerate_orderings(inst, pool, current, extend(state, inst.jobs[j], inst.penalties), out);
    current.pop_back();
    pool.insert(pool.begin() + static_cast<std::ptrdiff_t>(i), j);
  }
}

const Candidate& best_of(const std::vector<Candidate>& items) {
  return *std::min_element(items.begin(), items.end(),
                           [](const Candidate& a, const Candidate& b) {
                             if (a.objective != b.objective) return a.objective < b.objective;
                             if (a.finish != b.finish) return a.finish < b.finish;
                             return a.order < b.order;
                           });
}

}  // namespace

void check_params(const InsertionParams& params) {
  if (params.kept_permutations && *params.kept_permutations < 1) {
    throw std::invalid_argument("insertion: kept permutations must be >= 1");
  }
  if (params.insertion_slots && *params.insertion_slots < 1) {
    throw std::invalid_argument("insertion: insertion slots must be >= 1");
  }
  if (params.seed_window < 1) {
    throw std::invalid_argument("insertion: seed window must be >= 1");
  }
  if (params.seed_window > kMaxSeedWindow && !params.allow_large_window) {
    throw std::invalid_argument("insertion: seed window " +
                                std::to_string(params.seed_window) + " exceeds " +
                                std::to_string(kMaxSeedWindow) +
                                " (override explicitly to allow)");
  }
}

ScheduleResult insertion_schedule(const Instance& inst, const InsertionParams& params) {
  check_params(params);
  if (inst.size() == 0) throw std::invalid_argument("insertion: empty instance");
  const auto t0 = std::chrono::steady_clock::now();

  ScheduleResult result;
  const Permutation prelim = dispatch_order(inst, params.preliminary_rule);
  const std::size_t n = prelim.size();
  const std::size_t seed = std::min(params.seed_window, n);
  const std::size_t slots = params.insertion_slots.value_or(n);

  auto reduce = [&](std::vector<Candidate> cands) {
    ParetoFrontier frontier = pareto_filter(std::move(cands));
    if (params.kept_permutations) frontier = thin(std::move(frontier), *params.kept_permutations);
    return frontier;
  };

  // Seed stage: every ordering of the first `seed` preliminary jobs.
  std::vector<Candidate> seeds;
  {
    std::vector<JobIndex> pool(prelim.begin(), prelim.begin() + static_cast<std::ptrdiff_t>(seed));
    Permutation current;
    enumerate_orderings(inst, pool, current, {}, seeds);
  }
  result.stage_evaluations.push_back(seeds.size());
  result.evaluations_count += seeds.size();

  if (seed == n) {
    result.best = evaluate(inst, best_of(pareto_filter(std::move(seeds)).items).order);
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }

  std::vector<Sequence> retained;
  for (Candidate& c : reduce(std::move(seeds)).items) {
    retained.push_back(make_sequence(inst, std::move(c.order)));
  }

  for (std::size_t m = seed; m < n; ++m) {
    const JobIndex job = prelim[m];
    const bool last_stage = m + 1 == n;

    std::vector<Child> children;
    for (std::size_t s = 0; s < retained.size(); ++s) {
      const Sequence& seq = retained[s];
      const std::size_t len = seq.order.size();
      const std::size_t first_slot = len + 1 > slots ? len + 1 - slots : 0;
      // Last slot first; every slot reuses the totals of its untouched prefix.
      for (std::size_t pos = len + 1; pos-- > first_slot;) {
        PrefixState st = extend(seq.states[pos], inst.jobs[job], inst.penalties);
        for (std::size_t k = pos; k < len; ++k) {
          st = extend(st, inst.jobs[seq.order[k]], inst.penalties);
        }
        children.push_back({s, pos, st});
      }
    }
    result.stage_evaluations.push_back(children.size());
    result.evaluations_count += children.size();

    std::vector<Candidate> survivors;
    for (const Child& c : nondominated(std::move(children))) {
      survivors.push_back({insert_at(retained[c.parent].order, c.position, job),
                           c.totals.objective, c.totals.finish});
    }

    if (last_stage) {
      result.best = evaluate(inst, best_of(survivors).order);
      break;
    }

    std::vector<Sequence> next;
    for (Candidate& c : reduce(std::move(survivors)).items) {
      next.push_back(make_sequence(inst, std::move(c.order)));
    }
    retained = std::move(next);
  }

  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace latesched

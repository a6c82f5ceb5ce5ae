#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>

#include "latesched/exact.hpp"

namespace latesched {
namespace {

void check_size(const Instance& inst, std::size_t limit, bool allow, const char* who) {
  if (inst.size() == 0) throw std::invalid_argument(std::string(who) + ": empty instance");
  if (inst.size() > limit && !allow) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(inst.size()) +
                                " jobs exceeds the limit of " + std::to_string(limit) +
                                " (override explicitly to allow)");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Lexicographic depth-first enumeration over the unused jobs.
class Enumerator {
 public:
  Enumerator(const Instance& inst, bool prune) : inst_(inst), prune_(prune) {
    used_.assign(inst.size(), false);
    path_.reserve(inst.size());
  }

  void set_incumbent(Permutation order, PrefixState totals) {
    best_order_ = std::move(order);
    best_ = totals;
  }

  void run() { descend({}); }

  const Permutation& best_order() const { return best_order_; }
  std::uint64_t leaves() const { return leaves_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void descend(PrefixState state) {
    if (path_.size() == inst_.size()) {
      ++leaves_;
      if (state.objective < best_.objective ||
          (!prune_ && state.objective == best_.objective && state.finish < best_.finish)) {
        best_ = state;
        best_order_ = path_;
      }
      return;
    }
    for (JobIndex j = 0; j < inst_.size(); ++j) {
      if (used_[j]) continue;
      const PrefixState next = extend(state, inst_.jobs[j], inst_.penalties);
      ++nodes_;
      if (prune_ && next.objective >= best_.objective) continue;
      used_[j] = true;
      path_.push_back(j);
      descend(next);
      path_.pop_back();
      used_[j] = false;
    }
  }

  const Instance& inst_;
  bool prune_;
  std::vector<bool> used_;
  Permutation path_;
  Permutation best_order_;
  PrefixState best_{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  std::uint64_t leaves_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ScheduleResult brute_force_optimal(const Instance& inst, ExactOptions options) {
  check_size(inst, kMaxBruteForceJobs, options.allow_large, "brute force");
  const auto t0 = std::chrono::steady_clock::now();
  // Strict improvement in lexicographic visiting order keeps the smallest
  // order among ties.
  Enumerator search(inst, /*prune=*/false);
  search.run();
  ScheduleResult result;
  result.best = evaluate(inst, search.best_order());
  result.evaluations_count = search.leaves();
  result.wall_time = seconds_since(t0);
  return result;
}

ScheduleResult branch_and_bound(const Instance& inst, BranchAndBoundOptions options) {
  check_size(inst, kMaxBranchAndBoundJobs, options.allow_large, "branch and bound");
  const auto t0 = std::chrono::steady_clock::now();
  Enumerator search(inst, /*prune=*/true);
  if (options.warm_start) {
    if (!is_full_permutation(inst, *options.warm_start)) {
      throw std::invalid_argument("branch and bound: warm start is not a full permutation");
    }
    search.set_incumbent(*options.warm_start, evaluate_totals(inst, *options.warm_start));
  }
  search.run();
  ScheduleResult result;
  result.best = evaluate(inst, search.best_order());
  result.evaluations_count = search.nodes();
  result.wall_time = seconds_since(t0);
  return result;
}

}  // namespace latesched

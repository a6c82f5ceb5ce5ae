#include <algorithm>
#include <cctype>
#include <chrono>
#include <numeric>
#include <string>

#include "latesched/heuristics.hpp"

namespace latesched {

std::string_view to_string(DispatchRule rule) {
  switch (rule) {
    case DispatchRule::kEdd: return "edd";
    case DispatchRule::kSpt: return "spt";
    case DispatchRule::kLpt: return "lpt";
    case DispatchRule::kCriticalRatio: return "cr";
    case DispatchRule::kFifo: return "fifo";
  }
  return "unknown";
}

std::optional<DispatchRule> parse_dispatch_rule(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "edd") return DispatchRule::kEdd;
  if (lower == "spt") return DispatchRule::kSpt;
  if (lower == "lpt") return DispatchRule::kLpt;
  if (lower == "cr" || lower == "critical_ratio" || lower == "critical-ratio") {
    return DispatchRule::kCriticalRatio;
  }
  if (lower == "fifo") return DispatchRule::kFifo;
  return std::nullopt;
}

Permutation dispatch_order(const Instance& inst, DispatchRule rule) {
  const auto& jobs = inst.jobs;
  auto key = [&](JobIndex j) -> double {
    const Job& job = jobs[j];
    switch (rule) {
      case DispatchRule::kEdd: return job.due;
      case DispatchRule::kSpt: return job.processing;
      case DispatchRule::kLpt: return -job.processing;
      // Time left before the due date per unit of work, taken at time 0.
      case DispatchRule::kCriticalRatio: return (job.due - job.arrival) / job.processing;
      case DispatchRule::kFifo: return job.arrival;
    }
    return 0.0;
  };

  Permutation order(jobs.size());
  std::iota(order.begin(), order.end(), JobIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](JobIndex a, JobIndex b) { return key(a) < key(b); });
  return order;
}

ScheduleResult dispatch_schedule(const Instance& inst, DispatchRule rule) {
  const auto t0 = std::chrono::steady_clock::now();
  ScheduleResult result;
  result.best = evaluate(inst, dispatch_order(inst, rule));
  result.evaluations_count = 1;
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace latesched

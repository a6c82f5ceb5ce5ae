#include "latesched/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace latesched {

bool ValidationReport::repairable() const {
  return std::all_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.kind == ViolationKind::kArrivalsOutOfOrder;
  });
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::size_t job, std::string msg) {
    report.violations.push_back({kind, job, std::move(msg)});
  };

  if (inst.jobs.empty()) {
    add(ViolationKind::kEmptyInstance, 0, "instance has no jobs");
  }
  const auto& pen = inst.penalties;
  if (!std::isfinite(pen.fixed_late_penalty) || !std::isfinite(pen.lateness_rate)) {
    add(ViolationKind::kNonFiniteValue, 0, "penalty parameters must be finite");
  } else if (pen.fixed_late_penalty < 0.0 || pen.lateness_rate < 0.0) {
    add(ViolationKind::kNegativePenalty, 0, "penalty parameters must be nonnegative");
  } else if (pen.fixed_late_penalty == 0.0 && pen.lateness_rate == 0.0) {
    report.warnings.push_back("p and q are both zero; every schedule costs 0");
  }

  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    const Job& job = inst.jobs[i];
    const std::string tag = "job " + std::to_string(i + 1) + ": ";
    if (!std::isfinite(job.arrival) || !std::isfinite(job.processing) ||
        !std::isfinite(job.due)) {
      add(ViolationKind::kNonFiniteValue, i, tag + "non-finite time value");
      continue;
    }
    if (job.arrival < 0.0) {
      add(ViolationKind::kNegativeArrival, i, tag + "negative arrival");
    }
    if (job.processing <= 0.0) {
      add(ViolationKind::kNonpositiveProcessing, i, tag + "nonpositive processing");
    }
    if (job.due < 0.0) {
      add(ViolationKind::kNegativeDue, i, tag + "negative due time");
    }
    if (i > 0 && job.arrival < inst.jobs[i - 1].arrival) {
      add(ViolationKind::kArrivalsOutOfOrder, i,
          tag + "arrivals not nondecreasing");
    }
  }
  return report;
}

NormalizedInstance normalize_instance(Instance inst) {
  NormalizedInstance out;
  out.original_index.resize(inst.jobs.size());
  std::iota(out.original_index.begin(), out.original_index.end(), std::size_t{0});
  std::stable_sort(out.original_index.begin(), out.original_index.end(),
                   [&](std::size_t a, std::size_t b) {
                     return inst.jobs[a].arrival < inst.jobs[b].arrival;
                   });
  const bool reordered =
      !std::is_sorted(out.original_index.begin(), out.original_index.end());
  if (reordered) {
    out.warnings.push_back("jobs re-sorted by arrival time");
  }
  out.instance.penalties = inst.penalties;
  out.instance.jobs.reserve(inst.jobs.size());
  for (std::size_t idx : out.original_index) {
    out.instance.jobs.push_back(inst.jobs[idx]);
  }
  return out;
}

void check_permutation(const Instance& inst, std::span<const JobIndex> perm) {
  if (perm.size() > inst.size()) {
    throw std::invalid_argument("permutation longer than the job list");
  }
  std::vector<bool> seen(inst.size(), false);
  for (JobIndex j : perm) {
    if (j >= inst.size()) {
      throw std::invalid_argument("job index " + std::to_string(j + 1) +
                                  " out of range");
    }
    if (seen[j]) {
      throw std::invalid_argument("job index " + std::to_string(j + 1) +
                                  " repeated");
    }
    seen[j] = true;
  }
}

bool is_full_permutation(const Instance& inst, std::span<const JobIndex> perm) {
  if (perm.size() != inst.size()) return false;
  try {
    check_permutation(inst, perm);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

ScheduleEvaluation evaluate(const Instance& inst, std::span<const JobIndex> perm) {
  check_permutation(inst, perm);
  const std::size_t k = perm.size();
  const double p = inst.penalties.fixed_late_penalty;
  const double q = inst.penalties.lateness_rate;

  ScheduleEvaluation ev;
  ev.order.assign(perm.begin(), perm.end());
  ev.starts.resize(k);
  ev.completions.resize(k);
  ev.lateness.resize(k);
  ev.late_flags.resize(k);

  for (std::size_t pos = 0; pos < k; ++pos) {
    const Job& job = inst.jobs[perm[pos]];
    const double prev = pos == 0 ? 0.0 : ev.completions[pos - 1];
    ev.starts[pos] = std::max(prev, job.arrival);
    ev.completions[pos] = ev.starts[pos] + job.processing;
    ev.lateness[pos] = std::max(0.0, ev.completions[pos] - job.due);
    ev.late_flags[pos] = ev.lateness[pos] > 0.0;
    if (ev.late_flags[pos]) {
      ev.objective += q * ev.lateness[pos] + p;
    }
  }
  ev.finish = k == 0 ? 0.0 : ev.completions.back();
  return ev;
}

ScheduleEvaluation evaluate_extension(ScheduleEvaluation prefix,
                                      const Instance& inst, JobIndex next_job) {
  if (next_job >= inst.size()) {
    throw std::invalid_argument("job index " + std::to_string(next_job + 1) +
                                " out of range");
  }
  if (std::find(prefix.order.begin(), prefix.order.end(), next_job) !=
      prefix.order.end()) {
    throw std::invalid_argument("job index " + std::to_string(next_job + 1) +
                                " already scheduled");
  }
  const Job& job = inst.jobs[next_job];
  const PenaltyParams& pen = inst.penalties;
  const double start = std::max(prefix.finish, job.arrival);
  const double completion = start + job.processing;
  const double lateness = std::max(0.0, completion - job.due);

  prefix.order.push_back(next_job);
  prefix.starts.push_back(start);
  prefix.completions.push_back(completion);
  prefix.lateness.push_back(lateness);
  prefix.late_flags.push_back(lateness > 0.0);
  if (lateness > 0.0) {
    prefix.objective += pen.lateness_rate * lateness + pen.fixed_late_penalty;
  }
  prefix.finish = completion;
  return prefix;
}

PrefixState evaluate_totals(const Instance& inst, std::span<const JobIndex> perm,
                            PrefixState from) {
  for (JobIndex j : perm) from = extend(from, inst.jobs[j], inst.penalties);
  return from;
}

Permutation from_one_based(std::span<const int> order) {
  Permutation out;
  out.reserve(order.size());
  for (int v : order) {
    if (v < 1) throw std::invalid_argument("job indices are 1-based");
    out.push_back(static_cast<JobIndex>(v - 1));
  }
  return out;
}

std::vector<int> to_one_based(std::span<const JobIndex> order) {
  std::vector<int> out;
  out.reserve(order.size());
  for (JobIndex j : order) out.push_back(static_cast<int>(j) + 1);
  return out;
}

}  // namespace latesched

// Core single-machine scheduling types and the schedule evaluator.
//
// A schedule is a permutation of job indices. Jobs run back to back on one
// machine; a job never starts before its arrival, and the machine idles only
// while waiting for an arrival. The cost of a schedule is
//
//   sum_k  q * lateness_k + p * [lateness_k > 0]
//
// where lateness_k = max(0, completion_k - due_k), p is the fixed penalty per
// late job and q the penalty per unit of lateness.
//
// Job indices are 0-based inside the library. File formats and CLI output
// use 1-based indices.

#ifndef LATESCHED_MODEL_HPP
#define LATESCHED_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace latesched {

using JobIndex = std::uint32_t;
using Permutation = std::vector<JobIndex>;

struct Job {
  double arrival = 0.0;
  double processing = 0.0;
  double due = 0.0;

  friend bool operator==(const Job&, const Job&) = default;
};

struct PenaltyParams {
  double fixed_late_penalty = 10.0;  // p
  double lateness_rate = 5.0;        // q

  friend bool operator==(const PenaltyParams&, const PenaltyParams&) = default;
};

struct Instance {
  std::vector<Job> jobs;  // nondecreasing arrival
  PenaltyParams penalties;

  std::size_t size() const { return jobs.size(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class ViolationKind {
  kEmptyInstance,
  kNegativeArrival,
  kNonpositiveProcessing,
  kNegativeDue,
  kNonFiniteValue,
  kNegativePenalty,
  kArrivalsOutOfOrder,  // repairable by normalize_instance
};

struct Violation {
  ViolationKind kind;
  std::size_t job = 0;  // offending job (0-based); 0 for instance-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  // True when every violation can be fixed by re-sorting the jobs.
  bool repairable() const;
};

ValidationReport validate_instance(const Instance& inst);

// An instance whose jobs were re-sorted by arrival. original_index[i] is the
// position job i had in the input.
struct NormalizedInstance {
  Instance instance;
  std::vector<std::size_t> original_index;
  std::vector<std::string> warnings;
};

// Stable-sorts jobs by arrival. Warns when the order changed.
NormalizedInstance normalize_instance(Instance inst);

// Running totals of a partial schedule; all that is needed to extend it.
struct PrefixState {
  double objective = 0.0;
  double finish = 0.0;
};

// Appends one job to a partial schedule with the given totals.
inline PrefixState extend(PrefixState state, const Job& job,
                          const PenaltyParams& pen) {
  const double start = state.finish > job.arrival ? state.finish : job.arrival;
  const double completion = start + job.processing;
  const double lateness = completion > job.due ? completion - job.due : 0.0;
  if (lateness > 0.0) {
    state.objective += pen.lateness_rate * lateness + pen.fixed_late_penalty;
  }
  state.finish = completion;
  return state;
}

struct ScheduleEvaluation {
  Permutation order;
  std::vector<double> starts;
  std::vector<double> completions;
  std::vector<double> lateness;
  std::vector<bool> late_flags;
  double objective = 0.0;
  double finish = 0.0;

  std::size_t size() const { return order.size(); }
  PrefixState state() const { return {objective, finish}; }

  friend bool operator==(const ScheduleEvaluation&,
                         const ScheduleEvaluation&) = default;
};

// Throws std::invalid_argument if perm repeats a job or names one outside
// the instance. perm may be a prefix (fewer than N jobs).
void check_permutation(const Instance& inst, std::span<const JobIndex> perm);

ScheduleEvaluation evaluate(const Instance& inst,
                            std::span<const JobIndex> perm);

// Same result as evaluate(inst, prefix.order + next_job) without revisiting
// the prefix.
ScheduleEvaluation evaluate_extension(ScheduleEvaluation prefix,
                                      const Instance& inst, JobIndex next_job);

// Objective and finish only; the hot path for the heuristics.
PrefixState evaluate_totals(const Instance& inst,
                            std::span<const JobIndex> perm,
                            PrefixState from = {});

bool is_full_permutation(const Instance& inst, std::span<const JobIndex> perm);

// 1-based <-> 0-based helpers for I/O and tests.
Permutation from_one_based(std::span<const int> order);
std::vector<int> to_one_based(std::span<const JobIndex> order);

}  // namespace latesched

#endif  // LATESCHED_MODEL_HPP

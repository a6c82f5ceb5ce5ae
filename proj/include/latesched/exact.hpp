// Exact solvers for small instances and the mixed-integer model export.

#ifndef LATESCHED_EXACT_HPP
#define LATESCHED_EXACT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latesched/heuristics.hpp"
#include "latesched/model.hpp"

namespace latesched {

inline constexpr std::size_t kMaxBruteForceJobs = 10;
inline constexpr std::size_t kMaxBranchAndBoundJobs = 14;

struct ExactOptions {
  bool allow_large = false;  // lifts the job-count guard
};

// Enumerates all N! orderings. Returns the minimum objective, ties broken by
// finish time and then lexicographic order. evaluations_count = N!.
ScheduleResult brute_force_optimal(const Instance& inst, ExactOptions options = {});

struct BranchAndBoundOptions {
  bool allow_large = false;
  // Complete schedule used as the initial incumbent.
  std::optional<Permutation> warm_start;
};

// Depth-first search over prefixes. A prefix is cut once its objective
// reaches the incumbent's, which is sound because extending a prefix never
// lowers its objective. evaluations_count = prefix nodes evaluated.
ScheduleResult branch_and_bound(const Instance& inst, BranchAndBoundOptions options = {});

struct MilpExportConfig {
  // Big-M constant; defaults to max arrival + total processing.
  std::optional<double> big_constant;
  std::string naming_version = "latesched-milp-v1";
};

double default_big_constant(const Instance& inst);
double resolve_big_constant(const Instance& inst, const MilpExportConfig& cfg);

// Mixed-integer model in CPLEX LP format. Variables (1-based):
//   u_n_k  binary, job n is the k'th scheduled
//   v_k    binary, position k is late
//   s_n_k  >= 0, start of job n if it is k'th, else 0
//   w_k    >= 0, lateness of position k
// Rows: match_row_n, match_col_k, late_lb_k, late_pos_k, late_ind_k, arr_n,
// chain_k (k < N), link_n_k. Nonnegative starts are variable bounds.
std::string export_milp(const Instance& inst, const MilpExportConfig& cfg = {});

struct MilpRowCounts {
  std::size_t equalities = 0;
  std::size_t inequalities = 0;
  std::size_t bounds = 0;
  std::size_t binaries = 0;
  std::size_t continuous = 0;
};

// Row and variable tallies of the exported model, for a given job count.
MilpRowCounts milp_row_counts(std::size_t n_jobs);

struct MilpViolation {
  std::string constraint;  // row name, e.g. "chain_2"
  double lhs = 0.0;
  double rhs = 0.0;
};

// Builds (u, s, w, v) from a complete schedule and checks every constraint
// family of the model. Throws std::invalid_argument for partial schedules.
std::vector<MilpViolation> check_assignment(const Instance& inst,
                                            const ScheduleEvaluation& eval,
                                            const MilpExportConfig& cfg = {});

}  // namespace latesched

#endif  // LATESCHED_EXACT_HPP

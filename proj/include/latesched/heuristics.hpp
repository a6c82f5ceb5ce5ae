// Dispatch-rule baselines and the two Pareto-based constructive heuristics.
//
// Iterative insertion grows candidate sequences one preliminary job at a
// time, inserting the new job into the trailing slots of every retained
// sequence. Iterative selection fixes the schedule one position per stage by
// enumerating every ordering of a sliding window of preliminary jobs behind
// each retained prefix. Both keep the Pareto set over (objective, finish)
// between stages, thinned to at most `kept_permutations` members.

#ifndef LATESCHED_HEURISTICS_HPP
#define LATESCHED_HEURISTICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latesched/model.hpp"

namespace latesched {

enum class DispatchRule { kEdd, kSpt, kLpt, kCriticalRatio, kFifo };

std::string_view to_string(DispatchRule rule);
// Accepts edd, spt, lpt, cr / critical_ratio, fifo (case-insensitive).
std::optional<DispatchRule> parse_dispatch_rule(std::string_view name);

// Static priority order; ties broken by job index.
Permutation dispatch_order(const Instance& inst, DispatchRule rule);

struct ScheduleResult {
  ScheduleEvaluation best;
  std::uint64_t evaluations_count = 0;
  double wall_time = 0.0;  // seconds
  // Candidate sequences evaluated per stage (heuristics only).
  std::vector<std::uint64_t> stage_evaluations;
};

inline constexpr std::size_t kMaxSeedWindow = 8;
inline constexpr std::size_t kMaxSelectionWindow = 9;

struct InsertionParams {
  std::optional<std::size_t> kept_permutations;  // P; nullopt = unlimited
  std::optional<std::size_t> insertion_slots;    // S; nullopt = unlimited
  std::size_t seed_window = 1;                   // J_init
  DispatchRule preliminary_rule = DispatchRule::kEdd;
  bool allow_large_window = false;               // lifts the J_init guard
};

struct SelectionParams {
  std::optional<std::size_t> kept_permutations;  // P; nullopt = unlimited
  std::size_t window = 5;                        // J
  DispatchRule preliminary_rule = DispatchRule::kEdd;
  bool allow_large_window = false;               // lifts the J guard
};

// Throw std::invalid_argument on parameters outside their guards.
void check_params(const InsertionParams& params);
void check_params(const SelectionParams& params);

ScheduleResult dispatch_schedule(const Instance& inst, DispatchRule rule);
ScheduleResult insertion_schedule(const Instance& inst,
                                  const InsertionParams& params);
ScheduleResult selection_schedule(const Instance& inst,
                                  const SelectionParams& params);

}  // namespace latesched

#endif  // LATESCHED_HEURISTICS_HPP

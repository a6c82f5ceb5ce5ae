// Method-vs-method experiments and gap-to-best statistics.

#ifndef LATESCHED_BENCH_HPP
#define LATESCHED_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latesched/exact.hpp"
#include "latesched/heuristics.hpp"
#include "latesched/model.hpp"

namespace latesched {

enum class MethodKind { kDispatch, kInsertion, kSelection, kBruteForce, kBranchAndBound };

struct MethodSpec {
  std::string label;
  MethodKind kind = MethodKind::kDispatch;
  DispatchRule rule = DispatchRule::kEdd;
  InsertionParams insertion;
  SelectionParams selection;
  bool allow_large = false;  // exact solvers: lift the job-count guard
};

// Parses one method record, e.g.
//   {"label": "ins_P50_S15", "method": "insertion", "keep": 50, "slots": 15}
//   {"label": "sel_J7", "method": "selection", "window": 7, "keep": 50}
//   {"method": "edd"}            (label defaults to the method name)
//   {"method": "bnb"} / {"method": "brute"}
// Optional keys: seed_window, preliminary, force. Throws std::invalid_argument.
MethodSpec method_from_json(const nlohmann::json& doc);
std::vector<MethodSpec> methods_from_json(const nlohmann::json& doc);

// Throws std::invalid_argument when the method cannot run on n jobs.
void check_method(const MethodSpec& method, std::size_t n_jobs);

ScheduleResult run_method(const MethodSpec& method, const Instance& inst);

struct BenchInstance {
  std::string id;
  Instance instance;
};

struct BenchRecord {
  std::string instance_id;
  std::string method;
  double objective = 0.0;
  double finish = 0.0;
  double wall_time = 0.0;  // seconds
  std::uint64_t evaluations = 0;
};

// One record per (instance, method), instance-major. Labels must be unique.
// With workers > 1 solves run concurrently; the output order is unchanged.
std::vector<BenchRecord> run_experiment(const std::vector<BenchInstance>& instances,
                                        const std::vector<MethodSpec>& methods,
                                        std::size_t workers = 1);

struct Percentiles {
  double mean = 0.0;
  double median = 0.0;
  double p5 = 0.0;
  double p95 = 0.0;
};

// Linear interpolation between order statistics at rank q * (n - 1).
double percentile(std::vector<double> values, double q);
Percentiles describe(const std::vector<double>& values);

struct MethodSummary {
  std::string method;
  Percentiles gap;  // objective minus per-instance best
  double proportion_best = 0.0;
  Percentiles time;
};

struct SummaryStats {
  std::vector<MethodSummary> methods;  // sorted by label
  std::size_t instances = 0;
  std::string percentile_method = "linear interpolation at rank q*(n-1)";
};

// Throws std::invalid_argument unless records form a full instance x method
// grid with each pair present exactly once.
SummaryStats summarize(const std::vector<BenchRecord>& records);

struct EcdfPoint {
  double objective = 0.0;
  double fraction = 0.0;
};

// Step points of the empirical CDF of one method's objectives.
std::vector<EcdfPoint> ecdf(const std::vector<BenchRecord>& records, const std::string& method);

// Per-instance best objective over all methods present, keyed by instance id.
std::vector<std::pair<std::string, double>> best_per_instance(
    const std::vector<BenchRecord>& records);

std::string records_to_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_csv(const std::string& text);
std::string summary_to_csv(const SummaryStats& stats);
std::string ecdf_to_csv(const std::vector<EcdfPoint>& points);

}  // namespace latesched

#endif  // LATESCHED_BENCH_HPP

#include "latesched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "latesched/instance_io.hpp"

namespace latesched {
namespace {

std::size_t positive_size(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw std::invalid_argument(std::string("method: '") + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::optional<std::size_t> optional_limit(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (it->is_string() && it->get<std::string>() == "unlimited") return std::nullopt;
  return positive_size(doc, key);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("records: bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("records: bad number '" + s + "'");
  return v;
}

}  // namespace

static MethodSpec method_from_json_unchecked(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("method: expected a JSON object");
  auto it = doc.find("method");
  if (it == doc.end() || !it->is_string()) {
    throw std::invalid_argument("method: missing string key 'method'");
  }
  const std::string name = it->get<std::string>();
  MethodSpec spec;
  spec.label = doc.value("label", name);
  const bool force = doc.value("force", false);

  DispatchRule prelim = DispatchRule::kEdd;
  if (auto p = doc.find("preliminary"); p != doc.end()) {
    auto rule = p->is_string() ? parse_dispatch_rule(p->get<std::string>()) : std::nullopt;
    if (!rule) throw std::invalid_argument("method: unknown preliminary rule");
    prelim = *rule;
  }

  if (auto rule = parse_dispatch_rule(name)) {
    spec.kind = MethodKind::kDispatch;
    spec.rule = *rule;
  } else if (name == "insertion") {
    spec.kind = MethodKind::kInsertion;
    spec.insertion.kept_permutations = optional_limit(doc, "keep");
    spec.insertion.insertion_slots = optional_limit(doc, "slots");
    if (doc.contains("seed_window")) spec.insertion.seed_window = positive_size(doc, "seed_window");
    spec.insertion.preliminary_rule = prelim;
    spec.insertion.allow_large_window = force;
    check_params(spec.insertion);
  } else if (name == "selection") {
    spec.kind = MethodKind::kSelection;
    spec.selection.kept_permutations = optional_limit(doc, "keep");
    if (doc.contains("window")) spec.selection.window = positive_size(doc, "window");
    spec.selection.preliminary_rule = prelim;
    spec.selection.allow_large_window = force;
    check_params(spec.selection);
  } else if (name == "brute" || name == "brute_force") {
    spec.kind = MethodKind::kBruteForce;
    spec.allow_large = force;
  } else if (name == "bnb" || name == "branch_and_bound") {
    spec.kind = MethodKind::kBranchAndBound;
    spec.allow_large = force;
  } else {
    throw std::invalid_argument("method: unknown method '" + name + "'");
  }
  return spec;
}

MethodSpec method_from_json(const nlohmann::json& doc) {
  try {
    return method_from_json_unchecked(doc);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("method: ") + e.what());
  }
}

std::vector<MethodSpec> methods_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw std::invalid_argument("methods: expected a JSON array");
  std::vector<MethodSpec> out;
  for (const auto& item : doc) out.push_back(method_from_json(item));
  return out;
}

void check_method(const MethodSpec& method, std::size_t n_jobs) {
  switch (method.kind) {
    case MethodKind::kDispatch: return;
    case MethodKind::kInsertion: check_params(method.insertion); return;
    case MethodKind::kSelection: check_params(method.selection); return;
    case MethodKind::kBruteForce:
      if (n_jobs > kMaxBruteForceJobs && !method.allow_large) {
        throw std::invalid_argument(method.label + ": brute force limited to " +
                                    std::to_string(kMaxBruteForceJobs) + " jobs");
      }
      return;
    case MethodKind::kBranchAndBound:
      if (n_jobs > kMaxBranchAndBoundJobs && !method.allow_large) {
        throw std::invalid_argument(method.label + ": branch and bound limited to " +
                                    std::to_string(kMaxBranchAndBoundJobs) + " jobs");
      }
      return;
  }
}

ScheduleResult run_method(const MethodSpec& method, const Instance& inst) {
  switch (method.kind) {
    case MethodKind::kDispatch: return dispatch_schedule(inst, method.rule);
    case MethodKind::kInsertion: return insertion_schedule(inst, method.insertion);
    case MethodKind::kSelection: return selection_schedule(inst, method.selection);
    case MethodKind::kBruteForce: return brute_force_optimal(inst, {method.allow_large});
    case MethodKind::kBranchAndBound: {
      BranchAndBoundOptions opts;
      opts.allow_large = method.allow_large;
      return branch_and_bound(inst, opts);
    }
  }
  throw std::logic_error("unhandled method kind");
}

std::vector<BenchRecord> run_experiment(const std::vector<BenchInstance>& instances,
                                        const std::vector<MethodSpec>& methods,
                                        std::size_t workers) {
  if (instances.empty()) throw std::invalid_argument("experiment: no instances");
  if (methods.empty()) throw std::invalid_argument("experiment: no methods");
  std::set<std::string> labels;
  for (const auto& m : methods) {
    if (!labels.insert(m.label).second) {
      throw std::invalid_argument("experiment: duplicate method label '" + m.label + "'");
    }
  }
  for (const auto& inst : instances) {
    for (const auto& m : methods) check_method(m, inst.instance.size());
  }

  const std::size_t total = instances.size() * methods.size();
  std::vector<BenchRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const auto& bi = instances[task / methods.size()];
      const auto& method = methods[task % methods.size()];
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const ScheduleResult r = run_method(method, bi.instance);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        records[task] = {bi.id, method.label, r.best.objective, r.best.finish, secs,
                         r.evaluations_count};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  workers = std::max<std::size_t>(1, std::min(workers, total));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty set");
  std::sort(values.begin(), values.end());
  const double rank = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

Percentiles describe(const std::vector<double>& values) {
  Percentiles out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
  out.median = percentile(values, 0.5);
  out.p5 = percentile(values, 0.05);
  out.p95 = percentile(values, 0.95);
  return out;
}

std::vector<std::pair<std::string, double>> best_per_instance(
    const std::vector<BenchRecord>& records) {
  std::map<std::string, double> best;
  for (const auto& r : records) {
    auto [it, inserted] = best.try_emplace(r.instance_id, r.objective);
    if (!inserted) it->second = std::min(it->second, r.objective);
  }
  return {best.begin(), best.end()};
}

SummaryStats summarize(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  // instance -> method -> record
  std::map<std::string, std::map<std::string, const BenchRecord*>> grid;
  std::set<std::string> methods;
  for (const auto& r : records) {
    methods.insert(r.method);
    if (!grid[r.instance_id].emplace(r.method, &r).second) {
      throw std::invalid_argument("summarize: duplicate record for (" + r.instance_id + ", " +
                                  r.method + ")");
    }
  }
  for (const auto& [id, row] : grid) {
    if (row.size() != methods.size()) {
      throw std::invalid_argument("summarize: ragged grid at instance '" + id + "'");
    }
  }

  SummaryStats stats;
  stats.instances = grid.size();
  for (const auto& method : methods) {
    std::vector<double> gaps, times;
    std::size_t best_count = 0;
    for (const auto& [id, row] : grid) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [m, rec] : row) best = std::min(best, rec->objective);
      const BenchRecord* rec = row.at(method);
      gaps.push_back(rec->objective - best);
      times.push_back(rec->wall_time);
      if (rec->objective == best) ++best_count;
    }
    stats.methods.push_back({method, describe(gaps),
                             static_cast<double>(best_count) / static_cast<double>(grid.size()),
                             describe(times)});
  }
  return stats;
}

std::vector<EcdfPoint> ecdf(const std::vector<BenchRecord>& records, const std::string& method) {
  std::vector<double> values;
  for (const auto& r : records) {
    if (r.method == method) values.push_back(r.objective);
  }
  if (values.empty()) throw std::invalid_argument("ecdf: unknown method '" + method + "'");
  std::sort(values.begin(), values.end());
  std::vector<EcdfPoint> out;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "instance_id,method,objective,finish,wall_time_s,evaluations\n";
  for (const auto& r : records) {
    out << csv_field(r.instance_id) << ',' << csv_field(r.method) << ','
        << format_double(r.objective) << ',' << format_double(r.finish) << ','
        << format_double(r.wall_time) << ',' << r.evaluations << '\n';
  }
  return out.str();
}

std::vector<BenchRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "instance_id,method,objective,finish,wall_time_s,evaluations") {
    throw std::invalid_argument("records: unexpected CSV header");
  }
  std::vector<BenchRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) {
      throw std::invalid_argument("records: line " + std::to_string(line_no) +
                                  " does not have 6 fields");
    }
    BenchRecord r;
    r.instance_id = f[0];
    r.method = f[1];
    r.objective = parse_number(f[2]);
    r.finish = parse_number(f[3]);
    r.wall_time = parse_number(f[4]);
    r.evaluations = static_cast<std::uint64_t>(parse_number(f[5]));
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_to_csv(const SummaryStats& stats) {
  std::ostringstream out;
  out << "method,gap_mean,gap_median,gap_p5,gap_p95,prop_best,time_mean_s,time_median_s,"
         "time_p5_s,time_p95_s\n";
  for (const auto& m : stats.methods) {
    out << csv_field(m.method) << ',' << format_double(m.gap.mean) << ','
        << format_double(m.gap.median) << ',' << format_double(m.gap.p5) << ','
        << format_double(m.gap.p95) << ',' << format_double(m.proportion_best) << ','
        << format_double(m.time.mean) << ',' << format_double(m.time.median) << ','
        << format_double(m.time.p5) << ',' << format_double(m.time.p95) << '\n';
  }
  return out.str();
}

std::string ecdf_to_csv(const std::vector<EcdfPoint>& points) {
  std::ostringstream out;
  out << "objective,fraction\n";
  for (const auto& p : points) {
    out << format_double(p.objective) << ',' << format_double(p.fraction) << '\n';
  }
  return out.str();
}

}  // namespace latesched

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "latesched/exact.hpp"
#include "latesched/instance_io.hpp"

namespace latesched {
namespace {

std::string var(const char* stem, std::size_t a) {
  return std::string(stem) + "_" + std::to_string(a + 1);
}

std::string var(const char* stem, std::size_t a, std::size_t b) {
  return std::string(stem) + "_" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
}

using Terms = std::vector<std::pair<double, std::string>>;

// Writes " name: t1 + t2 ... <sense> rhs", wrapping long rows.
void write_row(std::ostringstream& out, const std::string& name, const Terms& terms,
               const char* sense, double rhs) {
  out << ' ' << name << ':';
  std::size_t on_line = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [coef, v] = terms[i];
    if (on_line == 8) {
      out << "\n  ";
      on_line = 0;
    }
    out << ' ' << (coef < 0 ? '-' : '+') << ' ';
    const double mag = coef < 0 ? -coef : coef;
    if (mag != 1.0) out << format_double(mag) << ' ';
    out << v;
    ++on_line;
  }
  if (sense != nullptr) out << ' ' << sense << ' ' << format_double(rhs + 0.0);
  out << '\n';
}

}  // namespace

double default_big_constant(const Instance& inst) {
  double max_arrival = 0.0;
  double total = 0.0;
  for (const Job& j : inst.jobs) {
    max_arrival = std::max(max_arrival, j.arrival);
    total += j.processing;
  }
  return max_arrival + total;
}

double resolve_big_constant(const Instance& inst, const MilpExportConfig& cfg) {
  return cfg.big_constant.value_or(default_big_constant(inst));
}

MilpRowCounts milp_row_counts(std::size_t n) {
  MilpRowCounts c;
  c.equalities = 2 * n;
  c.inequalities = 4 * n + (n > 0 ? n - 1 : 0) + n * n;
  c.bounds = n * n;
  c.binaries = n * n + n;
  c.continuous = n * n + n;
  return c;
}

std::string export_milp(const Instance& inst, const MilpExportConfig& cfg) {
  const std::size_t n = inst.size();
  const double big = resolve_big_constant(inst, cfg);
  const double p = inst.penalties.fixed_late_penalty;
  const double q = inst.penalties.lateness_rate;

  std::ostringstream out;
  out << "\\ " << cfg.naming_version << '\n';
  out << "\\ jobs: " << n << ", C_big: " << format_double(big) << '\n';

  out << "Minimize\n";
  Terms obj;
  for (std::size_t k = 0; k < n; ++k) obj.emplace_back(q, var("w", k));
  for (std::size_t k = 0; k < n; ++k) obj.emplace_back(p, var("v", k));
  write_row(out, "obj", obj, nullptr, 0.0);

  out << "Subject To\n";
  for (std::size_t j = 0; j < n; ++j) {
    Terms t;
    for (std::size_t k = 0; k < n; ++k) t.emplace_back(1.0, var("u", j, k));
    write_row(out, var("match_row", j), t, "=", 1.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    Terms t;
    for (std::size_t j = 0; j < n; ++j) t.emplace_back(1.0, var("u", j, k));
    write_row(out, var("match_col", k), t, "=", 1.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    Terms t{{-1.0, var("w", k)}};
    for (std::size_t j = 0; j < n; ++j) t.emplace_back(1.0, var("s", j, k));
    for (std::size_t j = 0; j < n; ++j) {
      const double c = inst.jobs[j].processing - inst.jobs[j].due;
      if (c != 0.0) t.emplace_back(c, var("u", j, k));
    }
    write_row(out, var("late_lb", k), t, "<=", 0.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    write_row(out, var("late_pos", k), {{-1.0, var("w", k)}}, "<=", 0.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    write_row(out, var("late_ind", k), {{1.0, var("w", k)}, {-big, var("v", k)}}, "<=", 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Terms t;
    for (std::size_t k = 0; k < n; ++k) t.emplace_back(-1.0, var("s", j, k));
    write_row(out, var("arr", j), t, "<=", -inst.jobs[j].arrival);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Terms t;
    for (std::size_t j = 0; j < n; ++j) t.emplace_back(1.0, var("s", j, k));
    for (std::size_t j = 0; j < n; ++j) t.emplace_back(-1.0, var("s", j, k + 1));
    for (std::size_t j = 0; j < n; ++j) t.emplace_back(inst.jobs[j].processing, var("u", j, k));
    write_row(out, var("chain", k), t, "<=", 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      write_row(out, var("link", j, k), {{1.0, var("s", j, k)}, {-big, var("u", j, k)}}, "<=",
                0.0);
    }
  }

  out << "Bounds\n";
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) out << ' ' << var("s", j, k) << " >= 0\n";
  }

  out << "Binary\n";
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) out << ' ' << var("u", j, k) << '\n';
  }
  for (std::size_t k = 0; k < n; ++k) out << ' ' << var("v", k) << '\n';
  out << "End\n";
  return out.str();
}

std::vector<MilpViolation> check_assignment(const Instance& inst,
                                            const ScheduleEvaluation& eval,
                                            const MilpExportConfig& cfg) {
  const std::size_t n = inst.size();
  if (!is_full_permutation(inst, eval.order)) {
    throw std::invalid_argument("check_assignment: schedule is not a full permutation");
  }
  if (eval.starts.size() != n || eval.lateness.size() != n || eval.late_flags.size() != n) {
    throw std::invalid_argument("check_assignment: schedule vectors have the wrong length");
  }
  const double big = resolve_big_constant(inst, cfg);

  // u[j][k], s[j][k] indexed by job then position.
  std::vector<std::vector<double>> u(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
  std::vector<double> w(n), v(n);
  for (std::size_t k = 0; k < n; ++k) {
    u[eval.order[k]][k] = 1.0;
    s[eval.order[k]][k] = eval.starts[k];
    w[k] = eval.lateness[k];
    v[k] = eval.late_flags[k] ? 1.0 : 0.0;
  }

  std::vector<MilpViolation> bad;
  auto expect_le = [&](std::string name, double lhs, double rhs) {
    if (!(lhs <= rhs)) bad.push_back({std::move(name), lhs, rhs});
  };
  auto expect_eq = [&](std::string name, double lhs, double rhs) {
    if (!(lhs == rhs)) bad.push_back({std::move(name), lhs, rhs});
  };

  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += u[j][k];
    expect_eq(var("match_row", j), sum, 1.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += u[j][k];
    expect_eq(var("match_col", k), sum, 1.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    // Grouped as (start + processing) - due, the evaluator's own order.
    double start = 0.0, work = 0.0, due = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      start += s[j][k];
      work += u[j][k] * inst.jobs[j].processing;
      due += u[j][k] * inst.jobs[j].due;
    }
    expect_le(var("late_lb", k), (start + work) - due - w[k], 0.0);
    expect_le(var("late_pos", k), -w[k], 0.0);
    expect_le(var("late_ind", k), w[k] - big * v[k], 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double start = 0.0;
    for (std::size_t k = 0; k < n; ++k) start += s[j][k];
    expect_le(var("arr", j), -start, -inst.jobs[j].arrival);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double start = 0.0, next_start = 0.0, work = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      start += s[j][k];
      next_start += s[j][k + 1];
      work += u[j][k] * inst.jobs[j].processing;
    }
    expect_le(var("chain", k), (start + work) - next_start, 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      expect_le(var("s_lb", j, k), -s[j][k], 0.0);
      expect_le(var("link", j, k), s[j][k] - big * u[j][k], 0.0);
    }
  }
  return bad;
}

}  // namespace latesched

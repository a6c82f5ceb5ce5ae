#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "latesched/exact.hpp"
#include "latesched/instance_io.hpp"
#include "test_support.hpp"

namespace latesched {
namespace {

using testing::inst_a;
using testing::inst_b;
using testing::one_based;

TEST(BruteForce, Examples) {
  auto r = brute_force_optimal(inst_a());
  EXPECT_EQ(r.best.order, one_based({1, 2, 3}));
  EXPECT_EQ(r.best.objective, 0.0);
  EXPECT_EQ(r.evaluations_count, 6u);

  r = brute_force_optimal(inst_b());
  EXPECT_EQ(r.best.order, one_based({2, 1}));
  EXPECT_EQ(r.best.objective, 0.0);

  // Completes at 3, one unit late.
  r = brute_force_optimal(Instance{{{1, 2, 2}}, {10, 5}});
  EXPECT_EQ(r.best.objective, 15.0);
  EXPECT_EQ(r.evaluations_count, 1u);
}

TEST(BruteForce, MatchesIndependentEnumeration) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const Instance inst = trial % 2 ? testing::random_instance(n, rng())
                                    : testing::random_integer_instance(n, rng);
    const auto r = brute_force_optimal(inst);
    const auto ref = testing::reference_optimum(inst);
    EXPECT_EQ(r.best.objective, ref.objective);
    EXPECT_EQ(r.best.finish, ref.finish);
    EXPECT_EQ(r.best.order, ref.order);
  }
}

TEST(BruteForce, Guard) {
  const Instance big = testing::random_instance(11, 1);
  EXPECT_THROW(brute_force_optimal(big), std::invalid_argument);
  EXPECT_THROW(brute_force_optimal(Instance{}), std::invalid_argument);
}

TEST(BranchAndBound, ReferenceInstanceTrace) {
  // [1] -> [1,2] -> [1,2,3] sets incumbent 0; [1,3], [2], [3] are cut.
  const auto r = branch_and_bound(inst_a());
  EXPECT_EQ(r.best.objective, 0.0);
  EXPECT_EQ(r.evaluations_count, 6u);
  EXPECT_LT(r.evaluations_count, 16u);
}

TEST(BranchAndBound, ZeroWarmStartCutsEveryRootChild) {
  BranchAndBoundOptions opts;
  opts.warm_start = dispatch_order(inst_a(), DispatchRule::kEdd);
  const auto r = branch_and_bound(inst_a(), opts);
  EXPECT_EQ(r.best.objective, 0.0);
  EXPECT_EQ(r.best.order, one_based({1, 3, 2}));
  EXPECT_LE(r.evaluations_count, inst_a().size());

  opts.warm_start = one_based({1, 1, 2});
  EXPECT_THROW(branch_and_bound(inst_a(), opts), std::invalid_argument);
}

TEST(BranchAndBound, AgreesWithBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Instance inst = trial % 2 ? testing::random_instance(n, rng())
                                    : testing::random_integer_instance(n, rng);
    const auto bnb = branch_and_bound(inst);
    EXPECT_EQ(bnb.best.objective, brute_force_optimal(inst).best.objective);
    EXPECT_TRUE(is_full_permutation(inst, bnb.best.order));
  }
}

TEST(BranchAndBound, Guard) {
  EXPECT_THROW(branch_and_bound(testing::random_instance(15, 1)), std::invalid_argument);
}

// Minimal reader for the rows this exporter writes: it evaluates every
// "Subject To" row and every bound at a given variable assignment.
struct LpModel {
  struct Row {
    std::string name;
    std::vector<std::pair<double, std::string>> terms;
    std::string sense;
    double rhs = 0.0;
  };
  std::vector<std::pair<double, std::string>> objective;
  std::vector<Row> rows;
  std::vector<std::string> bounds;
  std::vector<std::string> binaries;
};

std::vector<std::pair<double, std::string>> parse_terms(std::istringstream& in,
                                                        std::string* sense, double* rhs) {
  std::vector<std::pair<double, std::string>> terms;
  std::string tok;
  double sign = 1.0;
  double coef = 1.0;
  while (in >> tok) {
    if (tok == "+" || tok == "-") {
      sign = tok == "-" ? -1.0 : 1.0;
      coef = 1.0;
    } else if (tok == "<=" || tok == ">=" || tok == "=") {
      *sense = tok;
      in >> *rhs;
      break;
    } else if (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.') {
      coef = std::stod(tok);
    } else {
      terms.emplace_back(sign * coef, tok);
    }
  }
  return terms;
}

LpModel parse_lp(const std::string& text) {
  // Join continuation lines onto their row.
  std::istringstream lines(text);
  std::vector<std::string> logical;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("  ", 0) == 0 && !logical.empty()) {
      logical.back() += line;
    } else {
      logical.push_back(line);
    }
  }
  LpModel model;
  std::string section;
  for (const auto& l : logical) {
    if (l.empty() || l[0] == '\\') continue;
    if (l[0] != ' ') {
      section = l;
      continue;
    }
    std::istringstream in(l);
    if (section == "Minimize" || section == "Subject To") {
      std::string name;
      in >> name;
      name.pop_back();  // ':'
      LpModel::Row row{name, {}, "", 0.0};
      row.terms = parse_terms(in, &row.sense, &row.rhs);
      if (section == "Minimize") {
        model.objective = row.terms;
      } else {
        model.rows.push_back(row);
      }
    } else if (section == "Bounds") {
      model.bounds.push_back(l);
    } else if (section == "Binary") {
      std::string v;
      in >> v;
      model.binaries.push_back(v);
    }
  }
  return model;
}

std::map<std::string, double> assignment_of(const ScheduleEvaluation& ev, std::size_t n) {
  std::map<std::string, double> x;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::string tag = std::to_string(j + 1) + "_" + std::to_string(k + 1);
      x["u_" + tag] = 0.0;
      x["s_" + tag] = 0.0;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::string tag = std::to_string(ev.order[k] + 1) + "_" + std::to_string(k + 1);
    x["u_" + tag] = 1.0;
    x["s_" + tag] = ev.starts[k];
    x["w_" + std::to_string(k + 1)] = ev.lateness[k];
    x["v_" + std::to_string(k + 1)] = ev.late_flags[k] ? 1.0 : 0.0;
  }
  return x;
}

double activity(const std::vector<std::pair<double, std::string>>& terms,
                const std::map<std::string, double>& x) {
  double sum = 0.0;
  for (const auto& [c, v] : terms) sum += c * x.at(v);
  return sum;
}

std::vector<std::string> lp_violations(const LpModel& m, const std::map<std::string, double>& x) {
  std::vector<std::string> bad;
  for (const auto& row : m.rows) {
    const double lhs = activity(row.terms, x);
    const double tol = 1e-9 * (1.0 + std::abs(row.rhs));
    const bool ok = row.sense == "=" ? std::abs(lhs - row.rhs) <= tol
                    : row.sense == "<=" ? lhs <= row.rhs + tol
                                        : lhs >= row.rhs - tol;
    if (!ok) bad.push_back(row.name);
  }
  return bad;
}

TEST(ExportMilp, SingleJobModel) {
  const Instance inst{{{1, 2, 2}}, {10, 5}};
  const auto model = parse_lp(export_milp(inst));
  EXPECT_EQ(model.binaries, (std::vector<std::string>{"u_1_1", "v_1"}));
  EXPECT_EQ(model.bounds, (std::vector<std::string>{" s_1_1 >= 0"}));

  // Optimal point: start 1, one unit late, flagged late. Cost 5 + 10.
  std::map<std::string, double> x{{"u_1_1", 1}, {"v_1", 1}, {"s_1_1", 1}, {"w_1", 1}};
  EXPECT_TRUE(lp_violations(model, x).empty());
  EXPECT_EQ(activity(model.objective, x), 15.0);
  EXPECT_EQ(brute_force_optimal(inst).best.objective, 15.0);

  // Not flagging the late job, or starting before arrival, is infeasible.
  x["v_1"] = 0;
  EXPECT_EQ(lp_violations(model, x), (std::vector<std::string>{"late_ind_1"}));
  x["v_1"] = 1;
  x["s_1_1"] = 0.5;
  x["w_1"] = 0.5;
  EXPECT_EQ(lp_violations(model, x), (std::vector<std::string>{"arr_1"}));
}

TEST(ExportMilp, RowTalliesForSixJobs) {
  const Instance inst = testing::random_instance(6, 17);
  const auto model = parse_lp(export_milp(inst));
  std::size_t eq = 0, le = 0;
  for (const auto& row : model.rows) (row.sense == "=" ? eq : le) += 1;
  EXPECT_EQ(eq, 12u);
  EXPECT_EQ(le, 6u + 6u + 6u + 6u + 5u + 36u);
  EXPECT_EQ(model.bounds.size(), 36u);
  EXPECT_EQ(model.binaries.size(), 36u + 6u);

  const auto counts = milp_row_counts(6);
  EXPECT_EQ(counts.equalities, eq);
  EXPECT_EQ(counts.inequalities, le);
  EXPECT_EQ(counts.bounds, 36u);
  EXPECT_EQ(counts.binaries + counts.continuous, 2u * 36u + 2u * 6u);
}

TEST(ExportMilp, EverySchedulePointSatisfiesTheExportedRows) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = testing::random_instance(4, seed);
    const auto model = parse_lp(export_milp(inst));
    Permutation perm(4);
    std::iota(perm.begin(), perm.end(), JobIndex{0});
    do {
      const auto ev = evaluate(inst, perm);
      const auto x = assignment_of(ev, 4);
      EXPECT_TRUE(lp_violations(model, x).empty());
      EXPECT_NEAR(activity(model.objective, x), ev.objective, 1e-9 * (1 + ev.objective));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(ExportMilp, GoldenReferenceInstance) {
  const std::string expected =
      "\\ latesched-milp-v1\n"
      "\\ jobs: 3, C_big: 10\n"
      "Minimize\n"
      " obj: + 5 w_1 + 5 w_2 + 5 w_3 + 10 v_1 + 10 v_2 + 10 v_3\n"
      "Subject To\n"
      " match_row_1: + u_1_1 + u_1_2 + u_1_3 = 1\n"
      " match_row_2: + u_2_1 + u_2_2 + u_2_3 = 1\n"
      " match_row_3: + u_3_1 + u_3_2 + u_3_3 = 1\n"
      " match_col_1: + u_1_1 + u_2_1 + u_3_1 = 1\n"
      " match_col_2: + u_1_2 + u_2_2 + u_3_2 = 1\n"
      " match_col_3: + u_1_3 + u_2_3 + u_3_3 = 1\n"
      " late_lb_1: - w_1 + s_1_1 + s_2_1 + s_3_1 - 5 u_2_1 - 5 u_3_1 <= 0\n"
      " late_lb_2: - w_2 + s_1_2 + s_2_2 + s_3_2 - 5 u_2_2 - 5 u_3_2 <= 0\n"
      " late_lb_3: - w_3 + s_1_3 + s_2_3 + s_3_3 - 5 u_2_3 - 5 u_3_3 <= 0\n"
      " late_pos_1: - w_1 <= 0\n"
      " late_pos_2: - w_2 <= 0\n"
      " late_pos_3: - w_3 <= 0\n"
      " late_ind_1: + w_1 - 10 v_1 <= 0\n"
      " late_ind_2: + w_2 - 10 v_2 <= 0\n"
      " late_ind_3: + w_3 - 10 v_3 <= 0\n"
      " arr_1: - s_1_1 - s_1_2 - s_1_3 <= 0\n"
      " arr_2: - s_2_1 - s_2_2 - s_2_3 <= 0\n"
      " arr_3: - s_3_1 - s_3_2 - s_3_3 <= -4\n"
      " chain_1: + s_1_1 + s_2_1 + s_3_1 - s_1_2 - s_2_2 - s_3_2 + 2 u_1_1 + 3 u_2_1\n"
      "   + u_3_1 <= 0\n"
      " chain_2: + s_1_2 + s_2_2 + s_3_2 - s_1_3 - s_2_3 - s_3_3 + 2 u_1_2 + 3 u_2_2\n"
      "   + u_3_2 <= 0\n"
      " link_1_1: + s_1_1 - 10 u_1_1 <= 0\n"
      " link_1_2: + s_1_2 - 10 u_1_2 <= 0\n"
      " link_1_3: + s_1_3 - 10 u_1_3 <= 0\n"
      " link_2_1: + s_2_1 - 10 u_2_1 <= 0\n"
      " link_2_2: + s_2_2 - 10 u_2_2 <= 0\n"
      " link_2_3: + s_2_3 - 10 u_2_3 <= 0\n"
      " link_3_1: + s_3_1 - 10 u_3_1 <= 0\n"
      " link_3_2: + s_3_2 - 10 u_3_2 <= 0\n"
      " link_3_3: + s_3_3 - 10 u_3_3 <= 0\n"
      "Bounds\n"
      " s_1_1 >= 0\n s_1_2 >= 0\n s_1_3 >= 0\n"
      " s_2_1 >= 0\n s_2_2 >= 0\n s_2_3 >= 0\n"
      " s_3_1 >= 0\n s_3_2 >= 0\n s_3_3 >= 0\n"
      "Binary\n"
      " u_1_1\n u_1_2\n u_1_3\n u_2_1\n u_2_2\n u_2_3\n u_3_1\n u_3_2\n u_3_3\n"
      " v_1\n v_2\n v_3\n"
      "End\n";
  EXPECT_EQ(export_milp(inst_a()), expected);
  EXPECT_EQ(export_milp(inst_a()), export_milp(inst_a()));
}

TEST(ExportMilp, BigConstant) {
  EXPECT_EQ(default_big_constant(inst_a()), 4.0 + 6.0);
  MilpExportConfig cfg;
  cfg.big_constant = 1000;
  EXPECT_NE(export_milp(inst_a(), cfg).find("- 1000 v_1"), std::string::npos);
}

TEST(CheckAssignment, CleanScheduleHasNoViolations) {
  EXPECT_TRUE(check_assignment(inst_a(), evaluate(inst_a(), one_based({1, 2, 3}))).empty());
  EXPECT_TRUE(check_assignment(inst_a(), evaluate(inst_a(), one_based({2, 1, 3}))).empty());
}

bool names(const std::vector<MilpViolation>& v, const std::string& row) {
  return std::any_of(v.begin(), v.end(), [&](const MilpViolation& m) { return m.constraint == row; });
}

TEST(CheckAssignment, InjectedFaults) {
  auto ev = evaluate(inst_a(), one_based({1, 2, 3}));
  ev.starts[2] = ev.completions[1] - 0.5;
  EXPECT_TRUE(names(check_assignment(inst_a(), ev), "chain_2"));

  ev = evaluate(inst_a(), one_based({2, 1, 3}));
  ASSERT_TRUE(ev.late_flags[1]);
  ev.lateness[1] = 0.0;
  EXPECT_TRUE(names(check_assignment(inst_a(), ev), "late_lb_2"));

  ev = evaluate(inst_a(), one_based({2, 1, 3}));
  ev.late_flags[1] = false;
  EXPECT_TRUE(names(check_assignment(inst_a(), ev), "late_ind_2"));

  ev = evaluate(inst_a(), one_based({3, 1, 2}));
  ev.starts[0] = 3.0;
  EXPECT_TRUE(names(check_assignment(inst_a(), ev), "arr_3"));

  EXPECT_THROW(check_assignment(inst_a(), evaluate(inst_a(), one_based({1, 2}))),
               std::invalid_argument);
}

TEST(CheckAssignment, AllSchedulesConsistentAndBounded) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const Instance inst = trial % 2 ? testing::random_instance(n, rng())
                                    : testing::random_integer_instance(n, rng);
    // Completion sums round differently from the bound's sum; allow an ulp or two.
    const double big = default_big_constant(inst) * (1 + 1e-12);
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), JobIndex{0});
    do {
      const auto ev = evaluate(inst, perm);
      ASSERT_TRUE(check_assignment(inst, ev).empty());
      for (std::size_t k = 0; k < n; ++k) {
        EXPECT_LE(ev.starts[k], big);
        EXPECT_LE(ev.completions[k], big);
        EXPECT_LE(ev.lateness[k], big);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

}  // namespace
}  // namespace latesched

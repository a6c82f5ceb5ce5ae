#include "latesched/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latesched/bench.hpp"
#include "latesched/exact.hpp"
#include "latesched/gen.hpp"
#include "latesched/heuristics.hpp"
#include "latesched/instance_io.hpp"

namespace fs = std::filesystem;

namespace latesched {
namespace {

// Input that parsed but cannot be used: invalid instance, guard violation,
// unreadable file.
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

NormalizedInstance load_checked(const fs::path& path, std::ostream& err) {
  NormalizedInstance loaded = load_instance(path);
  for (const auto& w : loaded.warnings) err << "warning: " << path.string() << ": " << w << '\n';
  const ValidationReport report = validate_instance(loaded.instance);
  for (const auto& w : report.warnings) err << "warning: " << path.string() << ": " << w << '\n';
  if (!report.ok()) {
    std::string msg = path.string() + ": invalid instance";
    for (const auto& v : report.violations) msg += "\n  " + v.message;
    throw ValidationFailure(msg);
  }
  return loaded;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::string schedule_text(const ScheduleResult& result, const NormalizedInstance& loaded) {
  return schedule_to_json(result.best, loaded.original_index).dump(2) + "\n";
}

struct GenerateArgs {
  std::size_t n = 8;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::string out;
  GenConfig cfg;
};

struct SolveArgs {
  std::string file;
  std::string method;
  std::size_t keep = 0;  // 0 = unlimited
  std::size_t slots = 0;
  std::size_t seed_window = 1;
  std::size_t window = 5;
  std::string preliminary = "edd";
  bool force = false;
  std::string out;
};

struct OracleArgs {
  std::string file;
  bool brute = false;
  bool force = false;
  std::string out;
};

struct ExportArgs {
  std::string file;
  std::string out;
  double big_m = 0.0;  // 0 = default bound
};

struct BenchArgs {
  std::string instances;
  std::string methods;
  std::string out;
  std::size_t jobs = 1;
};

struct SummarizeArgs {
  std::string records;
  std::string out;
  std::string ecdf_label;
  std::string ecdf_out;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  GenConfig cfg = a.cfg;
  cfg.n_jobs = a.n;
  try {
    check_config(cfg);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  const auto paths = write_batch(a.out, cfg, a.seed, a.count);
  out << "wrote " << paths.size() << " instances to " << a.out << '\n';
  return kExitOk;
}

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const NormalizedInstance loaded = load_checked(a.file, err);
  const auto rule_of = [](const std::string& name) {
    auto r = parse_dispatch_rule(name);
    if (!r) throw std::logic_error("unreachable: unchecked rule " + name);
    return *r;
  };
  auto limit = [](std::size_t v) -> std::optional<std::size_t> {
    if (v == 0) return std::nullopt;
    return v;
  };

  ScheduleResult result;
  try {
    if (a.method == "insertion") {
      InsertionParams p;
      p.kept_permutations = limit(a.keep);
      p.insertion_slots = limit(a.slots);
      p.seed_window = a.seed_window;
      p.preliminary_rule = rule_of(a.preliminary);
      p.allow_large_window = a.force;
      result = insertion_schedule(loaded.instance, p);
    } else if (a.method == "selection") {
      SelectionParams p;
      p.kept_permutations = limit(a.keep);
      p.window = a.window;
      p.preliminary_rule = rule_of(a.preliminary);
      p.allow_large_window = a.force;
      result = selection_schedule(loaded.instance, p);
    } else {
      result = dispatch_schedule(loaded.instance, rule_of(a.method));
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  emit(schedule_text(result, loaded), a.out, out);
  return kExitOk;
}

int do_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const NormalizedInstance loaded = load_checked(a.file, err);
  ScheduleResult result;
  try {
    if (a.brute) {
      result = brute_force_optimal(loaded.instance, {a.force});
    } else {
      BranchAndBoundOptions opts;
      opts.allow_large = a.force;
      result = branch_and_bound(loaded.instance, opts);
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  emit(schedule_text(result, loaded), a.out, out);
  return kExitOk;
}

int do_export(const ExportArgs& a, std::ostream& out, std::ostream& err) {
  const NormalizedInstance loaded = load_checked(a.file, err);
  MilpExportConfig cfg;
  if (a.big_m > 0.0) {
    const double needed = default_big_constant(loaded.instance);
    if (a.big_m < needed) {
      throw ValidationFailure("--big-m must be at least max arrival + total processing (" +
                              format_double(needed) + ")");
    }
    cfg.big_constant = a.big_m;
  }
  if (!loaded.original_index.empty() &&
      !std::is_sorted(loaded.original_index.begin(), loaded.original_index.end())) {
    err << "warning: model job numbers follow arrival order, not file order\n";
  }
  emit(export_milp(loaded.instance, cfg), a.out, out);
  return kExitOk;
}

int do_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  if (!fs::is_directory(a.instances)) {
    throw ValidationFailure(a.instances + ": not a directory");
  }
  for (const auto& entry : fs::directory_iterator(a.instances)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationFailure(a.instances + ": no instance files");

  std::vector<BenchInstance> instances;
  for (const auto& f : files) {
    instances.push_back({f.stem().string(), load_checked(f, err).instance});
  }

  std::vector<MethodSpec> methods;
  std::vector<BenchRecord> records;
  try {
    nlohmann::json spec;
    try {
      spec = nlohmann::json::parse(read_text_file(a.methods));
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(a.methods + ": " + e.what());
    }
    methods = methods_from_json(spec);
    records = run_experiment(instances, methods, a.jobs);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  emit(records_to_csv(records), a.out, out);
  if (!a.out.empty()) {
    const nlohmann::json meta = {
        {"instances", instances.size()},
        {"methods", methods.size()},
        {"workers", a.jobs},
        {"wall_time_note",
         "wall_time_s is per solve; it is only comparable across methods when workers do "
         "not exceed the number of physical cores"}};
    write_text_file(a.out + ".meta.json", meta.dump(2) + "\n");
  }
  return kExitOk;
}

int do_summarize(const SummarizeArgs& a, std::ostream& out) {
  std::vector<BenchRecord> records;
  SummaryStats stats;
  std::vector<EcdfPoint> points;
  try {
    records = records_from_csv(read_text_file(a.records));
    stats = summarize(records);
    if (!a.ecdf_label.empty()) points = ecdf(records, a.ecdf_label);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  emit(summary_to_csv(stats), a.out, out);
  if (!a.out.empty()) {
    const nlohmann::json meta = {{"instances", stats.instances},
                                 {"percentile_method", stats.percentile_method},
                                 {"gap", "objective minus best objective over all methods "
                                         "in the records, per instance"}};
    write_text_file(a.out + ".meta.json", meta.dump(2) + "\n");
  }
  if (!a.ecdf_label.empty()) emit(ecdf_to_csv(points), a.ecdf_out, out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-machine scheduling with late-job and tardiness penalties", "latesched"};
  app.require_subcommand(1);
  app.footer(
      "Instance penalties default to p = 10 per late job and q = 5 per unit of lateness.\n"
      "Exit status: 0 success, 1 invalid input, 2 usage error.");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write seeded random instances and a manifest");
  generate->add_option("--n", gen.n, "Jobs per instance")->capture_default_str()
      ->check(CLI::PositiveNumber);
  generate->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Batch seed")
      ->envname("LATESCHED_SEED")
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--mean-interarrival", gen.cfg.mean_interarrival,
                       "Mean time between arrivals (mu_A)")->capture_default_str();
  generate->add_option("--mean-processing", gen.cfg.mean_processing,
                       "Mean processing time (mu_X)")->capture_default_str();
  generate->add_option("--mean-delay", gen.cfg.mean_info_delay,
                       "Mean information delay (mu_Z)")->capture_default_str();
  generate->add_option("--mean-margin", gen.cfg.mean_margin,
                       "Mean due-date margin (mu_D')")->capture_default_str();
  generate->add_option("--p", gen.cfg.penalties.fixed_late_penalty, "Fixed penalty per late job")
      ->capture_default_str();
  generate->add_option("--q", gen.cfg.penalties.lateness_rate, "Penalty per unit of lateness")
      ->capture_default_str();
  generate->footer("Due time = arrival + delay + processing + margin; all draws exponential.");

  const std::vector<std::string> rules{"edd", "spt", "lpt", "cr", "fifo"};
  std::vector<std::string> solve_methods = rules;
  solve_methods.push_back("insertion");
  solve_methods.push_back("selection");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Schedule an instance with a heuristic");
  solve_cmd->add_option("FILE", solve.file, "Instance JSON")->required();
  solve_cmd->add_option("--method", solve.method, "Dispatch rule or heuristic")
      ->required()
      ->check(CLI::IsMember(solve_methods));
  solve_cmd->add_option("--keep", solve.keep, "Kept permutations P (0 = unlimited)")
      ->capture_default_str();
  solve_cmd->add_option("--slots", solve.slots, "Insertion slots S (0 = unlimited)")
      ->capture_default_str();
  solve_cmd->add_option("--seed-window", solve.seed_window,
                        "Insertion: orderings of the first J jobs seed the search")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--window", solve.window, "Selection: permutation window J")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--preliminary", solve.preliminary, "Rule for the preliminary order")
      ->capture_default_str()
      ->check(CLI::IsMember(rules));
  solve_cmd->add_flag("--force", solve.force, "Allow windows above 9 (selection) / 8 (seed)");
  solve_cmd->add_option("--out", solve.out, "Write the schedule here instead of stdout");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by branch and bound");
  oracle_cmd->add_option("FILE", oracle.file, "Instance JSON")->required();
  oracle_cmd->add_flag("--brute", oracle.brute, "Enumerate all orderings instead");
  oracle_cmd->add_flag("--force", oracle.force,
                       "Allow more than 14 jobs (branch and bound) / 10 (enumeration)");
  oracle_cmd->add_option("--out", oracle.out, "Write the schedule here instead of stdout");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-milp", "Write the mixed-integer model (LP format)");
  export_cmd->add_option("FILE", exp.file, "Instance JSON")->required();
  export_cmd->add_option("--out", exp.out, "LP file (stdout if omitted)");
  export_cmd->add_option("--big-m", exp.big_m,
                         "Big-M constant (default: max arrival + total processing)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run methods over a directory of instances");
  bench_cmd->add_option("--instances", bench.instances, "Directory of instance JSON files")
      ->required();
  bench_cmd->add_option("--methods", bench.methods, "JSON array of method records")->required();
  bench_cmd->add_option("--out", bench.out, "Records CSV (stdout if omitted)");
  bench_cmd->add_option("--jobs", bench.jobs, "Parallel solves")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->footer(
      "Method record keys: method (edd|spt|lpt|cr|fifo|insertion|selection|brute|bnb), label,\n"
      "keep, slots, seed_window, window, preliminary (default edd), force.");

  SummarizeArgs summ;
  auto* summ_cmd = app.add_subcommand("summarize", "Gap-to-best statistics from records CSV");
  summ_cmd->add_option("RECORDS", summ.records, "Records CSV from bench")->required();
  summ_cmd->add_option("--out", summ.out, "Summary CSV (stdout if omitted)");
  summ_cmd->add_option("--ecdf", summ.ecdf_label, "Also write the ECDF of this method");
  summ_cmd->add_option("--ecdf-out", summ.ecdf_out, "ECDF CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return do_generate(gen, out);
    if (solve_cmd->parsed()) return do_solve(solve, out, err);
    if (oracle_cmd->parsed()) return do_oracle(oracle, out, err);
    if (export_cmd->parsed()) return do_export(exp, out, err);
    if (bench_cmd->parsed()) return do_bench(bench, out, err);
    if (summ_cmd->parsed()) return do_summarize(summ, out);
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::system_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace latesched

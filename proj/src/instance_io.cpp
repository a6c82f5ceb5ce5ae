#include "latesched/instance_io.hpp"

#include <cerrno>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace latesched {
namespace {

double number_field(const nlohmann::json& obj, const char* key,
                    const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(where + ": missing key '" + key + "'");
  }
  if (!it->is_number()) {
    throw FormatError(where + ": key '" + key + "' must be a number");
  }
  return it->get<double>();
}

}  // namespace

Instance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("instance: expected a JSON object");
  Instance inst;
  inst.penalties.fixed_late_penalty = number_field(doc, "p", "instance");
  inst.penalties.lateness_rate = number_field(doc, "q", "instance");
  auto jobs = doc.find("jobs");
  if (jobs == doc.end() || !jobs->is_array()) {
    throw FormatError("instance: 'jobs' must be an array");
  }
  inst.jobs.reserve(jobs->size());
  for (std::size_t i = 0; i < jobs->size(); ++i) {
    const auto& j = (*jobs)[i];
    const std::string where = "jobs[" + std::to_string(i) + "]";
    if (!j.is_object()) throw FormatError(where + ": expected an object");
    inst.jobs.push_back({number_field(j, "arrival", where),
                         number_field(j, "processing", where),
                         number_field(j, "due", where)});
  }
  return inst;
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json jobs = nlohmann::json::array();
  for (const Job& j : inst.jobs) {
    jobs.push_back({{"arrival", j.arrival}, {"processing", j.processing}, {"due", j.due}});
  }
  return {{"p", inst.penalties.fixed_late_penalty},
          {"q", inst.penalties.lateness_rate},
          {"jobs", std::move(jobs)}};
}

NormalizedInstance load_instance(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return normalize_instance(instance_from_json(doc));
}

nlohmann::json schedule_to_json(const ScheduleEvaluation& ev,
                                std::span<const std::size_t> original_index) {
  auto file_index = [&](JobIndex j) -> std::size_t {
    return (original_index.empty() ? j : original_index[j]) + 1;
  };
  nlohmann::json order = nlohmann::json::array();
  nlohmann::json per_job = nlohmann::json::array();
  for (std::size_t k = 0; k < ev.size(); ++k) {
    order.push_back(file_index(ev.order[k]));
    per_job.push_back({{"index", file_index(ev.order[k])},
                       {"start", ev.starts[k]},
                       {"completion", ev.completions[k]},
                       {"lateness", ev.lateness[k]},
                       {"late", static_cast<bool>(ev.late_flags[k])}});
  }
  return {{"order", std::move(order)},
          {"objective", ev.objective},
          {"finish", ev.finish},
          {"per_job", std::move(per_job)}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::system_error(errno, std::generic_category(),
                            "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::system_error(errno, std::generic_category(),
                            "cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::system_error(errno, std::generic_category(),
                            "write failed for " + path.string());
  }
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace latesched

// JSON instance and schedule files.
//
// Instance file:  {"p": 10, "q": 5, "jobs": [{"arrival": 0, "processing": 2,
//                  "due": 2}, ...]}
// Jobs may appear in any order; loading re-sorts them by arrival.
//
// Schedule file:  {"order": [1, 3, 2], "objective": 0, "finish": 6,
//                  "per_job": [{"index", "start", "completion", "lateness",
//                  "late"}, ...]}
// Indices in schedule output refer to 1-based positions in the instance file.

#ifndef LATESCHED_INSTANCE_IO_HPP
#define LATESCHED_INSTANCE_IO_HPP

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "latesched/model.hpp"

namespace latesched {

// Malformed file contents (bad JSON, missing keys, wrong types).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);

// Reads, parses and normalizes. Throws FormatError or std::system_error.
NormalizedInstance load_instance(const std::filesystem::path& path);

// original_index maps library job indices back to file positions; pass an
// empty span when they coincide.
nlohmann::json schedule_to_json(const ScheduleEvaluation& ev,
                                std::span<const std::size_t> original_index = {});

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace latesched

#endif  // LATESCHED_INSTANCE_IO_HPP

#include "latesched/gen.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "latesched/instance_io.hpp"

namespace latesched {

void check_config(const GenConfig& cfg) {
  if (cfg.n_jobs < 1) throw std::invalid_argument("generator: n_jobs must be >= 1");
  const double means[] = {cfg.mean_interarrival, cfg.mean_processing, cfg.mean_info_delay,
                          cfg.mean_margin};
  for (double m : means) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("generator: every mean must be positive and finite");
    }
  }
  if (cfg.penalties.fixed_late_penalty < 0.0 || cfg.penalties.lateness_rate < 0.0) {
    throw std::invalid_argument("generator: penalties must be nonnegative");
  }
}

std::mt19937_64 make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& engine, double mean) {
  return -mean * std::log(1.0 - uniform01(engine));
}

Instance generate_instance(const GenConfig& cfg, std::uint64_t seed) {
  check_config(cfg);
  std::mt19937_64 engine = make_engine(seed);
  Instance inst;
  inst.penalties = cfg.penalties;
  inst.jobs.reserve(cfg.n_jobs);
  double arrival = 0.0;
  for (std::size_t n = 0; n < cfg.n_jobs; ++n) {
    arrival += exponential(engine, cfg.mean_interarrival);
    const double processing = exponential(engine, cfg.mean_processing);
    const double delay = exponential(engine, cfg.mean_info_delay);
    const double margin = exponential(engine, cfg.mean_margin);
    inst.jobs.push_back({arrival, processing, arrival + delay + processing + margin});
  }
  return inst;
}

// splitmix64 finalizer over (seed, index).
std::uint64_t batch_stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Instance> generate_batch(const GenConfig& cfg, std::uint64_t seed,
                                     std::size_t count) {
  check_config(cfg);
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(generate_instance(cfg, batch_stream_seed(seed, i)));
  }
  return out;
}

nlohmann::json config_to_json(const GenConfig& cfg) {
  return {{"n_jobs", cfg.n_jobs},
          {"mean_interarrival", cfg.mean_interarrival},
          {"mean_processing", cfg.mean_processing},
          {"mean_info_delay", cfg.mean_info_delay},
          {"mean_margin", cfg.mean_margin},
          {"p", cfg.penalties.fixed_late_penalty},
          {"q", cfg.penalties.lateness_rate}};
}

std::vector<std::filesystem::path> write_batch(const std::filesystem::path& dir,
                                               const GenConfig& cfg, std::uint64_t seed,
                                               std::size_t count) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  paths.reserve(count);
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < count; ++i) {
    char name[48];
    std::snprintf(name, sizeof(name), "instance_%05zu.json", i);
    const auto path = dir / name;
    const Instance inst = generate_instance(cfg, batch_stream_seed(seed, i));
    write_text_file(path, instance_to_json(inst).dump(2) + "\n");
    paths.push_back(path);
    files.push_back(name);
  }
  const nlohmann::json manifest = {{"config", config_to_json(cfg)},
                                   {"seed", seed},
                                   {"count", count},
                                   {"stream", "mt19937_64, seed_seq{lo32, hi32}; "
                                              "entry i seeded by splitmix64(seed + "
                                              "0x9e3779b97f4a7c15 * (i + 1))"},
                                   {"files", std::move(files)}};
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return paths;
}

}  // namespace latesched

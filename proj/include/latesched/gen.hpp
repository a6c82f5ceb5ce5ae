// Seeded random instances.
//
// Per job n (1-based):
//   a_1 ~ Exp(mean_interarrival), a_n = a_{n-1} + Exp(mean_interarrival)
//   x_n ~ Exp(mean_processing)
//   z_n ~ Exp(mean_info_delay)       information delay
//   d'_n ~ Exp(mean_margin)          slack margin
//   d_n = a_n + z_n + x_n + d'_n
// Exp(mu) has mean mu and is drawn by inverse CDF, -mu * ln(1 - u) with u
// uniform on [0, 1) built from the top 53 bits of a std::mt19937_64 draw.
//
// Streams: generate_instance(cfg, seed) seeds the engine with
// std::seed_seq{lo32(seed), hi32(seed)}. Batch entry i uses
// batch_stream_seed(seed, i), so entry i does not depend on the batch size.

#ifndef LATESCHED_GEN_HPP
#define LATESCHED_GEN_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include <json.hpp>

#include "latesched/model.hpp"

namespace latesched {

struct GenConfig {
  std::size_t n_jobs = 8;
  double mean_interarrival = 5.0;  // mu_A
  double mean_processing = 5.0;    // mu_X
  double mean_info_delay = 5.0;    // mu_Z
  double mean_margin = 10.0;       // mu_D'
  PenaltyParams penalties;         // p = 10, q = 5
};

// Throws std::invalid_argument for n_jobs < 1 or nonpositive means.
void check_config(const GenConfig& cfg);

std::mt19937_64 make_engine(std::uint64_t seed);

// Uniform on [0, 1).
double uniform01(std::mt19937_64& engine);
double exponential(std::mt19937_64& engine, double mean);

Instance generate_instance(const GenConfig& cfg, std::uint64_t seed);

std::uint64_t batch_stream_seed(std::uint64_t seed, std::uint64_t index);
std::vector<Instance> generate_batch(const GenConfig& cfg, std::uint64_t seed,
                                     std::size_t count);

nlohmann::json config_to_json(const GenConfig& cfg);

// Writes instance_00000.json, ... plus manifest.json (config, seed, count).
// Returns the instance file paths in batch order.
std::vector<std::filesystem::path> write_batch(const std::filesystem::path& dir,
                                               const GenConfig& cfg, std::uint64_t seed,
                                               std::size_t count);

}  // namespace latesched

#endif  // LATESCHED_GEN_HPP

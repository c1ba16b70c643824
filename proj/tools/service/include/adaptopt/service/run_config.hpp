#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "adaptopt/moea/algorithm.hpp"

namespace adaptopt::service {

// Everything needed to start one optimization run.
//
// File format (INI-style, '#' or ';' comments):
//
//   workflow = w3.xml
//   instance_table = w3.csv
//   output_dir = runs
//   run_id = optional-fixed-id
//
//   [algorithm]
//   name = nsga2 | nsga3
//   population_size = 20
//   generations = 30
//   seed = 42
//   crossover_rate = 0.9
//   mutation_rate = 1/n | <probability>
//   reference_divisions = 4          # nsga3 only, default: fit population
//   threads = 1
//   hypervolume_reference = 100,7    # 2-objective runs only
//   sbx_eta = 15
//   pm_eta = 20
//
// Relative paths resolve against the directory holding the config file.
struct RunConfig {
    std::filesystem::path workflow_path;
    std::filesystem::path instance_table_path;
    std::filesystem::path output_dir;
    std::optional<std::string> run_id;
    AlgorithmConfig algorithm;
};

// Throws ConfigError for unknown keys, malformed values or an invalid
// algorithm configuration (e.g. odd population size).
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir);

// Also checks that the referenced input files exist.
RunConfig load_run_config(const std::filesystem::path& path);

// Pretty-printed JSON snapshot of the resolved configuration.
std::string config_snapshot_json(const RunConfig& config, const std::string& run_id);

bool is_valid_run_id(std::string_view id) noexcept;

} // namespace adaptopt::service

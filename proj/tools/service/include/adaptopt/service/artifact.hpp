#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "adaptopt/moea/archive.hpp"
#include "adaptopt/problem/problem.hpp"

namespace adaptopt::service {

inline constexpr const char* front_file = "front.json";
inline constexpr const char* oracle_front_file = "oracle_front.json";
inline constexpr const char* stats_file = "stats.jsonl";
inline constexpr const char* config_file = "config.json";

std::string solution_file_name(std::size_t index, const std::string& prefix = "solution_");

// {"cobot_assignment": "101"} for binary parts; arrays for real and
// permutation parts. Keys are the sub-encoding names.
std::string genotype_json(const MultiEncodingSpec& spec, const Genotype& genotype);

// Front document for `entries` in the given order. Objective values are in
// each objective's declared direction.
//
//   {"run_id": ..., "algorithm": ..., "objectives": [{"name", "direction"}],
//    "solutions": [{"index", "genotype", "objectives", "workflow_file"}]}
std::string front_json(const AssembledProblem& problem, const std::vector<ArchiveEntry>& entries,
    const std::string& run_id, const std::string& algorithm, const std::string& file_prefix = "solution_");

struct ArtifactFiles {
    std::string config_json;
    std::string stats_jsonl;
};

// Writes front.json, stats.jsonl, config.json and one XML file per archive
// entry into `output_dir/.<run_id>.tmp`, then renames it to `output_dir/<run_id>`.
// Throws IoError if the run directory already exists.
std::filesystem::path publish_run(const std::filesystem::path& output_dir, const std::string& run_id,
    const AssembledProblem& problem, const ParetoArchive& archive, const std::string& algorithm,
    const ArtifactFiles& files);

// Re-parses every solution XML listed in a front document inside `dir` and
// re-evaluates it. Returns one message per mismatch; empty means consistent.
std::vector<std::string> verify_front(const std::filesystem::path& dir, const AssembledProblem& problem,
    const std::string& front_name = front_file);

} // namespace adaptopt::service

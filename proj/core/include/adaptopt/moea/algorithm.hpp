#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adaptopt/moea/archive.hpp"
#include "adaptopt/moea/reference_points.hpp"
#include "adaptopt/problem/problem.hpp"

namespace adaptopt {

enum class Algorithm { NSGA2, NSGA3 };

std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;

struct AlgorithmConfig {
    Algorithm algorithm = Algorithm::NSGA2;
    std::size_t population_size = 100;
    std::size_t generations = 100;
    std::uint64_t seed = 1;
    double crossover_rate = 0.9;
    // nullopt: 1/length of each sub-encoding.
    std::optional<double> mutation_rate_per_gene;
    // NSGA-III only; nullopt picks the largest H whose point count fits the population.
    std::optional<std::size_t> reference_divisions;
    double sbx_distribution_index = 15.0;
    double polynomial_distribution_index = 20.0;
    // Worker threads for population evaluation; results do not depend on it.
    std::size_t threads = 1;
    // Fixed hypervolume reference for 2-objective runs, in reported direction.
    // nullopt: derived once from the first feasible population.
    std::optional<std::vector<double>> hypervolume_reference;
};

// Hard errors (throws ConfigError): zero or odd population, rates outside [0,1],
// zero divisions, zero threads.
void validate_config(const AlgorithmConfig& config);

// Soft problems worth reporting, e.g. fewer NSGA-III individuals than reference points.
std::vector<std::string> config_warnings(const AlgorithmConfig& config, std::size_t num_objectives);

struct Individual {
    Genotype genotype;
    ObjectiveVector objectives;
    std::size_t rank = 0;
    double crowding = 0.0;
};

struct GenerationStats {
    std::size_t generation = 0;
    std::size_t evaluations = 0;
    std::size_t archive_size = 0;
    std::optional<double> hypervolume; // 2-objective runs only

    // One JSON object, no trailing newline.
    std::string to_json() const;

    friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

struct RunResult {
    ParetoArchive archive;
    std::vector<GenerationStats> stats;
    std::vector<Individual> population;       // final population
    std::vector<Point> reference_points;      // NSGA-III only
    std::vector<double> hypervolume_reference; // internal (minimized) convention; empty if unused
    std::size_t degenerate_normalizations = 0; // NSGA-III generations that used the intercept fallback
    std::vector<std::string> warnings;
};

// When `stats_stream` is set, every generation's stats are written to it as one
// JSON line as soon as the generation completes.
RunResult nsga2_run(const AssembledProblem& problem, const AlgorithmConfig& config, std::ostream* stats_stream = nullptr);
RunResult nsga3_run(const AssembledProblem& problem, const AlgorithmConfig& config, std::ostream* stats_stream = nullptr);

// Dispatches on config.algorithm.
RunResult run_algorithm(const AssembledProblem& problem, const AlgorithmConfig& config, std::ostream* stats_stream = nullptr);

// Evaluates genotypes in index order semantics; `threads` only changes speed.
// Evaluation errors are rethrown with the individual's index.
std::vector<ObjectiveVector> evaluate_population(const AssembledProblem& problem, const std::vector<Genotype>& genotypes,
    std::size_t threads);

} // namespace adaptopt

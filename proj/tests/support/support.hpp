#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "adaptopt/cobot/instance_table.hpp"
#include "adaptopt/moea/dominance.hpp"
#include "adaptopt/problem/problem.hpp"
#include "adaptopt/workflow/workflow.hpp"

namespace adaptopt::testing {

using Rng = std::mt19937_64;

// The three-action reference desk: a1 -> a2 -> a3.
Workflow w3_workflow();
cobot::InstanceTable w3_table();

// Leaf actions <prefix>1..<prefix>n chained by successor relationships.
Workflow chain_workflow(std::size_t n, const std::string& prefix = "a");

// Valid workflow with nested composites, assets, decisions, every relationship
// kind and properties of every type (strings include XML metacharacters).
Workflow random_workflow(Rng& rng);

// human ~ U[5,30], cobot = human * U[1.5,3], penalty uniform in {1,2,3}.
cobot::InstanceTable random_table(const Workflow& workflow, Rng& rng);

struct CobotInstance {
    Workflow workflow;
    cobot::InstanceTable table;
};
CobotInstance random_cobot_instance(std::size_t n, Rng& rng);

// Exact front of a chain instance straight from the table: makespan and penalty
// summed per assignment, nondominated vectors kept, sorted ascending.
std::vector<std::vector<double>> table_front(const cobot::InstanceTable& table);

// O(N^2) peel-off sort under constrained dominance, written independently of
// the library.
Fronts naive_sort(std::span<const ObjectiveVector> population);

// Two independent W3-style stations on one 6-action workflow: 4 minimized
// objectives (A makespan, A penalty, B makespan, B penalty).
AssembledProblem four_objective_problem();

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

// relative path -> file content, for "nothing changed" checks.
std::map<std::string, std::string> snapshot(const std::filesystem::path& dir);

} // namespace adaptopt::testing

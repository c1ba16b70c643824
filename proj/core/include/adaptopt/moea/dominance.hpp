#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adaptopt/problem/problem.hpp"

namespace adaptopt {

// Pareto dominance under minimization: a <= b everywhere and a < b somewhere.
// Throws ContractError on arity mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Feasible beats infeasible; two infeasible vectors compare by violation count;
// two feasible vectors compare by Pareto dominance.
bool constrained_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

using Fronts = std::vector<std::vector<std::size_t>>;

// Deb's fast non-dominated sort under constraint-domination. Front 0 is the
// non-dominated set; indices inside a front are ascending.
Fronts fast_non_dominated_sort(std::span<const ObjectiveVector> population);

// Crowding distance of each member of one front, in input order.
// Fronts of size <= 2 are all +inf. Per objective, the extreme members get +inf
// and the rest accumulate (next - prev) / (max - min); an objective with
// max == min (or non-finite range) contributes nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

} // namespace adaptopt

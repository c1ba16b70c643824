#pragma once

#include <span>
#include <vector>

#include "adaptopt/problem/problem.hpp"

namespace adaptopt {

// Area dominated by a two-objective front (minimization) and bounded by
// `reference`. Dominated input points are ignored. Throws ContractError when a
// point does not dominate the reference or the arity is not 2.
double hypervolume_2d(std::span<const ObjectiveVector> front, const std::vector<double>& reference);
double hypervolume_2d(std::span<const std::vector<double>> front, const std::vector<double>& reference);

} // namespace adaptopt

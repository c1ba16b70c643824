#pragma once

#include <cstddef>

#include "adaptopt/moea/archive.hpp"
#include "adaptopt/problem/problem.hpp"

namespace adaptopt {

inline constexpr std::size_t max_brute_force_bits = 24;

// Exact Pareto set by enumerating all 2^n genotypes of a problem whose encoding
// is a single bit vector of length n <= 24. Every genotype reaching a
// non-dominated objective vector is kept. Throws ContractError otherwise.
ParetoArchive brute_force_front(const AssembledProblem& problem);

} // namespace adaptopt

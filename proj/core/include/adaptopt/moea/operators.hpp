#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "adaptopt/problem/encoding.hpp"

namespace adaptopt {

using Rng = std::mt19937_64;

struct VariationConfig {
    double crossover_rate = 0.9;
    // Per-gene mutation probability; nullopt means 1/length of each sub-encoding.
    std::optional<double> mutation_rate_per_gene;
    double sbx_distribution_index = 15.0;
    double polynomial_distribution_index = 20.0;
};

Genotype random_genotype(const MultiEncodingSpec& spec, Rng& rng);

void uniform_crossover(BinaryValue& a, BinaryValue& b, Rng& rng);
void bit_flip_mutation(BinaryValue& value, double rate, Rng& rng);

// Bounded simulated binary crossover; each dimension recombines with probability 0.5.
void sbx_crossover(RealValue& a, RealValue& b, const std::vector<Bounds>& bounds, double eta, Rng& rng);
void polynomial_mutation(RealValue& value, const std::vector<Bounds>& bounds, double eta, double rate, Rng& rng);

// Davis' order crossover (OX1): keep a slice of one parent, fill the rest in the
// other parent's order starting after the slice.
std::pair<PermutationValue, PermutationValue> order_crossover(const PermutationValue& a, const PermutationValue& b, Rng& rng);
void swap_mutation(PermutationValue& value, double rate, Rng& rng);

// Produces two children. One crossover decision is drawn per pair and applied to
// every sub-encoding, then each child is mutated sub-encoding by sub-encoding.
std::pair<Genotype, Genotype> vary(const MultiEncodingSpec& spec, const Genotype& first, const Genotype& second,
    const VariationConfig& config, Rng& rng);

} // namespace adaptopt

#pragma once

#include <cstddef>
#include <vector>

#include "adaptopt/problem/encoding.hpp"
#include "adaptopt/problem/problem.hpp"

namespace adaptopt {

struct ArchiveEntry {
    Genotype genotype;
    ObjectiveVector objectives;

    friend bool operator==(const ArchiveEntry&, const ArchiveEntry&) = default;
};

// Unbounded set of feasible, mutually non-dominated solutions. The manipulated
// workflow of an entry is problem.decode(entry.genotype).
class ParetoArchive {
public:
    enum class Duplicates {
        KeepFirst, // one entry per objective vector: the first genotype seen
        KeepAll,   // every distinct genotype reaching a non-dominated vector
    };

    explicit ParetoArchive(Duplicates policy = Duplicates::KeepFirst)
        : policy_(policy)
    {
    }

    // Returns true when the candidate was added. Infeasible candidates, dominated
    // candidates and duplicates are rejected; members it dominates are evicted.
    bool insert(const Genotype& genotype, const ObjectiveVector& objectives);

    const std::vector<ArchiveEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    // Entries ordered by objective vector, then genotype.
    std::vector<ArchiveEntry> sorted_entries() const;

    // Distinct objective vectors, sorted.
    std::vector<std::vector<double>> objective_set() const;

private:
    Duplicates policy_;
    std::vector<ArchiveEntry> entries_;
};

} // namespace adaptopt

#include "adaptopt/moea/archive.hpp"

#include <algorithm>

#include "adaptopt/moea/dominance.hpp"

namespace adaptopt {

bool ParetoArchive::insert(const Genotype& genotype, const ObjectiveVector& objectives)
{
    if (!objectives.feasible) return false;
    for (const auto& e : entries_) {
        if (dominates(e.objectives, objectives)) return false;
        if (e.objectives.values == objectives.values) {
            if (policy_ == Duplicates::KeepFirst || e.genotype == genotype) return false;
        }
    }
    std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(objectives, e.objectives); });
    entries_.push_back({ genotype, objectives });
    return true;
}

std::vector<ArchiveEntry> ParetoArchive::sorted_entries() const
{
    auto sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) {
        if (a.objectives.values != b.objectives.values) return a.objectives.values < b.objectives.values;
        return a.genotype < b.genotype;
    });
    return sorted;
}

std::vector<std::vector<double>> ParetoArchive::objective_set() const
{
    std::vector<std::vector<double>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.objectives.values);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace adaptopt

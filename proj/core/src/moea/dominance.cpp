#include "adaptopt/moea/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "adaptopt/error.hpp"

namespace adaptopt {

bool dominates(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw ContractError("dominance check on vectors of different arity (" + std::to_string(a.size()) + " vs "
            + std::to_string(b.size()) + ")");
    }
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    return dominates(std::span<const double>(a.values), std::span<const double>(b.values));
}

bool constrained_dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return a.violations < b.violations;
    return dominates(a, b);
}

Fronts fast_non_dominated_sort(std::span<const ObjectiveVector> population)
{
    const auto n = population.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    Fronts fronts;
    if (n == 0) return fronts;

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (constrained_dominates(population[p], population[q])) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (constrained_dominates(population[q], population[p])) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto p : current) {
            for (auto q : dominated_by_me[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto n = front.size();
    if (n <= 2) return std::vector<double>(n, inf);

    const auto m = front.front().values.size();
    std::vector<double> distance(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), std::size_t { 0 });
        std::stable_sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return front[a].values[k] < front[b].values[k]; });
        const double lo = front[order.front()].values[k];
        const double hi = front[order.back()].values[k];
        const double range = hi - lo;
        if (!(range > 0.0) || !std::isfinite(range)) continue;
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const auto idx = order[i];
            if (std::isinf(distance[idx])) continue;
            distance[idx] += (front[order[i + 1]].values[k] - front[order[i - 1]].values[k]) / range;
        }
    }
    return distance;
}

} // namespace adaptopt

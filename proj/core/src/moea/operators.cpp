#include "adaptopt/moea/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace adaptopt {

namespace {
    double uniform01(Rng& rng)
    {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }

    std::size_t uniform_index(Rng& rng, std::size_t n)
    {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }

    double mutation_rate(const VariationConfig& config, std::size_t length)
    {
        return config.mutation_rate_per_gene.value_or(1.0 / static_cast<double>(length));
    }
} // namespace

Genotype random_genotype(const MultiEncodingSpec& spec, Rng& rng)
{
    Genotype g;
    g.parts.reserve(spec.size());
    for (const auto& sub : spec) {
        switch (sub.kind) {
        case EncodingKind::BinaryVector: {
            BinaryValue v;
            v.bits.resize(sub.length);
            for (std::size_t i = 0; i < sub.length; ++i) v.bits[i] = uniform01(rng) < 0.5;
            g.parts.emplace_back(std::move(v));
            break;
        }
        case EncodingKind::RealVector: {
            RealValue v;
            v.values.resize(sub.length);
            for (std::size_t i = 0; i < sub.length; ++i) {
                v.values[i] = std::uniform_real_distribution<double>(sub.bounds[i].low, sub.bounds[i].high)(rng);
            }
            g.parts.emplace_back(std::move(v));
            break;
        }
        case EncodingKind::Permutation: {
            PermutationValue v;
            v.order.resize(sub.length);
            std::iota(v.order.begin(), v.order.end(), std::size_t { 0 });
            std::shuffle(v.order.begin(), v.order.end(), rng);
            g.parts.emplace_back(std::move(v));
            break;
        }
        }
    }
    return g;
}

void uniform_crossover(BinaryValue& a, BinaryValue& b, Rng& rng)
{
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        if (uniform01(rng) < 0.5) {
            const bool tmp = a.bits[i];
            a.bits[i] = b.bits[i];
            b.bits[i] = tmp;
        }
    }
}

void bit_flip_mutation(BinaryValue& value, double rate, Rng& rng)
{
    for (std::size_t i = 0; i < value.bits.size(); ++i) {
        if (uniform01(rng) < rate) value.bits[i] = !value.bits[i];
    }
}

void sbx_crossover(RealValue& a, RealValue& b, const std::vector<Bounds>& bounds, double eta, Rng& rng)
{
    constexpr double eps = 1e-14;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (uniform01(rng) > 0.5) continue;
        const double x1 = a.values[i];
        const double x2 = b.values[i];
        if (std::abs(x1 - x2) <= eps) continue;

        const double y1 = std::min(x1, x2);
        const double y2 = std::max(x1, x2);
        const double lo = bounds[i].low;
        const double hi = bounds[i].high;
        const double u = uniform01(rng);

        auto spread = [&](double beta) {
            const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
            if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
            return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
        };

        const double betaq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
        double c1 = 0.5 * ((y1 + y2) - betaq1 * (y2 - y1));
        const double betaq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
        double c2 = 0.5 * ((y1 + y2) + betaq2 * (y2 - y1));
        c1 = std::clamp(c1, lo, hi);
        c2 = std::clamp(c2, lo, hi);

        if (uniform01(rng) < 0.5) std::swap(c1, c2);
        a.values[i] = c1;
        b.values[i] = c2;
    }
}

void polynomial_mutation(RealValue& value, const std::vector<Bounds>& bounds, double eta, double rate, Rng& rng)
{
    for (std::size_t i = 0; i < value.values.size(); ++i) {
        if (uniform01(rng) >= rate) continue;
        const double lo = bounds[i].low;
        const double hi = bounds[i].high;
        const double y = value.values[i];
        const double d1 = (y - lo) / (hi - lo);
        const double d2 = (hi - y) / (hi - lo);
        const double u = uniform01(rng);
        const double power = 1.0 / (eta + 1.0);
        double dq = 0.0;
        if (u < 0.5) {
            const double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
            dq = std::pow(v, power) - 1.0;
        } else {
            const double v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
            dq = 1.0 - std::pow(v, power);
        }
        value.values[i] = std::clamp(y + dq * (hi - lo), lo, hi);
    }
}

namespace {
    PermutationValue ox_child(const PermutationValue& keep, const PermutationValue& fill, std::size_t lo, std::size_t hi)
    {
        const auto n = keep.order.size();
        PermutationValue child;
        child.order.assign(n, 0);
        std::vector<bool> used(n, false);
        for (std::size_t i = lo; i <= hi; ++i) {
            child.order[i] = keep.order[i];
            used[keep.order[i]] = true;
        }
        std::size_t write = (hi + 1) % n;
        for (std::size_t k = 0; k < n; ++k) {
            const auto gene = fill.order[(hi + 1 + k) % n];
            if (used[gene]) continue;
            child.order[write] = gene;
            used[gene] = true;
            write = (write + 1) % n;
        }
        return child;
    }
} // namespace

std::pair<PermutationValue, PermutationValue> order_crossover(const PermutationValue& a, const PermutationValue& b, Rng& rng)
{
    const auto n = a.order.size();
    if (n < 2) return { a, b };
    auto lo = uniform_index(rng, n);
    auto hi = uniform_index(rng, n);
    if (lo > hi) std::swap(lo, hi);
    return { ox_child(a, b, lo, hi), ox_child(b, a, lo, hi) };
}

void swap_mutation(PermutationValue& value, double rate, Rng& rng)
{
    const auto n = value.order.size();
    if (n < 2) return;
    for (std::size_t i = 0; i < n; ++i) {
        if (uniform01(rng) < rate) std::swap(value.order[i], value.order[uniform_index(rng, n)]);
    }
}

std::pair<Genotype, Genotype> vary(const MultiEncodingSpec& spec, const Genotype& first, const Genotype& second,
    const VariationConfig& config, Rng& rng)
{
    Genotype c1 = first;
    Genotype c2 = second;

    if (uniform01(rng) < config.crossover_rate) {
        for (std::size_t s = 0; s < spec.size(); ++s) {
            switch (spec[s].kind) {
            case EncodingKind::BinaryVector:
                uniform_crossover(std::get<BinaryValue>(c1.parts[s]), std::get<BinaryValue>(c2.parts[s]), rng);
                break;
            case EncodingKind::RealVector:
                sbx_crossover(std::get<RealValue>(c1.parts[s]), std::get<RealValue>(c2.parts[s]), spec[s].bounds,
                    config.sbx_distribution_index, rng);
                break;
            case EncodingKind::Permutation: {
                auto [x, y] = order_crossover(std::get<PermutationValue>(c1.parts[s]),
                    std::get<PermutationValue>(c2.parts[s]), rng);
                c1.parts[s] = std::move(x);
                c2.parts[s] = std::move(y);
                break;
            }
            }
        }
    }

    for (auto* child : { &c1, &c2 }) {
        for (std::size_t s = 0; s < spec.size(); ++s) {
            const double rate = mutation_rate(config, spec[s].length);
            switch (spec[s].kind) {
            case EncodingKind::BinaryVector:
                bit_flip_mutation(std::get<BinaryValue>(child->parts[s]), rate, rng);
                break;
            case EncodingKind::RealVector:
                polynomial_mutation(std::get<RealValue>(child->parts[s]), spec[s].bounds,
                    config.polynomial_distribution_index, rate, rng);
                break;
            case EncodingKind::Permutation:
                swap_mutation(std::get<PermutationValue>(child->parts[s]), rate, rng);
                break;
            }
        }
    }
    return { std::move(c1), std::move(c2) };
}

} // namespace adaptopt

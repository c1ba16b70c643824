#include "adaptopt/moea/algorithm.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "adaptopt/error.hpp"
#include "adaptopt/moea/dominance.hpp"
#include "adaptopt/moea/hypervolume.hpp"
#include "adaptopt/moea/operators.hpp"

namespace adaptopt {

std::string_view to_string(Algorithm algorithm) noexcept
{
    return algorithm == Algorithm::NSGA2 ? "nsga2" : "nsga3";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept
{
    if (text == "nsga2" || text == "NSGA2" || text == "nsga-ii" || text == "NSGA-II") return Algorithm::NSGA2;
    if (text == "nsga3" || text == "NSGA3" || text == "nsga-iii" || text == "NSGA-III") return Algorithm::NSGA3;
    return std::nullopt;
}

void validate_config(const AlgorithmConfig& c)
{
    if (c.population_size == 0 || c.population_size % 2 != 0) {
        throw ConfigError("population_size must be a positive even number, got " + std::to_string(c.population_size));
    }
    if (!(c.crossover_rate >= 0.0 && c.crossover_rate <= 1.0)) {
        throw ConfigError("crossover_rate must lie in [0, 1]");
    }
    if (c.mutation_rate_per_gene && !(*c.mutation_rate_per_gene >= 0.0 && *c.mutation_rate_per_gene <= 1.0)) {
        throw ConfigError("mutation_rate must lie in [0, 1] or be 1/n");
    }
    if (c.reference_divisions && *c.reference_divisions == 0) {
        throw ConfigError("reference_divisions must be positive");
    }
    if (c.threads == 0) {
        throw ConfigError("threads must be positive");
    }
    if (c.sbx_distribution_index < 0.0 || c.polynomial_distribution_index < 0.0) {
        throw ConfigError("distribution indices must be non-negative");
    }
}

namespace {
    std::size_t auto_divisions(std::size_t num_objectives, std::size_t population)
    {
        std::size_t h = 1;
        while (binomial(h + 1 + num_objectives - 1, num_objectives - 1) <= population) ++h;
        return h;
    }
} // namespace

std::vector<std::string> config_warnings(const AlgorithmConfig& c, std::size_t num_objectives)
{
    std::vector<std::string> warnings;
    if (c.algorithm == Algorithm::NSGA3 && num_objectives >= 2) {
        const auto h = c.reference_divisions.value_or(auto_divisions(num_objectives, c.population_size));
        const auto count = binomial(h + num_objectives - 1, num_objectives - 1);
        if (c.population_size < count) {
            warnings.push_back("population_size " + std::to_string(c.population_size) + " is smaller than the "
                + std::to_string(count) + " reference points");
        }
    }
    if (c.algorithm == Algorithm::NSGA2 && num_objectives >= 4) {
        warnings.push_back("NSGA-II with " + std::to_string(num_objectives)
            + " objectives; NSGA-III is better suited for four or more");
    }
    return warnings;
}

std::string GenerationStats::to_json() const
{
    std::string out = "{\"generation\":" + std::to_string(generation) + ",\"evaluations\":" + std::to_string(evaluations)
        + ",\"archive_size\":" + std::to_string(archive_size);
    if (hypervolume) {
        std::array<char, 64> buf {};
        auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), *hypervolume);
        out += ",\"hypervolume\":";
        out.append(buf.data(), ptr);
    }
    out += '}';
    return out;
}

std::vector<ObjectiveVector> evaluate_population(const AssembledProblem& problem, const std::vector<Genotype>& genotypes,
    std::size_t threads)
{
    const auto n = genotypes.size();
    std::vector<ObjectiveVector> results(n);
    std::vector<std::exception_ptr> errors(n);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                results[i] = problem.evaluate(genotypes[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const auto chunk = (n + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const auto begin = t * chunk;
            const auto end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            throw EvaluationError("individual " + std::to_string(i) + ": " + e.what());
        }
    }
    return results;
}

namespace {

    // Shared generational loop; the two algorithms differ in survivor selection.
    class Nsga {
    public:
        Nsga(const AssembledProblem& problem, const AlgorithmConfig& config, std::ostream* stats_stream)
            : problem_(problem)
            , config_(config)
            , stats_stream_(stats_stream)
            , rng_(config.seed)
        {
            validate_config(config);
            variation_.crossover_rate = config.crossover_rate;
            variation_.mutation_rate_per_gene = config.mutation_rate_per_gene;
            variation_.sbx_distribution_index = config.sbx_distribution_index;
            variation_.polynomial_distribution_index = config.polynomial_distribution_index;

            const auto m = problem.num_objectives();
            result_.warnings = config_warnings(config, m);
            if (config.algorithm == Algorithm::NSGA3) {
                const auto h = config.reference_divisions.value_or(auto_divisions(m, config.population_size));
                result_.reference_points = das_dennis_points(m, h);
            }
            ideal_.assign(m, std::numeric_limits<double>::infinity());
            if (m == 2 && config.hypervolume_reference) {
                if (config.hypervolume_reference->size() != 2) {
                    throw ConfigError("hypervolume reference must have 2 components");
                }
                result_.hypervolume_reference = *config.hypervolume_reference;
                for (std::size_t k = 0; k < 2; ++k) {
                    if (problem.objectives()[k].is_maximization) result_.hypervolume_reference[k] *= -1.0;
                }
            }
        }

        RunResult run()
        {
            const auto n = config_.population_size;
            std::vector<Genotype> genotypes;
            genotypes.reserve(n);
            for (std::size_t i = 0; i < n; ++i) genotypes.push_back(random_genotype(problem_.encoding(), rng_));
            auto objectives = evaluate(genotypes, 0);

            population_.clear();
            for (std::size_t i = 0; i < n; ++i) population_.push_back({ std::move(genotypes[i]), std::move(objectives[i]) });
            archive_offspring(population_);
            assign_rank_and_crowding(population_);
            record(0);

            for (std::size_t gen = 1; gen <= config_.generations; ++gen) {
                auto offspring = make_offspring();
                std::vector<Genotype> child_genotypes;
                child_genotypes.reserve(offspring.size());
                for (auto& c : offspring) child_genotypes.push_back(c.genotype);
                auto child_objectives = evaluate(child_genotypes, gen);
                for (std::size_t i = 0; i < offspring.size(); ++i) offspring[i].objectives = std::move(child_objectives[i]);

                archive_offspring(offspring);

                std::vector<Individual> merged = std::move(population_);
                merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
                population_ = config_.algorithm == Algorithm::NSGA2 ? select_nsga2(std::move(merged))
                                                                   : select_nsga3(std::move(merged));
                record(gen);
            }

            result_.population = std::move(population_);
            return std::move(result_);
        }

    private:
        std::vector<ObjectiveVector> evaluate(const std::vector<Genotype>& genotypes, std::size_t generation)
        {
            try {
                auto out = evaluate_population(problem_, genotypes, config_.threads);
                evaluations_ += genotypes.size();
                return out;
            } catch (const EvaluationError& e) {
                throw EvaluationError("generation " + std::to_string(generation) + ", " + e.what());
            }
        }

        void archive_offspring(const std::vector<Individual>& individuals)
        {
            for (const auto& ind : individuals) {
                result_.archive.insert(ind.genotype, ind.objectives);
                if (!ind.objectives.feasible) continue;
                for (std::size_t k = 0; k < ideal_.size(); ++k) ideal_[k] = std::min(ideal_[k], ind.objectives.values[k]);
            }
            if (problem_.num_objectives() == 2 && result_.hypervolume_reference.empty()) {
                derive_hypervolume_reference(individuals);
            }
        }

        void derive_hypervolume_reference(const std::vector<Individual>& individuals)
        {
            std::vector<double> lo(2, std::numeric_limits<double>::infinity());
            std::vector<double> hi(2, -std::numeric_limits<double>::infinity());
            bool any = false;
            for (const auto& ind : individuals) {
                if (!ind.objectives.feasible) continue;
                any = true;
                for (std::size_t k = 0; k < 2; ++k) {
                    lo[k] = std::min(lo[k], ind.objectives.values[k]);
                    hi[k] = std::max(hi[k], ind.objectives.values[k]);
                }
            }
            if (!any) return;
            result_.hypervolume_reference.resize(2);
            for (std::size_t k = 0; k < 2; ++k) {
                result_.hypervolume_reference[k] = hi[k] + std::max(1.0, 0.1 * (hi[k] - lo[k]));
            }
        }

        void record(std::size_t generation)
        {
            GenerationStats s;
            s.generation = generation;
            s.evaluations = evaluations_;
            s.archive_size = result_.archive.size();
            if (problem_.num_objectives() == 2) {
                double hv = 0.0;
                if (!result_.hypervolume_reference.empty()) {
                    // Points outside the reference box contribute no area.
                    std::vector<std::vector<double>> inside;
                    for (const auto& e : result_.archive.entries()) {
                        if (dominates(e.objectives.values, result_.hypervolume_reference)) inside.push_back(e.objectives.values);
                    }
                    hv = hypervolume_2d(std::span<const std::vector<double>>(inside), result_.hypervolume_reference);
                }
                s.hypervolume = hv;
            }
            if (stats_stream_ != nullptr) *stats_stream_ << s.to_json() << '\n';
            result_.stats.push_back(s);
        }

        static bool better(const Individual& a, const Individual& b)
        {
            if (a.rank != b.rank) return a.rank < b.rank;
            return a.crowding > b.crowding;
        }

        std::size_t tournament()
        {
            std::uniform_int_distribution<std::size_t> pick(0, population_.size() - 1);
            const auto a = pick(rng_);
            const auto b = pick(rng_);
            return better(population_[b], population_[a]) ? b : a;
        }

        std::vector<Individual> make_offspring()
        {
            std::vector<Individual> offspring;
            offspring.reserve(population_.size());
            while (offspring.size() < population_.size()) {
                const auto& p1 = population_[tournament()];
                const auto& p2 = population_[tournament()];
                auto [c1, c2] = vary(problem_.encoding(), p1.genotype, p2.genotype, variation_, rng_);
                offspring.push_back({ std::move(c1), {} });
                offspring.push_back({ std::move(c2), {} });
            }
            return offspring;
        }

        static std::vector<ObjectiveVector> objectives_of(const std::vector<Individual>& pop)
        {
            std::vector<ObjectiveVector> out;
            out.reserve(pop.size());
            for (const auto& i : pop) out.push_back(i.objectives);
            return out;
        }

        static Fronts assign_rank_and_crowding(std::vector<Individual>& pop)
        {
            const auto objs = objectives_of(pop);
            auto fronts = fast_non_dominated_sort(objs);
            for (std::size_t r = 0; r < fronts.size(); ++r) {
                std::vector<ObjectiveVector> members;
                for (auto i : fronts[r]) members.push_back(objs[i]);
                const auto cd = crowding_distance(members);
                for (std::size_t j = 0; j < fronts[r].size(); ++j) {
                    pop[fronts[r][j]].rank = r;
                    pop[fronts[r][j]].crowding = cd[j];
                }
            }
            return fronts;
        }

        std::vector<Individual> select_nsga2(std::vector<Individual> merged)
        {
            const auto n = config_.population_size;
            const auto fronts = assign_rank_and_crowding(merged);

            std::vector<Individual> next;
            next.reserve(n);
            for (const auto& front : fronts) {
                if (next.size() + front.size() <= n) {
                    for (auto i : front) next.push_back(std::move(merged[i]));
                    if (next.size() == n) break;
                    continue;
                }
                auto last = front;
                std::stable_sort(last.begin(), last.end(),
                    [&](std::size_t a, std::size_t b) { return merged[a].crowding > merged[b].crowding; });
                for (std::size_t j = 0; next.size() < n; ++j) next.push_back(std::move(merged[last[j]]));
                break;
            }
            return next;
        }

        std::vector<Individual> select_nsga3(std::vector<Individual> merged)
        {
            const auto n = config_.population_size;
            const auto fronts = fast_non_dominated_sort(objectives_of(merged));

            std::vector<std::size_t> chosen;
            std::vector<std::size_t> last;
            for (const auto& front : fronts) {
                if (chosen.size() + front.size() <= n) {
                    chosen.insert(chosen.end(), front.begin(), front.end());
                    if (chosen.size() == n) break;
                    continue;
                }
                last = front;
                break;
            }

            if (!last.empty()) {
                const auto remaining = n - chosen.size();
                if (!merged[last.front()].objectives.feasible) {
                    // Infeasible members of one front share a violation count.
                    std::shuffle(last.begin(), last.end(), rng_);
                    chosen.insert(chosen.end(), last.begin(), last.begin() + static_cast<std::ptrdiff_t>(remaining));
                } else {
                    niche(merged, chosen, last, remaining);
                }
            }

            std::vector<Individual> next;
            next.reserve(n);
            for (auto i : chosen) next.push_back(std::move(merged[i]));
            assign_rank_and_crowding(next);
            return next;
        }

        void niche(const std::vector<Individual>& merged, std::vector<std::size_t>& chosen,
            const std::vector<std::size_t>& last, std::size_t remaining)
        {
            const auto& refs = result_.reference_points;

            std::vector<Point> points;
            points.reserve(chosen.size() + last.size());
            for (auto i : chosen) points.push_back(merged[i].objectives.values);
            for (auto i : last) points.push_back(merged[i].objectives.values);

            const auto norm = normalize(points, ideal_);
            if (norm.degenerate) ++result_.degenerate_normalizations;
            const auto assoc = associate(norm.points, refs);

            std::vector<std::size_t> niche_count(refs.size(), 0);
            for (std::size_t i = 0; i < chosen.size(); ++i) ++niche_count[assoc.reference[i]];

            // Pending last-front members per reference direction (positions into `points`).
            std::vector<std::vector<std::size_t>> pending(refs.size());
            for (std::size_t j = 0; j < last.size(); ++j) pending[assoc.reference[chosen.size() + j]].push_back(chosen.size() + j);

            std::vector<bool> active(refs.size(), true);
            const auto base = chosen.size();
            while (remaining > 0) {
                std::size_t min_count = std::numeric_limits<std::size_t>::max();
                for (std::size_t r = 0; r < refs.size(); ++r) {
                    if (active[r]) min_count = std::min(min_count, niche_count[r]);
                }
                std::vector<std::size_t> candidates;
                for (std::size_t r = 0; r < refs.size(); ++r) {
                    if (active[r] && niche_count[r] == min_count) candidates.push_back(r);
                }
                const auto r = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng_)];
                auto& members = pending[r];
                if (members.empty()) {
                    active[r] = false;
                    continue;
                }
                std::size_t pick = 0;
                if (niche_count[r] == 0) {
                    for (std::size_t k = 1; k < members.size(); ++k) {
                        if (assoc.distance[members[k]] < assoc.distance[members[pick]]) pick = k;
                    }
                } else {
                    pick = std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng_);
                }
                chosen.push_back(last[members[pick] - base]);
                members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
                ++niche_count[r];
                --remaining;
            }
        }

        const AssembledProblem& problem_;
        AlgorithmConfig config_;
        std::ostream* stats_stream_;
        Rng rng_;
        VariationConfig variation_;
        std::vector<Individual> population_;
        std::vector<double> ideal_;
        std::size_t evaluations_ = 0;
        RunResult result_;
    };

} // namespace

RunResult nsga2_run(const AssembledProblem& problem, const AlgorithmConfig& config, std::ostream* stats_stream)
{
    if (config.algorithm != Algorithm::NSGA2) throw ConfigError("nsga2_run called with a non-NSGA-II config");
    return Nsga(problem, config, stats_stream).run();
}

RunResult nsga3_run(const AssembledProblem& problem, const AlgorithmConfig& config, std::ostream* stats_stream)
{
    if (config.algorithm != Algorithm::NSGA3) throw ConfigError("nsga3_run called with a non-NSGA-III config");
    return Nsga(problem, config, stats_stream).run();
}

RunResult run_algorithm(const AssembledProblem& problem, const AlgorithmConfig& config, std::ostream* stats_stream)
{
    return config.algorithm == Algorithm::NSGA2 ? nsga2_run(problem, config, stats_stream)
                                                : nsga3_run(problem, config, stats_stream);
}

} // namespace adaptopt

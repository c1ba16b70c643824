#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "adaptopt/cobot/plugins.hpp"
#include "adaptopt/moea/algorithm.hpp"
#include "adaptopt/moea/dominance.hpp"
#include "adaptopt/moea/operators.hpp"
#include "adaptopt/workflow/xml.hpp"

using namespace adaptopt;

namespace {

struct Instance {
    Workflow workflow;
    cobot::InstanceTable table;
};

// Chain of n actions with cobot times 1.5-3x the human ones.
Instance chain_instance(std::size_t n)
{
    Rng rng(n);
    std::uniform_real_distribution<double> human(5.0, 30.0);
    std::uniform_real_distribution<double> factor(1.5, 3.0);
    std::uniform_int_distribution<int> penalty(1, 3);
    Instance inst;
    inst.workflow.name = "bench";
    for (std::size_t i = 1; i <= n; ++i) {
        const auto id = "a" + std::to_string(i);
        inst.workflow.actions.push_back({ id, "Step " + std::to_string(i), {}, {} });
        if (i > 1) inst.workflow.relationships.push_back({ RelationshipKind::Successor, "a" + std::to_string(i - 1), id });
        const double h = human(rng);
        inst.table.rows.push_back({ id, h, h * factor(rng), penalty(rng) });
    }
    return inst;
}

void BM_NonDominatedSort(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = static_cast<std::size_t>(state.range(1));
    Rng rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ObjectiveVector> pop(n);
    for (auto& o : pop) {
        for (std::size_t k = 0; k < m; ++k) o.values.push_back(u(rng));
    }
    for (auto _ : state) benchmark::DoNotOptimize(fast_non_dominated_sort(pop));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NonDominatedSort)->ArgsProduct({ { 50, 100, 200, 400 }, { 2, 4 } })->Complexity();

void BM_Evaluate(benchmark::State& state)
{
    const auto inst = chain_instance(static_cast<std::size_t>(state.range(0)));
    const auto problem = cobot::build_cobot_problem(inst.workflow, inst.table);
    Rng rng(3);
    const auto g = random_genotype(problem.encoding(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(problem.evaluate(g));
}
BENCHMARK(BM_Evaluate)->Arg(3)->Arg(12)->Arg(48);

void BM_Nsga2Generation(benchmark::State& state)
{
    const auto inst = chain_instance(12);
    const auto problem = cobot::build_cobot_problem(inst.workflow, inst.table);
    AlgorithmConfig c;
    c.population_size = static_cast<std::size_t>(state.range(0));
    c.generations = 1;
    for (auto _ : state) benchmark::DoNotOptimize(nsga2_run(problem, c));
}
BENCHMARK(BM_Nsga2Generation)->Arg(20)->Arg(100);

void BM_ParseWorkflow(benchmark::State& state)
{
    const auto xml = serialize_workflow(chain_instance(static_cast<std::size_t>(state.range(0))).workflow);
    for (auto _ : state) benchmark::DoNotOptimize(parse_workflow(xml));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * xml.size()));
}
BENCHMARK(BM_ParseWorkflow)->Arg(10)->Arg(100)->Arg(1000);

} // namespace

BENCHMARK_MAIN();

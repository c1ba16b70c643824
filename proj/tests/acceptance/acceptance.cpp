// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "adaptopt/cobot/plugins.hpp"
#include "adaptopt/moea/algorithm.hpp"
#include "adaptopt/moea/dominance.hpp"
#include "adaptopt/moea/hypervolume.hpp"
#include "adaptopt/moea/oracle.hpp"
#include "adaptopt/moea/reference_points.hpp"
#include "adaptopt/service/artifact.hpp"
#include "adaptopt/service/commands.hpp"
#include "adaptopt/workflow/xml.hpp"
#include "support.hpp"

using namespace adaptopt;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Verdict()>& check)
{
    const auto start = Clock::now();
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = { false, std::string("exception: ") + e.what() };
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s  %-26s %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
}

const std::vector<std::vector<double>> w3_front = { { 45, 6 }, { 60, 3 }, { 75, 1 }, { 95, 0 } };

// Every 2-objective run made by the suite, for the monotone-hypervolume check.
std::vector<std::vector<GenerationStats>> recorded_runs;

RunResult recorded(const AssembledProblem& p, const AlgorithmConfig& c)
{
    auto r = run_algorithm(p, c);
    if (p.num_objectives() == 2) recorded_runs.push_back(r.stats);
    return r;
}

Verdict oracle_equivalence()
{
    testing::Rng rng(20260101);
    std::vector<std::pair<AssembledProblem, std::vector<std::vector<double>>>> instances;
    std::string sizes;
    for (int i = 0; i < 10; ++i) {
        const auto n = 3 + static_cast<std::size_t>(rng() % 10);
        const auto inst = testing::random_cobot_instance(n, rng);
        auto p = cobot::build_cobot_problem(inst.workflow, inst.table);
        auto exact = brute_force_front(p).objective_set();
        if (exact != testing::table_front(inst.table)) return { false, "brute force disagrees with the table oracle" };
        sizes += (sizes.empty() ? "" : ",") + std::to_string(n);
        instances.emplace_back(std::move(p), std::move(exact));
    }

    std::string per_seed;
    bool all_at_least_9 = true;
    bool some_10 = false;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        int matched = 0;
        for (const auto& [problem, exact] : instances) {
            AlgorithmConfig c;
            c.population_size = 100;
            c.generations = 100;
            c.seed = seed;
            if (recorded(problem, c).archive.objective_set() == exact) ++matched;
        }
        all_at_least_9 = all_at_least_9 && matched >= 9;
        some_10 = some_10 || matched == 10;
        per_seed += (per_seed.empty() ? "" : " ") + std::to_string(matched) + "/10";
    }
    return { all_at_least_9 && some_10, "n={" + sizes + "} seeds 1-5: " + per_seed };
}

Verdict w3_reference()
{
    const auto p = cobot::build_cobot_problem(testing::w3_workflow(), testing::w3_table());
    int runs = 0;
    int exact = 0;
    double slowest = 0.0;
    for (auto a : { Algorithm::NSGA2, Algorithm::NSGA3 }) {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            AlgorithmConfig c;
            c.algorithm = a;
            c.population_size = 20;
            c.generations = 30;
            c.seed = seed;
            const auto start = Clock::now();
            const auto r = recorded(p, c);
            slowest = std::max(slowest, std::chrono::duration<double>(Clock::now() - start).count());
            ++runs;
            if (r.archive.objective_set() == w3_front) ++exact;
        }
    }
    std::ostringstream d;
    d << exact << "/" << runs << " runs (nsga2+nsga3, 25 seeds) exact; slowest " << slowest * 1000 << " ms";
    return { exact == runs && slowest < 1.0, d.str() };
}

Verdict sorting_oracle()
{
    testing::Rng rng(4242);
    int equal = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 1 + rng() % 64;
        const auto m = 1 + rng() % 5;
        std::uniform_int_distribution<int> value(0, 8);
        std::vector<ObjectiveVector> pop;
        for (std::size_t i = 0; i < n; ++i) {
            ObjectiveVector v;
            for (std::size_t k = 0; k < m; ++k) v.values.push_back(value(rng));
            if (trial % 4 == 3 && rng() % 6 == 0) {
                v.feasible = false;
                v.violations = 1 + rng() % 2;
                std::fill(v.values.begin(), v.values.end(), std::numeric_limits<double>::infinity());
            }
            pop.push_back(std::move(v));
        }
        if (fast_non_dominated_sort(pop) == testing::naive_sort(pop)) ++equal;
    }
    return { equal == 200, std::to_string(equal) + "/200 populations (N<=64, M<=5) partition-equal" };
}

Verdict crowding()
{
    std::vector<ObjectiveVector> front;
    for (const auto& v : w3_front) front.push_back({ v, true, 0 });
    const auto d = crowding_distance(front);
    const double inf = std::numeric_limits<double>::infinity();
    const double e1 = std::abs(d[1] - 1.4333333333333333);
    const double e2 = std::abs(d[2] - 1.2);
    std::ostringstream s;
    s.precision(17);
    s << "d=(" << d[0] << ", " << d[1] << ", " << d[2] << ", " << d[3] << ")";
    return { d[0] == inf && d[3] == inf && e1 <= 1e-9 && e2 <= 1e-9, s.str() };
}

Verdict das_dennis()
{
    int cases = 0;
    double worst = 0.0;
    bool counts = true;
    for (std::size_t m = 2; m <= 6; ++m) {
        for (std::size_t h = 1; h <= 8; ++h) {
            const auto pts = das_dennis_points(m, h);
            counts = counts && pts.size() == binomial(h + m - 1, m - 1);
            for (const auto& p : pts) worst = std::max(worst, std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
            ++cases;
        }
    }
    std::ostringstream s;
    s << cases << " (M,H) pairs, counts " << (counts ? "match" : "MISMATCH") << ", max |sum-1| = " << worst;
    return { counts && worst <= 1e-12, s.str() };
}

Verdict hypervolume()
{
    std::vector<ObjectiveVector> front;
    for (const auto& v : w3_front) front.push_back({ v, true, 0 });
    const double hv = hypervolume_2d(front, { 100, 7 });
    std::size_t generations = 0;
    std::size_t decreases = 0;
    for (const auto& stats : recorded_runs) {
        for (std::size_t g = 1; g < stats.size(); ++g) {
            ++generations;
            if (!stats[g].hypervolume || !stats[g - 1].hypervolume || *stats[g].hypervolume < *stats[g - 1].hypervolume) {
                ++decreases;
            }
        }
    }
    std::ostringstream s;
    s << "W3 vs (100,7) = " << hv << "; " << recorded_runs.size() << " runs, " << generations << " generation steps, "
      << decreases << " decreases";
    return { hv == 230.0 && decreases == 0 && !recorded_runs.empty(), s.str() };
}

std::string run_cli_optimize(const fs::path& dir, const std::string& section)
{
    fs::copy_file(ADAPTOPT_DATA_DIR "/w3.xml", dir / "w3.xml");
    fs::copy_file(ADAPTOPT_DATA_DIR "/w3.csv", dir / "w3.csv");
    write_text_file(dir / "run.cfg",
        "workflow = w3.xml\ninstance_table = w3.csv\noutput_dir = runs\nrun_id = same\n[algorithm]\n" + section);
    std::ostringstream out;
    std::ostringstream err;
    if (service::cmd_optimize(dir / "run.cfg", out, err) != 0) throw std::runtime_error(err.str());
    return out.str();
}

Verdict determinism()
{
    int identical = 0;
    int compared = 0;
    for (const char* section : { "name = nsga2\npopulation_size = 20\ngenerations = 30\nseed = 42\n",
             "name = nsga3\npopulation_size = 20\ngenerations = 30\nseed = 42\nthreads = 3\n",
             "name = nsga2\npopulation_size = 60\ngenerations = 40\nseed = 9\nmutation_rate = 0.2\n" }) {
        const auto a = testing::scratch_dir("accept-det-a");
        const auto b = testing::scratch_dir("accept-det-b");
        run_cli_optimize(a, section);
        run_cli_optimize(b, section);
        for (const char* f : { service::front_file, service::stats_file }) {
            ++compared;
            if (read_text_file(a / "runs/same" / f) == read_text_file(b / "runs/same" / f)) ++identical;
        }
        fs::remove_all(a);
        fs::remove_all(b);
    }
    return { identical == compared,
        std::to_string(identical) + "/" + std::to_string(compared) + " front.json/stats.jsonl pairs byte-identical" };
}

Verdict round_trips()
{
    testing::Rng rng(777);
    int xml_ok = 0;
    for (int i = 0; i < 100; ++i) {
        const auto w = testing::random_workflow(rng);
        if (parse_workflow(serialize_workflow(w)) == w) ++xml_ok;
    }

    // Persisted solutions of W3 runs and of a larger random instance.
    std::size_t mismatches = 0;
    const auto dir = testing::scratch_dir("accept-rt");
    auto inst = testing::random_cobot_instance(10, rng);
    save_workflow(inst.workflow, dir / "w10.xml");
    write_text_file(dir / "w10.csv", cobot::serialize_instance_table(inst.table));
    fs::copy_file(ADAPTOPT_DATA_DIR "/w3.xml", dir / "w3.xml");
    fs::copy_file(ADAPTOPT_DATA_DIR "/w3.csv", dir / "w3.csv");
    int k = 0;
    for (const char* name : { "w3", "w10" }) {
        for (const char* alg : { "nsga2", "nsga3" }) {
            const auto cfg = dir / ("run" + std::to_string(k) + ".cfg");
            write_text_file(cfg,
                std::string("workflow = ") + name + ".xml\ninstance_table = " + name + ".csv\noutput_dir = runs\nrun_id = r"
                    + std::to_string(k) + "\n[algorithm]\nname = " + alg + "\npopulation_size = 40\ngenerations = 40\n");
            std::ostringstream out;
            std::ostringstream err;
            if (service::cmd_optimize(cfg, out, err) != 0) return { false, err.str() };
            auto rc = service::load_run_config(cfg);
            const auto problem = service::load_cobot_problem(rc);
            const auto run = dir / "runs" / ("r" + std::to_string(k));
            mismatches += service::verify_front(run, problem).size();
            ++k;
        }
    }
    fs::remove_all(dir);
    std::ostringstream s;
    s << xml_ok << "/100 random workflows round-trip; " << mismatches << " re-evaluation mismatches over " << k
      << " persisted runs";
    return { xml_ok == 100 && mismatches == 0, s.str() };
}

Verdict many_objective()
{
    const auto p = testing::four_objective_problem();
    AlgorithmConfig c;
    c.algorithm = Algorithm::NSGA3;
    c.population_size = 20;
    c.generations = 50;
    c.reference_divisions = 3; // C(6,3) = 20 reference points
    std::size_t worst_occupied = std::numeric_limits<std::size_t>::max();
    std::size_t refs = 0;
    std::size_t degenerate = 0;
    std::size_t completed = 0;
    std::string per_seed;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        c.seed = seed;
        const auto r = nsga3_run(p, c);
        refs = r.reference_points.size();
        if (r.stats.size() == 51) ++completed;
        degenerate += r.degenerate_normalizations;
        std::vector<Point> objs;
        bool finite = true;
        for (const auto& ind : r.population) {
            objs.push_back(ind.objectives.values);
            for (double v : ind.objectives.values) finite = finite && std::isfinite(v);
        }
        if (!finite) return { false, "non-finite objective in final population" };
        const auto occupied = occupied_references(objs, r.reference_points);
        worst_occupied = std::min(worst_occupied, occupied);
        per_seed += (per_seed.empty() ? "" : " ") + std::to_string(occupied);
    }
    std::ostringstream s;
    s << "pop 20, H=3, " << refs << " refs, 5 seeds; occupied {" << per_seed << "}; worst "
      << 100.0 * double(worst_occupied) / double(refs) << "%; " << degenerate << " fallback normalizations";
    return { completed == 5 && refs <= c.population_size && double(worst_occupied) >= 0.6 * double(refs), s.str() };
}

} // namespace

int main()
{
    report("oracle-equivalence", oracle_equivalence);
    report("w3-reference", w3_reference);
    report("sorting-oracle", sorting_oracle);
    report("crowding-distance", crowding);
    report("das-dennis", das_dennis);
    report("hypervolume", hypervolume);
    report("determinism", determinism);
    report("round-trips", round_trips);
    report("many-objective", many_objective);
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}

#include "support.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "adaptopt/cobot/plugins.hpp"

namespace adaptopt::testing {

namespace fs = std::filesystem;

Workflow chain_workflow(std::size_t n, const std::string& prefix)
{
    Workflow w;
    w.name = "chain of " + std::to_string(n);
    for (std::size_t i = 1; i <= n; ++i) {
        w.actions.push_back({ prefix + std::to_string(i), "Step " + std::to_string(i), {}, {} });
        if (i > 1) {
            w.relationships.push_back(
                { RelationshipKind::Successor, prefix + std::to_string(i - 1), prefix + std::to_string(i) });
        }
    }
    return w;
}

Workflow w3_workflow()
{
    auto w = chain_workflow(3);
    w.name = "W3";
    w.actions[0].name = "Pick housing";
    w.actions[1].name = "Insert shaft";
    w.actions[2].name = "Fasten cover";
    return w;
}

cobot::InstanceTable w3_table()
{
    return { { { "a1", 10, 25, 3 }, { "a2", 20, 40, 1 }, { "a3", 15, 30, 2 } } };
}

namespace {
    std::string random_text(Rng& rng)
    {
        static const std::vector<std::string> pieces
            = { "a", "Z", "7", " ", "<", ">", "&", "\"", "'", "\n", "\t", "\xC3\xA9", "\xE2\x82\xAC", "=", "/", "x" };
        std::uniform_int_distribution<std::size_t> len(0, 8);
        std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
        std::string s;
        for (auto n = len(rng); n > 0; --n) s += pieces[pick(rng)];
        return s;
    }

    PropertySet random_properties(Rng& rng)
    {
        PropertySet props;
        std::uniform_int_distribution<int> count(0, 4);
        std::uniform_int_distribution<int> type(0, 3);
        for (int i = count(rng); i > 0; --i) {
            std::string key = "k" + std::to_string(props.size()) + (type(rng) == 0 ? "&<>" : "");
            switch (type(rng)) {
            case 0: props.push_back(Property::string(key, random_text(rng))); break;
            case 1:
                props.push_back(Property::integer(key, std::uniform_int_distribution<std::int64_t>(
                                                          std::numeric_limits<std::int64_t>::min(),
                                                          std::numeric_limits<std::int64_t>::max())(rng)));
                break;
            case 2: {
                // Mix short decimals with full-precision and extreme magnitudes.
                std::uniform_int_distribution<int> shape(0, 3);
                double v = 0.0;
                switch (shape(rng)) {
                case 0: v = std::uniform_real_distribution<double>(-1e3, 1e3)(rng); break;
                case 1: v = std::ldexp(std::uniform_real_distribution<double>(0.5, 1.0)(rng), std::uniform_int_distribution<int>(-1000, 1000)(rng)); break;
                case 2: v = std::uniform_int_distribution<int>(-50, 50)(rng) / 4.0; break;
                default: v = -0.0; break;
                }
                props.push_back(Property::real(key, v));
                break;
            }
            default: props.push_back(Property::boolean(key, rng() % 2 == 0)); break;
            }
        }
        return props;
    }

    void add_actions(Workflow& w, Rng& rng, int depth, std::size_t count, std::vector<std::string>* siblings)
    {
        for (std::size_t i = 0; i < count; ++i) {
            const std::string id = "act" + std::to_string(w.actions.size());
            if (siblings) siblings->push_back(id);
            const auto index = w.actions.size();
            w.actions.push_back({ id, random_text(rng), random_properties(rng), {} });
            if (depth < 3 && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
                std::vector<std::string> children;
                add_actions(w, rng, depth + 1, std::uniform_int_distribution<std::size_t>(1, 3)(rng), &children);
                w.actions[index].children = std::move(children);
            }
        }
    }
} // namespace

Workflow random_workflow(Rng& rng)
{
    Workflow w;
    w.name = random_text(rng);
    add_actions(w, rng, 0, std::uniform_int_distribution<std::size_t>(0, 6)(rng), nullptr);

    for (auto n = std::uniform_int_distribution<int>(0, 3)(rng); n > 0; --n) {
        w.assets.push_back({ "asset" + std::to_string(w.assets.size()), random_text(rng), random_properties(rng) });
    }
    if (!w.actions.empty()) {
        for (auto n = std::uniform_int_distribution<int>(0, 2)(rng); n > 0; --n) {
            DecisionNode d { "dec" + std::to_string(w.decisions.size()), random_text(rng), random_properties(rng), {} };
            for (auto b = std::uniform_int_distribution<int>(1, 3)(rng); b > 0; --b) {
                const auto& target = w.actions[rng() % w.actions.size()].id;
                d.branches.push_back({ random_text(rng), target });
            }
            w.decisions.push_back(std::move(d));
        }
    }

    // Successors only run forward along a random total order, so they stay acyclic.
    std::vector<std::string> order;
    for (const auto& a : w.actions) order.push_back(a.id);
    for (const auto& d : w.decisions) order.push_back(d.id);
    std::shuffle(order.begin(), order.end(), rng);
    auto is_decision = [](const std::string& id) { return id.starts_with("dec"); };

    std::set<std::tuple<RelationshipKind, std::string, std::string>> seen;
    auto add = [&](RelationshipKind k, const std::string& from, const std::string& to) {
        if (seen.insert({ k, from, to }).second) w.relationships.push_back({ k, from, to });
    };
    if (order.size() >= 2) {
        for (auto n = std::uniform_int_distribution<std::size_t>(0, order.size() * 2)(rng); n > 0; --n) {
            auto i = rng() % order.size();
            auto j = rng() % order.size();
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            if (is_decision(order[i]) && is_decision(order[j])) continue;
            add(RelationshipKind::Successor, order[i], order[j]);
        }
    }
    if (!w.actions.empty() && !w.assets.empty()) {
        for (auto n = std::uniform_int_distribution<int>(0, 4)(rng); n > 0; --n) {
            const auto& action = w.actions[rng() % w.actions.size()].id;
            const auto& asset = w.assets[rng() % w.assets.size()].id;
            const auto kind = rng() % 2 == 0 ? RelationshipKind::Includes : RelationshipKind::Produces;
            if (rng() % 2 == 0) {
                add(kind, action, asset);
            } else {
                add(kind, asset, action);
            }
        }
    }
    for (const auto& d : w.decisions) {
        for (const auto& b : d.branches) add(RelationshipKind::Branch, d.id, b.target);
    }
    return w;
}

cobot::InstanceTable random_table(const Workflow& workflow, Rng& rng)
{
    std::uniform_real_distribution<double> human(5.0, 30.0);
    std::uniform_real_distribution<double> factor(1.5, 3.0);
    std::uniform_int_distribution<std::int64_t> penalty(1, 3);
    cobot::InstanceTable table;
    for (const auto& a : workflow.actions) {
        if (a.is_composite()) continue;
        const double h = human(rng);
        table.rows.push_back({ a.id, h, h * factor(rng), penalty(rng) });
    }
    return table;
}

CobotInstance random_cobot_instance(std::size_t n, Rng& rng)
{
    CobotInstance instance { chain_workflow(n), {} };
    instance.table = random_table(instance.workflow, rng);
    return instance;
}

std::vector<std::vector<double>> table_front(const cobot::InstanceTable& table)
{
    const auto n = table.rows.size();
    std::vector<std::vector<double>> all;
    for (std::uint64_t code = 0; code < (std::uint64_t { 1 } << n); ++code) {
        double makespan = 0.0;
        double penalty = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool cobot = (code >> i) & 1U;
            makespan += cobot ? table.rows[i].cobot_time_s : table.rows[i].human_time_s;
            penalty += cobot ? 0.0 : static_cast<double>(table.rows[i].ergonomic_penalty);
        }
        all.push_back({ makespan, penalty });
    }
    std::vector<std::vector<double>> front;
    for (const auto& p : all) {
        const bool dominated = std::any_of(all.begin(), all.end(), [&](const auto& q) {
            return q[0] <= p[0] && q[1] <= p[1] && (q[0] < p[0] || q[1] < p[1]);
        });
        if (!dominated) front.push_back(p);
    }
    std::sort(front.begin(), front.end());
    front.erase(std::unique(front.begin(), front.end()), front.end());
    return front;
}

Fronts naive_sort(std::span<const ObjectiveVector> population)
{
    auto beats = [](const ObjectiveVector& a, const ObjectiveVector& b) {
        if (a.feasible != b.feasible) return a.feasible;
        if (!a.feasible) return a.violations < b.violations;
        bool strictly = false;
        for (std::size_t m = 0; m < a.values.size(); ++m) {
            if (a.values[m] > b.values[m]) return false;
            if (a.values[m] < b.values[m]) strictly = true;
        }
        return strictly;
    };
    std::vector<bool> placed(population.size(), false);
    std::size_t remaining = population.size();
    Fronts fronts;
    while (remaining > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (placed[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < population.size() && !dominated; ++j) {
                dominated = !placed[j] && j != i && beats(population[j], population[i]);
            }
            if (!dominated) front.push_back(i);
        }
        for (auto i : front) placed[i] = true;
        remaining -= front.size();
        fronts.push_back(std::move(front));
    }
    return fronts;
}

AssembledProblem four_objective_problem()
{
    auto w = chain_workflow(3, "x");
    auto second = chain_workflow(3, "y");
    w.name = "two stations";
    w.actions.insert(w.actions.end(), second.actions.begin(), second.actions.end());
    w.relationships.insert(w.relationships.end(), second.relationships.begin(), second.relationships.end());

    cobot::InstanceTable table { {
        { "x1", 10, 25, 3 },
        { "x2", 20, 40, 1 },
        { "x3", 15, 30, 2 },
        { "y1", 8, 18, 2 },
        { "y2", 14, 35, 3 },
        { "y3", 22, 40, 1 },
    } };

    PluginRegistry registry;
    registry.appenders = cobot::metric_appenders(table);
    registry.manipulators = { cobot::cobot_flag_manipulator() };
    registry.complex_calculators = {
        cobot::makespan_ergonomics_calculator({ "station_a.", { "x1", "x2", "x3" } }),
        cobot::makespan_ergonomics_calculator({ "station_b.", { "y1", "y2", "y3" } }),
    };
    return AssembledProblem::assemble(w, std::move(registry));
}

fs::path scratch_dir(const std::string& name)
{
    static std::atomic<int> counter { 0 };
    auto dir = fs::temp_directory_path()
        / ("adaptopt-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        const auto rel = fs::relative(e.path(), dir).string();
        if (e.is_regular_file()) {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            files[rel] = buf.str();
        } else {
            files[rel + "/"] = "";
        }
    }
    return files;
}

} // namespace adaptopt::testing

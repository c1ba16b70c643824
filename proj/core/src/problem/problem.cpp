#include "adaptopt/problem/problem.hpp"

#include <limits>
#include <map>
#include <set>

#include "adaptopt/error.hpp"

namespace adaptopt {

namespace {
    template <typename Plugins>
    void require_non_null(const Plugins& plugins, const char* what)
    {
        for (const auto& p : plugins) {
            if (!p) throw AssemblyError(std::string("null ") + what + " in plugin registry");
        }
    }

    std::string join(const std::vector<std::string>& items, std::string_view sep)
    {
        std::string out;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) out += sep;
            out += items[i];
        }
        return out;
    }
} // namespace

AssembledProblem AssembledProblem::assemble(const Workflow& base, PluginRegistry registry)
{
    require_non_null(registry.appenders, "appender");
    require_non_null(registry.manipulators, "manipulator");
    require_non_null(registry.primitive_calculators, "primitive calculator");
    require_non_null(registry.complex_calculators, "complex calculator");
    if (registry.manipulators.empty()) {
        throw AssemblyError("a problem needs at least one workflow manipulator");
    }

    try {
        validate_workflow(base);
    } catch (const ValidationError& e) {
        throw AssemblyError(std::string("base workflow is invalid: ") + e.what());
    }

    AssembledProblem problem;
    problem.index_map_ = enumerate_actions(base);

    Workflow current = base;
    for (const auto& appender : registry.appenders) {
        try {
            current = appender->append(std::move(current));
            validate_workflow(current);
        } catch (const Error& e) {
            throw AssemblyError("appender '" + appender->name() + "' failed: " + e.what());
        }
        for (const auto& id : problem.index_map_.ids()) {
            if (find_action(current, id) == nullptr) {
                throw AssemblyError("appender '" + appender->name() + "' removed enumerated action '" + id + "'");
            }
        }
    }
    problem.base_ = std::move(current);

    for (const auto& m : registry.manipulators) {
        problem.encoding_.push_back(m->encoding_spec(problem.base_, problem.index_map_));
    }
    if (auto issues = check_encoding_spec(problem.encoding_); !issues.empty()) {
        throw AssemblyError("invalid multi-encoding: " + join(issues, "; "));
    }

    for (const auto& c : registry.complex_calculators) {
        for (auto& spec : c->objective_specs()) problem.objectives_.push_back(std::move(spec));
    }
    for (const auto& c : registry.primitive_calculators) {
        problem.objectives_.push_back(c->objective_spec());
    }
    if (problem.objectives_.size() < 2) {
        throw AssemblyError("a multi-objective problem needs at least two objectives, got "
            + std::to_string(problem.objectives_.size()));
    }
    std::set<std::string> names;
    for (const auto& o : problem.objectives_) {
        if (!names.insert(o.name).second) {
            throw AssemblyError("duplicate objective name '" + o.name + "'");
        }
    }

    // Registration order settles overlapping writers; flag them so it is not a surprise.
    std::map<std::string, std::vector<std::string>> writers;
    for (const auto& a : registry.appenders) {
        for (const auto& k : a->property_keys()) writers[k].push_back("appender '" + a->name() + "'");
    }
    for (const auto& m : registry.manipulators) {
        for (const auto& k : m->property_keys()) writers[k].push_back("manipulator '" + m->name() + "'");
    }
    for (const auto& [key, who] : writers) {
        if (who.size() > 1) {
            problem.lint_.push_back("property '" + key + "' is written by " + join(who, ", ")
                + "; registration order applies (last writer wins)");
        }
    }

    problem.registry_ = std::move(registry);
    return problem;
}

Workflow AssembledProblem::decode(const Genotype& genotype) const
{
    if (auto violations = validate_genotype(encoding_, genotype); !violations.empty()) {
        throw EncodingError("genotype does not match encoding: " + join(violations, "; "));
    }
    Workflow w = base_;
    for (std::size_t i = 0; i < registry_.manipulators.size(); ++i) {
        w = registry_.manipulators[i]->manipulate(std::move(w), index_map_, genotype.parts[i]);
    }
    return w;
}

ObjectiveVector AssembledProblem::evaluate(const Genotype& genotype) const
{
    return evaluate_workflow(decode(genotype));
}

ObjectiveVector AssembledProblem::evaluate_workflow(const Workflow& workflow) const
{
    ObjectiveVector result;
    for (const auto& c : registry_.complex_calculators) {
        if (!c->check_precondition(workflow)) ++result.violations;
    }
    for (const auto& c : registry_.primitive_calculators) {
        if (!c->check_precondition(workflow)) ++result.violations;
    }
    if (result.violations > 0) {
        result.feasible = false;
        result.values.assign(objectives_.size(), std::numeric_limits<double>::infinity());
        return result;
    }

    result.values.reserve(objectives_.size());
    auto wrap = [](const std::string& calculator, const MissingPropertyError& e) {
        return EvaluationError("calculator '" + calculator + "': missing or mistyped property '" + e.key()
            + "' on element '" + e.element_id() + "'");
    };
    for (const auto& c : registry_.complex_calculators) {
        std::vector<double> values;
        try {
            values = c->calculate(workflow, index_map_);
        } catch (const MissingPropertyError& e) {
            throw wrap(c->name(), e);
        }
        if (values.size() != c->objective_specs().size()) {
            throw EvaluationError("calculator '" + c->name() + "' returned " + std::to_string(values.size())
                + " values for " + std::to_string(c->objective_specs().size()) + " objectives");
        }
        for (double v : values) result.values.push_back(v);
    }
    for (const auto& c : registry_.primitive_calculators) {
        try {
            result.values.push_back(c->calculate(workflow, index_map_));
        } catch (const MissingPropertyError& e) {
            throw wrap(c->name(), e);
        }
    }
    for (std::size_t i = 0; i < objectives_.size(); ++i) {
        if (objectives_[i].is_maximization) result.values[i] = -result.values[i];
    }
    return result;
}

std::vector<std::string> AssembledProblem::precondition_report(const Workflow& workflow) const
{
    std::vector<std::string> report;
    auto collect = [&](const auto& calculators) {
        for (const auto& c : calculators) {
            for (const auto& v : c->precondition_violations(workflow)) report.push_back(c->name() + ": " + v);
        }
    };
    collect(registry_.complex_calculators);
    collect(registry_.primitive_calculators);
    return report;
}

std::vector<double> AssembledProblem::reported_values(const ObjectiveVector& objectives) const
{
    std::vector<double> out = objectives.values;
    for (std::size_t i = 0; i < out.size() && i < objectives_.size(); ++i) {
        if (objectives_[i].is_maximization) out[i] = -out[i];
    }
    return out;
}

} // namespace adaptopt

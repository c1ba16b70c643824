#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "adaptopt/problem/encoding.hpp"
#include "adaptopt/problem/plugins.hpp"
#include "adaptopt/workflow/workflow.hpp"

namespace adaptopt {

// Objective values in the internal convention: every objective is minimized,
// maximized objectives are stored negated. Infeasible vectors hold +inf in every
// slot and count the calculators whose precondition failed.
struct ObjectiveVector {
    std::vector<double> values;
    bool feasible = true;
    std::size_t violations = 0;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// A base workflow plus registered plugins, turned into an evaluable
// multi-objective problem. Immutable after assembly; safe to share across
// threads.
class AssembledProblem {
public:
    // 1. enumerate actions of `base`
    // 2. apply each appender once, in registration order (last writer wins)
    // 3. collect sub-encodings from the manipulators, in registration order
    // 4. objectives: complex calculators' specs (flattened), then primitives'
    //
    // Throws AssemblyError on registry misuse or when an appender yields an
    // invalid workflow.
    static AssembledProblem assemble(const Workflow& base, PluginRegistry registry);

    const Workflow& base_workflow() const noexcept { return base_; }
    const ActionIndexMap& index_map() const noexcept { return index_map_; }
    const MultiEncodingSpec& encoding() const noexcept { return encoding_; }
    const std::vector<ObjectiveSpec>& objectives() const noexcept { return objectives_; }
    const PluginRegistry& registry() const noexcept { return registry_; }
    std::size_t num_objectives() const noexcept { return objectives_.size(); }

    // Warnings about plugins that declare the same property key.
    const std::vector<std::string>& lint_warnings() const noexcept { return lint_; }

    // Applies the manipulators to a private copy of the base workflow.
    // Throws EncodingError when the genotype does not conform.
    Workflow decode(const Genotype& genotype) const;

    ObjectiveVector evaluate(const Genotype& genotype) const;

    // Runs the calculators on an already manipulated workflow.
    ObjectiveVector evaluate_workflow(const Workflow& workflow) const;

    // Precondition failures of every calculator, prefixed with its name.
    std::vector<std::string> precondition_report(const Workflow& workflow) const;

    // Converts internal values back to each objective's declared direction.
    std::vector<double> reported_values(const ObjectiveVector& objectives) const;

private:
    AssembledProblem() = default;

    Workflow base_;
    ActionIndexMap index_map_;
    MultiEncodingSpec encoding_;
    std::vector<ObjectiveSpec> objectives_;
    PluginRegistry registry_;
    std::vector<std::string> lint_;
};

} // namespace adaptopt

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "adaptopt/problem/encoding.hpp"
#include "adaptopt/workflow/workflow.hpp"

namespace adaptopt {

struct ObjectiveSpec {
    std::string name;
    bool is_maximization = false;

    friend bool operator==(const ObjectiveSpec&, const ObjectiveSpec&) = default;
};

// Embeds one piece of meta-information (ideally one property) into a workflow.
class MetaInformationAppender {
public:
    virtual ~MetaInformationAppender() = default;

    virtual std::string name() const = 0;
    virtual std::string description() const = 0;
    // Property keys this plugin writes; used only to lint for overlapping writers.
    virtual std::vector<std::string> property_keys() const { return {}; }

    virtual Workflow append(Workflow workflow) const = 0;
};

// Applies one sub-value of the genotype to a workflow.
class WorkflowManipulator {
public:
    virtual ~WorkflowManipulator() = default;

    virtual std::string name() const = 0;
    virtual std::string description() const = 0;
    virtual std::vector<std::string> property_keys() const { return {}; }

    // The sub-encoding this manipulator consumes, sized against the meta-appended
    // base workflow and its action enumeration.
    virtual SubEncodingSpec encoding_spec(const Workflow& base, const ActionIndexMap& actions) const = 0;

    // Throws EncodingError when `value` does not fit encoding_spec().
    virtual Workflow manipulate(Workflow workflow, const ActionIndexMap& actions, const SubValue& value) const = 0;
};

class PrimitiveFitnessCalculator {
public:
    virtual ~PrimitiveFitnessCalculator() = default;

    virtual std::string name() const { return objective_spec().name; }
    virtual ObjectiveSpec objective_spec() const = 0;

    // Human-readable reasons the workflow is ineligible; empty means eligible.
    virtual std::vector<std::string> precondition_violations(const Workflow&) const { return {}; }
    bool check_precondition(const Workflow& workflow) const { return precondition_violations(workflow).empty(); }

    // May throw MissingPropertyError.
    virtual double calculate(const Workflow& workflow, const ActionIndexMap& actions) const = 0;
};

// Computes several objectives from a single traversal.
class ComplexFitnessCalculator {
public:
    virtual ~ComplexFitnessCalculator() = default;

    virtual std::string name() const = 0;
    virtual std::vector<ObjectiveSpec> objective_specs() const = 0;

    virtual std::vector<std::string> precondition_violations(const Workflow&) const { return {}; }
    bool check_precondition(const Workflow& workflow) const { return precondition_violations(workflow).empty(); }

    // Returns one value per objective_specs() entry. May throw MissingPropertyError.
    virtual std::vector<double> calculate(const Workflow& workflow, const ActionIndexMap& actions) const = 0;
};

// The four plugin lists; registration order is application order.
struct PluginRegistry {
    std::vector<std::shared_ptr<const MetaInformationAppender>> appenders;
    std::vector<std::shared_ptr<const WorkflowManipulator>> manipulators;
    std::vector<std::shared_ptr<const PrimitiveFitnessCalculator>> primitive_calculators;
    std::vector<std::shared_ptr<const ComplexFitnessCalculator>> complex_calculators;
};

} // namespace adaptopt

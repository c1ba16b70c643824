#include "adaptopt/cobot/plugins.hpp"

namespace adaptopt::cobot {

AssembledProblem build_cobot_problem(const Workflow& workflow, const InstanceTable& table)
{
    PluginRegistry registry;
    registry.appenders = metric_appenders(table);
    registry.manipulators = { cobot_flag_manipulator() };
    registry.complex_calculators = { makespan_ergonomics_calculator() };
    return AssembledProblem::assemble(workflow, std::move(registry));
}

} // namespace adaptopt::cobot

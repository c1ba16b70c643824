#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "adaptopt/cobot/instance_table.hpp"
#include "adaptopt/problem/plugins.hpp"
#include "adaptopt/problem/problem.hpp"

namespace adaptopt::cobot {

inline constexpr std::string_view execution_time_human_key = "ExecutionTimeHuman";
inline constexpr std::string_view cobot_execution_time_key = "CobotExecutionTime";
inline constexpr std::string_view ergonomic_penalty_human_key = "ErgonomicPenaltyHuman";
inline constexpr std::string_view is_cobot_utilized_key = "IsCobotUtilized";

inline constexpr std::string_view makespan_objective = "makespan_seconds";
inline constexpr std::string_view ergonomic_penalty_objective = "ergonomic_penalty";

// Four appenders, one property each: ExecutionTimeHuman (real),
// CobotExecutionTime (real) and ErgonomicPenaltyHuman (int) on every leaf
// action, and IsCobotUtilized=false on every action. The three table-backed
// appenders fail at append time when the table does not match the workflow.
std::vector<std::shared_ptr<const MetaInformationAppender>> metric_appenders(InstanceTable table);

// Bit i of a length-n bit vector sets IsCobotUtilized on enumerated action i.
std::shared_ptr<const WorkflowManipulator> cobot_flag_manipulator();

// Restricts a calculator to some actions and prefixes its objective names, so
// several independent stations can share one workflow.
struct CalculatorScope {
    std::string objective_prefix;
    std::vector<std::string> action_ids; // empty: every leaf action
};

// (makespan, ergonomic penalty), both minimized. Makespan is the serial sum of
// the chosen executor's durations; the penalty counts only human-executed actions.
std::shared_ptr<const ComplexFitnessCalculator> makespan_ergonomics_calculator(CalculatorScope scope = {});

// 4 appenders, 1 manipulator, 1 complex calculator.
AssembledProblem build_cobot_problem(const Workflow& workflow, const InstanceTable& table);

// Per-action view of a manipulated workflow.
struct ActionAssignment {
    std::string action_id;
    std::string name;
    bool cobot = false;
    double human_time_s = 0.0;
    double cobot_time_s = 0.0;
    std::int64_t ergonomic_penalty = 0;
};

// Leaf actions carrying all four metric properties, in document order.
std::vector<ActionAssignment> assignments(const Workflow& workflow);

} // namespace adaptopt::cobot

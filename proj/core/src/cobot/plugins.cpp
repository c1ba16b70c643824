#include "adaptopt/cobot/plugins.hpp"

#include <algorithm>

#include "adaptopt/error.hpp"

namespace adaptopt::cobot {

namespace {

    void require_matching_table(const InstanceTable& table, const Workflow& workflow)
    {
        auto violations = check_instance_table(table, workflow);
        if (violations.empty()) return;
        std::string message = violations.front().message;
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (i > 0) message += "; " + violations[i].message;
            ids.insert(ids.end(), violations[i].ids.begin(), violations[i].ids.end());
        }
        throw ValidationError(message, std::move(ids));
    }

    // Writes one table column as a property on each listed leaf action.
    class TableAppender final : public MetaInformationAppender {
    public:
        enum class Column { HumanTime, CobotTime, Penalty };

        TableAppender(std::shared_ptr<const InstanceTable> table, Column column)
            : table_(std::move(table))
            , column_(column)
        {
        }

        std::string name() const override { return std::string(key()) + "Appender"; }

        std::string description() const override
        {
            switch (column_) {
            case Column::HumanTime: return "Execution time of each action when performed by the human worker [s].";
            case Column::CobotTime: return "Execution time of each action when performed by the cobot [s].";
            case Column::Penalty: return "Ergonomic penalty (1-3, higher is worse) for the human worker.";
            }
            return {};
        }

        std::vector<std::string> property_keys() const override { return { std::string(key()) }; }

        Workflow append(Workflow workflow) const override
        {
            require_matching_table(*table_, workflow);
            for (const auto& row : table_->rows) {
                auto& props = find_action(workflow, row.action_id)->properties;
                switch (column_) {
                case Column::HumanTime:
                    upsert_property(props, Property::real(std::string(key()), row.human_time_s));
                    break;
                case Column::CobotTime:
                    upsert_property(props, Property::real(std::string(key()), row.cobot_time_s));
                    break;
                case Column::Penalty:
                    upsert_property(props, Property::integer(std::string(key()), row.ergonomic_penalty));
                    break;
                }
            }
            return workflow;
        }

    private:
        std::string_view key() const
        {
            switch (column_) {
            case Column::HumanTime: return execution_time_human_key;
            case Column::CobotTime: return cobot_execution_time_key;
            case Column::Penalty: return ergonomic_penalty_human_key;
            }
            return {};
        }

        std::shared_ptr<const InstanceTable> table_;
        Column column_;
    };

    class CobotFlagAppender final : public MetaInformationAppender {
    public:
        std::string name() const override { return "IsCobotUtilizedAppender"; }
        std::string description() const override { return "Marks every action as executed by the human (cobot unused)."; }
        std::vector<std::string> property_keys() const override { return { std::string(is_cobot_utilized_key) }; }

        Workflow append(Workflow workflow) const override
        {
            for (auto& a : workflow.actions) {
                upsert_property(a.properties, Property::boolean(std::string(is_cobot_utilized_key), false));
            }
            return workflow;
        }
    };

    class CobotFlagManipulator final : public WorkflowManipulator {
    public:
        std::string name() const override { return "CobotFlagManipulator"; }
        std::string description() const override
        {
            return "Assigns each enumerated action to the cobot (bit set) or the human worker (bit clear).";
        }
        std::vector<std::string> property_keys() const override { return { std::string(is_cobot_utilized_key) }; }

        SubEncodingSpec encoding_spec(const Workflow&, const ActionIndexMap& actions) const override
        {
            return SubEncodingSpec::binary("cobot_assignment", actions.size());
        }

        Workflow manipulate(Workflow workflow, const ActionIndexMap& actions, const SubValue& value) const override
        {
            const auto* bits = std::get_if<BinaryValue>(&value);
            if (bits == nullptr) throw EncodingError(name() + " expects a bit vector");
            if (bits->bits.size() != actions.size()) {
                throw EncodingError(name() + ": bit vector of length " + std::to_string(bits->bits.size())
                    + " for " + std::to_string(actions.size()) + " actions");
            }
            for (std::size_t i = 0; i < actions.size(); ++i) {
                const auto& id = actions.id_at(i);
                ActionNode* action = i < workflow.actions.size() && workflow.actions[i].id == id ? &workflow.actions[i]
                                                                                               : find_action(workflow, id);
                if (action == nullptr) throw LookupError("enumerated action '" + id + "' missing from workflow");
                upsert_property(action->properties, Property::boolean(std::string(is_cobot_utilized_key), bits->bits[i]));
            }
            return workflow;
        }
    };

    struct Metrics {
        double human_time;
        double cobot_time;
        std::int64_t penalty;
        bool cobot;
    };

    // nullopt when any of the four properties is missing or mistyped; `missing`
    // receives the first offending key.
    std::optional<Metrics> read_metrics(const ActionNode& a, std::string_view* missing = nullptr)
    {
        auto fail = [&](std::string_view key) -> std::optional<Metrics> {
            if (missing) *missing = key;
            return std::nullopt;
        };
        const auto* h = find_property(a.properties, execution_time_human_key);
        if (h == nullptr || h->as_real() == nullptr) return fail(execution_time_human_key);
        const auto* c = find_property(a.properties, cobot_execution_time_key);
        if (c == nullptr || c->as_real() == nullptr) return fail(cobot_execution_time_key);
        const auto* p = find_property(a.properties, ergonomic_penalty_human_key);
        if (p == nullptr || p->as_int() == nullptr) return fail(ergonomic_penalty_human_key);
        const auto* u = find_property(a.properties, is_cobot_utilized_key);
        if (u == nullptr || u->as_bool() == nullptr) return fail(is_cobot_utilized_key);
        return Metrics { *h->as_real(), *c->as_real(), *p->as_int(), *u->as_bool() };
    }

    class MakespanErgonomicsCalculator final : public ComplexFitnessCalculator {
    public:
        explicit MakespanErgonomicsCalculator(CalculatorScope scope)
            : scope_(std::move(scope))
        {
        }

        std::string name() const override { return scope_.objective_prefix + "MakespanErgonomicsCalculator"; }

        std::vector<ObjectiveSpec> objective_specs() const override
        {
            return { { scope_.objective_prefix + std::string(makespan_objective), false },
                { scope_.objective_prefix + std::string(ergonomic_penalty_objective), false } };
        }

        std::vector<std::string> precondition_violations(const Workflow& workflow) const override
        {
            std::vector<std::string> out;
            for_each_action(workflow, [&](const std::string& id, const ActionNode* a) {
                if (a == nullptr) {
                    out.push_back("action '" + id + "' not found");
                    return;
                }
                std::string_view missing;
                if (!read_metrics(*a, &missing)) {
                    out.push_back("action '" + id + "' lacks a well-typed " + std::string(missing));
                }
            });
            return out;
        }

        std::vector<double> calculate(const Workflow& workflow, const ActionIndexMap&) const override
        {
            double makespan = 0.0;
            double penalty = 0.0;
            for_each_action(workflow, [&](const std::string& id, const ActionNode* a) {
                if (a == nullptr) throw LookupError("action '" + id + "' not found");
                std::string_view missing;
                auto m = read_metrics(*a, &missing);
                if (!m) throw MissingPropertyError(id, std::string(missing));
                makespan += m->cobot ? m->cobot_time : m->human_time;
                penalty += m->cobot ? 0.0 : static_cast<double>(m->penalty);
            });
            return { makespan, penalty };
        }

    private:
        template <typename F>
        void for_each_action(const Workflow& workflow, F&& f) const
        {
            if (scope_.action_ids.empty()) {
                for (const auto& a : workflow.actions) {
                    if (!a.is_composite()) f(a.id, &a);
                }
            } else {
                for (const auto& id : scope_.action_ids) f(id, find_action(workflow, id));
            }
        }

        CalculatorScope scope_;
    };

} // namespace

std::vector<std::shared_ptr<const MetaInformationAppender>> metric_appenders(InstanceTable table)
{
    auto shared = std::make_shared<const InstanceTable>(std::move(table));
    return {
        std::make_shared<TableAppender>(shared, TableAppender::Column::HumanTime),
        std::make_shared<TableAppender>(shared, TableAppender::Column::Penalty),
        std::make_shared<TableAppender>(shared, TableAppender::Column::CobotTime),
        std::make_shared<CobotFlagAppender>(),
    };
}

std::shared_ptr<const WorkflowManipulator> cobot_flag_manipulator()
{
    return std::make_shared<CobotFlagManipulator>();
}

std::shared_ptr<const ComplexFitnessCalculator> makespan_ergonomics_calculator(CalculatorScope scope)
{
    return std::make_shared<MakespanErgonomicsCalculator>(std::move(scope));
}

std::vector<ActionAssignment> assignments(const Workflow& workflow)
{
    std::vector<ActionAssignment> out;
    for (const auto& a : workflow.actions) {
        if (a.is_composite()) continue;
        auto m = read_metrics(a);
        if (!m) continue;
        out.push_back({ a.id, a.name, m->cobot, m->human_time, m->cobot_time, m->penalty });
    }
    return out;
}

} // namespace adaptopt::cobot

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "adaptopt/workflow/workflow.hpp"

namespace adaptopt::cobot {

// Measured metrics of one leaf action: MTM-style durations in seconds and a
// MURI-style ergonomic ordinal (1..3, higher is worse).
struct InstanceRow {
    std::string action_id;
    double human_time_s = 0.0;
    double cobot_time_s = 0.0;
    std::int64_t ergonomic_penalty = 1;

    friend bool operator==(const InstanceRow&, const InstanceRow&) = default;
};

struct InstanceTable {
    std::vector<InstanceRow> rows;

    const InstanceRow* find(std::string_view action_id) const noexcept;

    friend bool operator==(const InstanceTable&, const InstanceTable&) = default;
};

inline constexpr std::string_view instance_table_header = "action_id,human_time_s,cobot_time_s,ergonomic_penalty";

// CSV with the exact header above, '.' decimal separator, one row per line.
// Throws ParseError (1-based line, column of the offending field).
InstanceTable parse_instance_table(std::string_view csv);
std::string serialize_instance_table(const InstanceTable& table);
InstanceTable load_instance_table(const std::filesystem::path& path);

// Every mismatch between table and workflow: duplicate rows, rows for unknown or
// composite actions, leaf actions without a row. Each message names the id.
std::vector<Violation> check_instance_table(const InstanceTable& table, const Workflow& workflow);

} // namespace adaptopt::cobot

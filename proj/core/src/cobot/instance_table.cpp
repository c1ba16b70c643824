#include "adaptopt/cobot/instance_table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>

#include "adaptopt/error.hpp"
#include "adaptopt/workflow/xml.hpp"

namespace adaptopt::cobot {

const InstanceRow* InstanceTable::find(std::string_view action_id) const noexcept
{
    auto it = std::find_if(rows.begin(), rows.end(), [&](const InstanceRow& r) { return r.action_id == action_id; });
    return it == rows.end() ? nullptr : &*it;
}

namespace {
    std::vector<std::string_view> split(std::string_view line)
    {
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return fields;
    }

    std::size_t column_of(const std::vector<std::string_view>& fields, std::size_t index)
    {
        std::size_t col = 1;
        for (std::size_t i = 0; i < index; ++i) col += fields[i].size() + 1;
        return col;
    }

    std::string number_text(double v)
    {
        std::array<char, 64> buf {};
        auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
        return std::string(buf.data(), ptr);
    }
} // namespace

InstanceTable parse_instance_table(std::string_view csv)
{
    InstanceTable table;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        auto end = csv.find('\n', pos);
        auto line = csv.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? csv.size() + 1 : end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (!header_seen) {
            if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
            if (line != instance_table_header) {
                throw ParseError("expected header '" + std::string(instance_table_header) + "'", line_no, 1);
            }
            header_seen = true;
            continue;
        }

        const auto fields = split(line);
        if (fields.size() != 4) {
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), line_no, 1);
        }
        InstanceRow row;
        row.action_id = std::string(fields[0]);
        if (row.action_id.empty()) throw ParseError("empty action_id", line_no, 1);

        auto parse_time = [&](std::size_t index) {
            double v {};
            const auto f = fields[index];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc {} || ptr != f.data() + f.size() || !std::isfinite(v) || v < 0.0) {
                throw ParseError("invalid duration '" + std::string(f) + "' (non-negative seconds expected)", line_no,
                    column_of(fields, index));
            }
            return v;
        };
        row.human_time_s = parse_time(1);
        row.cobot_time_s = parse_time(2);

        const auto f = fields[3];
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row.ergonomic_penalty);
        if (f.empty() || ec != std::errc {} || ptr != f.data() + f.size() || row.ergonomic_penalty < 1
            || row.ergonomic_penalty > 3) {
            throw ParseError("invalid ergonomic penalty '" + std::string(f) + "' (1, 2 or 3 expected)", line_no,
                column_of(fields, 3));
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError("missing header", 1, 1);
    return table;
}

std::string serialize_instance_table(const InstanceTable& table)
{
    std::string out(instance_table_header);
    out += '\n';
    for (const auto& r : table.rows) {
        out += r.action_id + ',' + number_text(r.human_time_s) + ',' + number_text(r.cobot_time_s) + ','
            + std::to_string(r.ergonomic_penalty) + '\n';
    }
    return out;
}

InstanceTable load_instance_table(const std::filesystem::path& path)
{
    return parse_instance_table(read_text_file(path));
}

std::vector<Violation> check_instance_table(const InstanceTable& table, const Workflow& workflow)
{
    std::vector<Violation> out;
    std::set<std::string_view> seen;
    for (const auto& r : table.rows) {
        if (!seen.insert(r.action_id).second) {
            out.push_back({ "instance table has duplicate rows for action '" + r.action_id + "'", { r.action_id } });
            continue;
        }
        const auto* action = find_action(workflow, r.action_id);
        if (action == nullptr) {
            out.push_back({ "instance table row for unknown action '" + r.action_id + "'", { r.action_id } });
        } else if (action->is_composite()) {
            out.push_back({ "instance table row for composite action '" + r.action_id + "'", { r.action_id } });
        }
    }
    for (const auto& a : workflow.actions) {
        if (!a.is_composite() && !seen.contains(a.id)) {
            out.push_back({ "instance table has no row for action '" + a.id + "'", { a.id } });
        }
    }
    return out;
}

} // namespace adaptopt::cobot

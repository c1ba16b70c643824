#include "adaptopt/service/commands.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <ostream>
#include <sstream>

#include "adaptopt/cobot/instance_table.hpp"
#include "adaptopt/cobot/plugins.hpp"
#include "adaptopt/error.hpp"
#include "adaptopt/moea/algorithm.hpp"
#include "adaptopt/moea/oracle.hpp"
#include "adaptopt/service/artifact.hpp"
#include "adaptopt/service/http_server.hpp"
#include "adaptopt/workflow/xml.hpp"

namespace adaptopt::service {

namespace fs = std::filesystem;

std::string default_run_id(std::uint64_t seed)
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc {};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &utc);
    return std::string(stamp) + "-s" + std::to_string(seed);
}

AssembledProblem load_cobot_problem(RunConfig& config)
{
    const auto workflow = load_workflow(config.workflow_path);
    const auto table = cobot::load_instance_table(config.instance_table_path);
    auto problem = cobot::build_cobot_problem(workflow, table);
    if (!config.algorithm.hypervolume_reference && problem.num_objectives() == 2) {
        double time = 0.0;
        double penalty = 0.0;
        for (const auto& row : table.rows) {
            time += std::max(row.human_time_s, row.cobot_time_s);
            penalty += static_cast<double>(row.ergonomic_penalty);
        }
        config.algorithm.hypervolume_reference = std::vector<double> { time + 1.0, penalty + 1.0 };
    }
    return problem;
}

int cmd_validate(const fs::path& workflow_path, std::ostream& out, std::ostream& err)
{
    std::string text;
    try {
        text = read_text_file(workflow_path);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        const auto workflow = parse_workflow_unchecked(text);
        const auto violations = check_workflow(workflow);
        if (violations.empty()) {
            out << workflow_path.string() << ": ok (" << workflow.actions.size() << " actions, " << workflow.assets.size()
                << " assets, " << workflow.decisions.size() << " decisions, " << workflow.relationships.size()
                << " relationships)\n";
            return exit_ok;
        }
        err << workflow_path.string() << ": " << violations.size() << " violation(s)\n";
        for (const auto& v : violations) err << "  " << v.message << "\n";
        return exit_failure;
    } catch (const ParseError& e) {
        err << workflow_path.string() << ": " << e.what() << "\n";
        return exit_failure;
    }
}

namespace {
    // Shared failure mapping for commands that start from a config file.
    template <typename F>
    int guarded(std::ostream& err, F&& body)
    {
        try {
            return body();
        } catch (const ConfigError& e) {
            err << "config error: " << e.what() << "\n";
            return exit_usage;
        } catch (const IoError& e) {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return exit_failure;
        }
    }
} // namespace

int cmd_optimize(const fs::path& config_path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        auto config = load_run_config(config_path);
        const auto run_id = config.run_id.value_or(default_run_id(config.algorithm.seed));
        if (fs::exists(config.output_dir / run_id)) {
            throw IoError("run directory '" + (config.output_dir / run_id).string() + "' already exists");
        }
        const auto problem = load_cobot_problem(config);
        for (const auto& w : problem.lint_warnings()) err << "warning: " << w << "\n";

        std::ostringstream stats;
        const auto result = run_algorithm(problem, config.algorithm, &stats);
        for (const auto& w : result.warnings) err << "warning: " << w << "\n";

        const auto dir = publish_run(config.output_dir, run_id, problem, result.archive,
            std::string(to_string(config.algorithm.algorithm)), { config_snapshot_json(config, run_id), stats.str() });
        err << "wrote " << result.archive.size() << " solution(s) to " << dir.string() << "\n";
        out << run_id << "\n";
        return int(exit_ok);
    });
}

int write_oracle(const AssembledProblem& problem, const fs::path& output_dir, const std::string& run_id,
    std::ostream& out, std::ostream& err)
{
    ParetoArchive front;
    try {
        front = brute_force_front(problem);
    } catch (const ContractError& e) {
        err << "oracle refused: " << e.what() << "\n";
        return exit_failure;
    }
    const auto entries = front.sorted_entries();
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create '" + output_dir.string() + "': " + ec.message());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        save_workflow(problem.decode(entries[k].genotype), output_dir / solution_file_name(k, "oracle_solution_"));
    }
    write_text_file(output_dir / oracle_front_file, front_json(problem, entries, run_id, "brute_force", "oracle_solution_"));
    out << (output_dir / oracle_front_file).string() << "\n";
    err << entries.size() << " Pareto-optimal solution(s)\n";
    return exit_ok;
}

int cmd_oracle(const fs::path& config_path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        auto config = load_run_config(config_path);
        const auto problem = load_cobot_problem(config);
        return write_oracle(problem, config.output_dir, config.run_id.value_or("oracle"), out, err);
    });
}

int cmd_serve(const fs::path& runs_dir, std::uint16_t port, const std::optional<fs::path>& static_dir, std::ostream& out,
    std::ostream& err)
{
    if (!fs::is_directory(runs_dir)) {
        err << "error: runs directory '" << runs_dir.string() << "' does not exist\n";
        return exit_usage;
    }
    if (static_dir && !fs::is_directory(*static_dir)) {
        err << "error: static directory '" << static_dir->string() << "' does not exist\n";
        return exit_usage;
    }
    RunServer server(runs_dir, static_dir);
    const int bound = server.bind("0.0.0.0", port);
    if (bound <= 0) {
        err << "error: cannot bind port " << port << "\n";
        return exit_usage;
    }
    out << "serving " << runs_dir.string() << " on http://0.0.0.0:" << bound << "\n" << std::flush;
    server.listen();
    return exit_ok;
}

} // namespace adaptopt::service

#include <iostream>

#include "CLI11.hpp"
#include "adaptopt/service/commands.hpp"

int main(int argc, char** argv)
{
    using namespace adaptopt::service;

    CLI::App app { "Multi-objective optimization of ADAPT workflows" };
    app.require_subcommand(1);

    std::string workflow;
    auto* validate = app.add_subcommand("validate", "Check a workflow XML file");
    validate->add_option("workflow", workflow, "Workflow XML file")->required();

    std::string config;
    auto* optimize = app.add_subcommand("optimize", "Run an optimization and publish its artifacts");
    optimize->add_option("-c,--config", config, "Run configuration file")->required();

    auto* oracle = app.add_subcommand("oracle", "Enumerate the exact Pareto front of a small binary problem");
    oracle->add_option("-c,--config", config, "Run configuration file")->required();

    std::string runs_dir;
    std::uint16_t port = 8080;
    std::string static_dir;
    auto* serve = app.add_subcommand("serve", "Serve published runs over HTTP (read-only)");
    serve->add_option("-d,--dir", runs_dir, "Runs directory")->required();
    serve->add_option("-p,--port", port, "TCP port")->capture_default_str();
    serve->add_option("--static", static_dir, "Directory of static UI assets served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*validate) return cmd_validate(workflow, std::cout, std::cerr);
    if (*optimize) return cmd_optimize(config, std::cout, std::cerr);
    if (*oracle) return cmd_oracle(config, std::cout, std::cerr);
    std::optional<std::filesystem::path> assets;
    if (!static_dir.empty()) assets = static_dir;
    return cmd_serve(runs_dir, port, assets, std::cout, std::cerr);
}

#include "adaptopt/service/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "adaptopt/error.hpp"
#include "adaptopt/workflow/xml.hpp"
#include "json.hpp"

namespace adaptopt::service {

namespace {
    namespace pt = boost::property_tree;

    std::string trim(std::string_view s)
    {
        const auto first = s.find_first_not_of(" \t");
        if (first == std::string_view::npos) return {};
        const auto last = s.find_last_not_of(" \t");
        return std::string(s.substr(first, last - first + 1));
    }

    template <typename T>
    T parse_number(const std::string& key, const std::string& text)
    {
        T value {};
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (text.empty() || ec != std::errc {} || ptr != text.data() + text.size()) {
            throw ConfigError("invalid value '" + text + "' for '" + key + "'");
        }
        if constexpr (std::is_floating_point_v<T>) {
            if (!std::isfinite(value)) throw ConfigError("invalid value '" + text + "' for '" + key + "'");
        }
        return value;
    }

    std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value)
    {
        std::filesystem::path p(value);
        return p.is_absolute() ? p : (base / p).lexically_normal();
    }
} // namespace

bool is_valid_run_id(std::string_view id) noexcept
{
    if (id.empty() || id.size() > 128 || id.front() == '.') return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_'
            || c == '.';
    });
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir)
{
    pt::ptree tree;
    try {
        std::istringstream in { std::string(text) };
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    RunConfig config;
    bool have_workflow = false;
    bool have_table = false;
    bool have_output = false;

    static const std::set<std::string> algorithm_keys = { "name", "population_size", "generations", "seed",
        "crossover_rate", "mutation_rate", "reference_divisions", "threads", "hypervolume_reference", "sbx_eta",
        "pm_eta" };

    for (const auto& [key, node] : tree) {
        if (node.empty()) {
            const auto value = trim(node.data());
            if (key == "workflow") {
                config.workflow_path = resolve(base_dir, value);
                have_workflow = true;
            } else if (key == "instance_table") {
                config.instance_table_path = resolve(base_dir, value);
                have_table = true;
            } else if (key == "output_dir") {
                config.output_dir = resolve(base_dir, value);
                have_output = true;
            } else if (key == "run_id") {
                if (!is_valid_run_id(value)) throw ConfigError("invalid run_id '" + value + "'");
                config.run_id = value;
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
            continue;
        }
        if (key != "algorithm") throw ConfigError("unknown config section [" + key + "]");

        auto& a = config.algorithm;
        for (const auto& [akey, anode] : node) {
            if (!algorithm_keys.contains(akey)) throw ConfigError("unknown key '" + akey + "' in [algorithm]");
            const auto value = trim(anode.data());
            if (akey == "name") {
                auto alg = parse_algorithm(value);
                if (!alg) throw ConfigError("unknown algorithm '" + value + "' (nsga2 or nsga3)");
                a.algorithm = *alg;
            } else if (akey == "population_size") {
                a.population_size = parse_number<std::size_t>(akey, value);
            } else if (akey == "generations") {
                a.generations = parse_number<std::size_t>(akey, value);
            } else if (akey == "seed") {
                a.seed = parse_number<std::uint64_t>(akey, value);
            } else if (akey == "crossover_rate") {
                a.crossover_rate = parse_number<double>(akey, value);
            } else if (akey == "mutation_rate") {
                if (value == "1/n") {
                    a.mutation_rate_per_gene.reset();
                } else {
                    a.mutation_rate_per_gene = parse_number<double>(akey, value);
                }
            } else if (akey == "reference_divisions") {
                if (value == "auto") {
                    a.reference_divisions.reset();
                } else {
                    a.reference_divisions = parse_number<std::size_t>(akey, value);
                }
            } else if (akey == "threads") {
                a.threads = parse_number<std::size_t>(akey, value);
            } else if (akey == "hypervolume_reference") {
                std::vector<double> ref;
                std::size_t start = 0;
                while (start <= value.size()) {
                    auto comma = value.find(',', start);
                    auto part = trim(std::string_view(value).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
                    ref.push_back(parse_number<double>(akey, part));
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
                a.hypervolume_reference = std::move(ref);
            } else if (akey == "sbx_eta") {
                a.sbx_distribution_index = parse_number<double>(akey, value);
            } else if (akey == "pm_eta") {
                a.polynomial_distribution_index = parse_number<double>(akey, value);
            }
        }
    }

    if (!have_workflow) throw ConfigError("missing 'workflow'");
    if (!have_table) throw ConfigError("missing 'instance_table'");
    if (!have_output) throw ConfigError("missing 'output_dir'");
    validate_config(config.algorithm);
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    auto config = parse_run_config(read_text_file(path), std::filesystem::absolute(path).parent_path());
    for (const auto& input : { config.workflow_path, config.instance_table_path }) {
        if (!std::filesystem::is_regular_file(input)) {
            throw IoError("input file '" + input.string() + "' does not exist");
        }
    }
    return config;
}

std::string config_snapshot_json(const RunConfig& config, const std::string& run_id)
{
    const auto& a = config.algorithm;
    nlohmann::ordered_json j;
    j["run_id"] = run_id;
    j["workflow"] = config.workflow_path.string();
    j["instance_table"] = config.instance_table_path.string();
    j["output_dir"] = config.output_dir.string();
    auto& alg = j["algorithm"];
    alg["name"] = std::string(to_string(a.algorithm));
    alg["population_size"] = a.population_size;
    alg["generations"] = a.generations;
    alg["seed"] = a.seed;
    alg["crossover_rate"] = a.crossover_rate;
    if (a.mutation_rate_per_gene) {
        alg["mutation_rate"] = *a.mutation_rate_per_gene;
    } else {
        alg["mutation_rate"] = "1/n";
    }
    if (a.reference_divisions) {
        alg["reference_divisions"] = *a.reference_divisions;
    } else {
        alg["reference_divisions"] = "auto";
    }
    alg["threads"] = a.threads;
    if (a.hypervolume_reference) alg["hypervolume_reference"] = *a.hypervolume_reference;
    alg["sbx_eta"] = a.sbx_distribution_index;
    alg["pm_eta"] = a.polynomial_distribution_index;
    return j.dump(2) + "\n";
}

} // namespace adaptopt::service

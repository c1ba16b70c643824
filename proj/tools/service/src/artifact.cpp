#include "adaptopt/service/artifact.hpp"

#include <fstream>
#include <system_error>

#include "adaptopt/error.hpp"
#include "adaptopt/workflow/xml.hpp"
#include "json.hpp"

namespace adaptopt::service {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string solution_file_name(std::size_t index, const std::string& prefix)
{
    return prefix + std::to_string(index) + ".xml";
}

namespace {
    ordered_json genotype_value(const MultiEncodingSpec& spec, const Genotype& genotype)
    {
        ordered_json j = ordered_json::object();
        for (std::size_t i = 0; i < spec.size() && i < genotype.parts.size(); ++i) {
            const auto& part = genotype.parts[i];
            if (const auto* b = std::get_if<BinaryValue>(&part)) {
                j[spec[i].name] = to_bit_string(*b);
            } else if (const auto* r = std::get_if<RealValue>(&part)) {
                j[spec[i].name] = r->values;
            } else {
                j[spec[i].name] = std::get<PermutationValue>(part).order;
            }
        }
        return j;
    }
} // namespace

std::string genotype_json(const MultiEncodingSpec& spec, const Genotype& genotype)
{
    return genotype_value(spec, genotype).dump();
}

std::string front_json(const AssembledProblem& problem, const std::vector<ArchiveEntry>& entries,
    const std::string& run_id, const std::string& algorithm, const std::string& file_prefix)
{
    ordered_json j;
    j["run_id"] = run_id;
    j["algorithm"] = algorithm;
    j["objectives"] = ordered_json::array();
    for (const auto& o : problem.objectives()) {
        j["objectives"].push_back({ { "name", o.name }, { "direction", o.is_maximization ? "maximize" : "minimize" } });
    }
    j["solutions"] = ordered_json::array();
    for (std::size_t k = 0; k < entries.size(); ++k) {
        ordered_json s;
        s["index"] = k;
        s["genotype"] = genotype_value(problem.encoding(), entries[k].genotype);
        s["objectives"] = problem.reported_values(entries[k].objectives);
        s["workflow_file"] = solution_file_name(k, file_prefix);
        j["solutions"].push_back(std::move(s));
    }
    return j.dump(2) + "\n";
}

fs::path publish_run(const fs::path& output_dir, const std::string& run_id, const AssembledProblem& problem,
    const ParetoArchive& archive, const std::string& algorithm, const ArtifactFiles& files)
{
    const auto final_dir = output_dir / run_id;
    const auto tmp_dir = output_dir / ("." + run_id + ".tmp");
    std::error_code ec;
    if (fs::exists(final_dir, ec)) throw IoError("run directory '" + final_dir.string() + "' already exists");
    fs::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create '" + output_dir.string() + "': " + ec.message());
    fs::remove_all(tmp_dir, ec);
    fs::create_directory(tmp_dir, ec);
    if (ec) throw IoError("cannot create '" + tmp_dir.string() + "': " + ec.message());

    try {
        const auto entries = archive.sorted_entries();
        for (std::size_t k = 0; k < entries.size(); ++k) {
            save_workflow(problem.decode(entries[k].genotype), tmp_dir / solution_file_name(k));
        }
        write_text_file(tmp_dir / front_file, front_json(problem, entries, run_id, algorithm));
        write_text_file(tmp_dir / stats_file, files.stats_jsonl);
        write_text_file(tmp_dir / config_file, files.config_json);
    } catch (...) {
        fs::remove_all(tmp_dir, ec);
        throw;
    }

    fs::rename(tmp_dir, final_dir, ec);
    if (ec) {
        fs::remove_all(tmp_dir);
        throw IoError("cannot publish '" + final_dir.string() + "': " + ec.message());
    }
    return final_dir;
}

std::vector<std::string> verify_front(const fs::path& dir, const AssembledProblem& problem, const std::string& front_name)
{
    std::vector<std::string> problems;
    const auto doc = ordered_json::parse(read_text_file(dir / front_name));
    for (const auto& s : doc.at("solutions")) {
        const auto index = s.at("index").get<std::size_t>();
        const auto file = s.at("workflow_file").get<std::string>();
        const auto stored = s.at("objectives").get<std::vector<double>>();
        const auto text = read_text_file(dir / file);
        const auto workflow = parse_workflow(text);
        const auto recomputed = problem.reported_values(problem.evaluate_workflow(workflow));
        if (recomputed != stored) {
            problems.push_back("solution " + std::to_string(index) + ": stored objectives " + ordered_json(stored).dump()
                + " but " + file + " evaluates to " + ordered_json(recomputed).dump());
        }
        if (serialize_workflow(workflow) != text) {
            problems.push_back("solution " + std::to_string(index) + ": " + file + " is not in canonical form");
        }
    }
    return problems;
}

} // namespace adaptopt::service

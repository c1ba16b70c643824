#include "doctest.h"

#include <fstream>
#include <sstream>
#include <thread>

#include "adaptopt/cobot/plugins.hpp"
#include "adaptopt/error.hpp"
#include "adaptopt/service/artifact.hpp"
#include "adaptopt/service/commands.hpp"
#include "adaptopt/service/http_server.hpp"
#include "adaptopt/service/run_config.hpp"
#include "adaptopt/workflow/xml.hpp"
#include "httplib.h"
#include "json.hpp"
#include "support.hpp"

using namespace adaptopt;
using namespace adaptopt::service;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

template <typename F>
Outcome capture(F&& f)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = f(out, err);
    return { code, out.str(), err.str() };
}

// A scratch directory holding W3 inputs and a config pointing at them.
fs::path w3_setup(const std::string& name, const std::string& algorithm_section)
{
    const auto dir = adaptopt::testing::scratch_dir(name);
    fs::copy_file(ADAPTOPT_DATA_DIR "/w3.xml", dir / "w3.xml");
    fs::copy_file(ADAPTOPT_DATA_DIR "/w3.csv", dir / "w3.csv");
    write_text_file(dir / "run.cfg",
        "workflow = w3.xml\ninstance_table = w3.csv\noutput_dir = runs\nrun_id = fixed\n\n[algorithm]\n" + algorithm_section);
    return dir;
}

const std::string nsga2_section = "name = nsga2\npopulation_size = 20\ngenerations = 30\nseed = 42\n";

std::vector<std::vector<double>> front_values(const json& front)
{
    std::vector<std::vector<double>> v;
    for (const auto& s : front.at("solutions")) v.push_back(s.at("objectives").get<std::vector<double>>());
    std::sort(v.begin(), v.end());
    return v;
}

const std::vector<std::vector<double>> w3_front = { { 45, 6 }, { 60, 3 }, { 75, 1 }, { 95, 0 } };

} // namespace

TEST_SUITE("run config")
{
    TEST_CASE("full config")
    {
        const auto c = parse_run_config(R"(# comment
workflow = w.xml
instance_table = /abs/t.csv
output_dir = out
; another comment
[algorithm]
name = nsga3
population_size = 92
generations = 50
seed = 18446744073709551615
crossover_rate = 1
mutation_rate = 0.05
reference_divisions = 12
threads = 2
hypervolume_reference = 100, 7
sbx_eta = 10
pm_eta = 30
)",
            "/base");
        CHECK(c.workflow_path == fs::path("/base/w.xml"));
        CHECK(c.instance_table_path == fs::path("/abs/t.csv"));
        CHECK(c.output_dir == fs::path("/base/out"));
        CHECK_FALSE(c.run_id.has_value());
        CHECK(c.algorithm.algorithm == Algorithm::NSGA3);
        CHECK(c.algorithm.population_size == 92);
        CHECK(c.algorithm.seed == 18446744073709551615ULL);
        CHECK(c.algorithm.mutation_rate_per_gene == 0.05);
        CHECK(c.algorithm.reference_divisions == 12);
        CHECK(c.algorithm.threads == 2);
        CHECK(c.algorithm.hypervolume_reference == std::vector<double> { 100, 7 });
        CHECK(c.algorithm.sbx_distribution_index == 10);
        CHECK(c.algorithm.polynomial_distribution_index == 30);
    }

    TEST_CASE("defaults and 1/n")
    {
        const auto c = parse_run_config("workflow=a\ninstance_table=b\noutput_dir=c\n[algorithm]\nmutation_rate=1/n\n", "/");
        CHECK_FALSE(c.algorithm.mutation_rate_per_gene.has_value());
        CHECK(c.algorithm.algorithm == Algorithm::NSGA2);
    }

    TEST_CASE("rejections")
    {
        const std::string base = "workflow=a\ninstance_table=b\noutput_dir=c\n";
        CHECK_THROWS_AS(parse_run_config(base + "colour=red\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config(base + "[algorithm]\npopsize=2\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config(base + "[other]\nx=1\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config(base + "[algorithm]\npopulation_size=21\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config(base + "[algorithm]\npopulation_size=twenty\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config(base + "[algorithm]\nname=spea2\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config(base + "[algorithm]\ncrossover_rate=2\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config(base + "run_id=../escape\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("instance_table=b\noutput_dir=c\n", "/"), ConfigError);
        CHECK_THROWS_AS(parse_run_config("workflow\n", "/"), ConfigError);
    }

    TEST_CASE("run ids")
    {
        CHECK(is_valid_run_id("20260101T000000Z-s42"));
        CHECK(is_valid_run_id("w3.nsga2_a"));
        CHECK_FALSE(is_valid_run_id(""));
        CHECK_FALSE(is_valid_run_id(".."));
        CHECK_FALSE(is_valid_run_id(".hidden"));
        CHECK_FALSE(is_valid_run_id("a/b"));
        CHECK_FALSE(is_valid_run_id("a b"));
        const auto id = default_run_id(42);
        CHECK(is_valid_run_id(id));
        CHECK(id.ends_with("-s42"));
    }

    TEST_CASE("missing input files")
    {
        const auto dir = adaptopt::testing::scratch_dir("cfg");
        write_text_file(dir / "run.cfg", "workflow=nope.xml\ninstance_table=nope.csv\noutput_dir=runs\n");
        CHECK_THROWS_AS(load_run_config(dir / "run.cfg"), IoError);
    }
}

TEST_SUITE("commands")
{
    TEST_CASE("validate exit codes")
    {
        auto r = capture([](auto& o, auto& e) { return cmd_validate(ADAPTOPT_DATA_DIR "/w3.xml", o, e); });
        CHECK(r.code == 0);
        r = capture([](auto& o, auto& e) { return cmd_validate(ADAPTOPT_DATA_DIR "/cycle.xml", o, e); });
        CHECK(r.code == 1);
        CHECK(r.err.find("a1 -> a2") != std::string::npos);
        r = capture([](auto& o, auto& e) { return cmd_validate("/nonexistent/w.xml", o, e); });
        CHECK(r.code == 2);

        const auto dir = adaptopt::testing::scratch_dir("validate");
        write_text_file(dir / "broken.xml", "<workflow name=\"x\">\n<actions>\n");
        r = capture([&](auto& o, auto& e) { return cmd_validate(dir / "broken.xml", o, e); });
        CHECK(r.code == 1);
        CHECK(r.err.find("line") != std::string::npos);
    }

    TEST_CASE("optimize publishes the exact W3 front")
    {
        const auto dir = w3_setup("optimize", nsga2_section);
        const auto r = capture([&](auto& o, auto& e) { return cmd_optimize(dir / "run.cfg", o, e); });
        REQUIRE_MESSAGE(r.code == 0, r.err);
        CHECK(r.out == "fixed\n");
        const auto run = dir / "runs" / "fixed";
        for (const char* f : { "front.json", "stats.jsonl", "config.json", "solution_0.xml", "solution_3.xml" }) {
            CHECK(fs::is_regular_file(run / f));
        }
        CHECK_FALSE(fs::exists(run / "solution_4.xml"));
        CHECK_FALSE(fs::exists(dir / "runs" / ".fixed.tmp"));

        const auto front = json::parse(read_text_file(run / "front.json"));
        CHECK(front["run_id"] == "fixed");
        CHECK(front["algorithm"] == "nsga2");
        CHECK(front["objectives"][0]["name"] == "makespan_seconds");
        CHECK(front["objectives"][1]["direction"] == "minimize");
        CHECK(front_values(front) == w3_front);
        CHECK(front["solutions"][1]["genotype"]["cobot_assignment"] == "100");

        // Stats: one line per generation, 0..30.
        std::istringstream stats(read_text_file(run / "stats.jsonl"));
        std::string line;
        std::size_t lines = 0;
        while (std::getline(stats, line)) CHECK(json::parse(line)["generation"] == lines++);
        CHECK(lines == 31);

        const auto config = json::parse(read_text_file(run / "config.json"));
        CHECK(config["algorithm"]["seed"] == 42);
        CHECK(config["algorithm"]["hypervolume_reference"] == json::array({ 96.0, 7.0 }));

        RunConfig rc = load_run_config(dir / "run.cfg");
        const auto problem = load_cobot_problem(rc);
        CHECK(verify_front(run, problem).empty());

        // A second run with the same id refuses to overwrite.
        const auto again = capture([&](auto& o, auto& e) { return cmd_optimize(dir / "run.cfg", o, e); });
        CHECK(again.code == 2);
    }

    TEST_CASE("tampered artifacts are detected")
    {
        const auto dir = w3_setup("tamper", nsga2_section);
        REQUIRE(capture([&](auto& o, auto& e) { return cmd_optimize(dir / "run.cfg", o, e); }).code == 0);
        const auto run = dir / "runs" / "fixed";
        auto xml = read_text_file(run / "solution_0.xml");
        const auto pos = xml.find("value=\"false\"");
        REQUIRE(pos != std::string::npos);
        xml.replace(pos, 13, "value=\"true\"");
        write_text_file(run / "solution_0.xml", xml);
        RunConfig rc = load_run_config(dir / "run.cfg");
        CHECK(verify_front(run, load_cobot_problem(rc)).size() == 1);
    }

    TEST_CASE("same config twice gives byte-identical artifacts")
    {
        for (const char* algorithm : { "nsga2", "nsga3" }) {
            const auto section = std::string("name = ") + algorithm + "\npopulation_size = 20\ngenerations = 30\nseed = 7\n";
            const auto a = w3_setup("det-a", section);
            const auto b = w3_setup("det-b", section);
            REQUIRE(capture([&](auto& o, auto& e) { return cmd_optimize(a / "run.cfg", o, e); }).code == 0);
            REQUIRE(capture([&](auto& o, auto& e) { return cmd_optimize(b / "run.cfg", o, e); }).code == 0);
            for (const char* f : { "front.json", "stats.jsonl", "solution_0.xml" }) {
                CHECK(read_text_file(a / "runs/fixed" / f) == read_text_file(b / "runs/fixed" / f));
            }
        }
    }

    TEST_CASE("odd population is a config error before any output")
    {
        const auto dir = w3_setup("odd", "population_size = 21\n");
        const auto r = capture([&](auto& o, auto& e) { return cmd_optimize(dir / "run.cfg", o, e); });
        CHECK(r.code == 2);
        CHECK(r.err.find("population") != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "runs"));
    }

    TEST_CASE("bad instance table is an optimization failure with context")
    {
        const auto dir = w3_setup("badtable", nsga2_section);
        write_text_file(dir / "w3.csv", "action_id,human_time_s,cobot_time_s,ergonomic_penalty\na1,10,25,3\na2,20,40,1\n");
        const auto r = capture([&](auto& o, auto& e) { return cmd_optimize(dir / "run.cfg", o, e); });
        CHECK(r.code == 1);
        CHECK(r.err.find("a3") != std::string::npos);
    }

    TEST_CASE("oracle")
    {
        const auto dir = w3_setup("oracle", nsga2_section);
        auto r = capture([&](auto& o, auto& e) { return cmd_oracle(dir / "run.cfg", o, e); });
        REQUIRE_MESSAGE(r.code == 0, r.err);
        const auto front = json::parse(read_text_file(dir / "runs" / "oracle_front.json"));
        CHECK(front["algorithm"] == "brute_force");
        CHECK(front["solutions"].size() == 4);
        CHECK(front_values(front) == w3_front);
        RunConfig rc = load_run_config(dir / "run.cfg");
        CHECK(verify_front(dir / "runs", load_cobot_problem(rc), oracle_front_file).empty());

        // n = 1 with a forced trade-off.
        write_text_file(dir / "one.xml", R"(<workflow name="one"><actions><action id="a1" name="x"/></actions></workflow>)");
        write_text_file(dir / "one.csv", "action_id,human_time_s,cobot_time_s,ergonomic_penalty\na1,10,20,2\n");
        write_text_file(dir / "one.cfg", "workflow=one.xml\ninstance_table=one.csv\noutput_dir=one\n");
        r = capture([&](auto& o, auto& e) { return cmd_oracle(dir / "one.cfg", o, e); });
        REQUIRE(r.code == 0);
        CHECK(json::parse(read_text_file(dir / "one" / "oracle_front.json"))["solutions"].size() == 2);
    }

    TEST_CASE("oracle refuses permutation encodings")
    {
        struct Order final : WorkflowManipulator {
            std::string name() const override { return "Order"; }
            std::string description() const override { return "sequence"; }
            SubEncodingSpec encoding_spec(const Workflow&, const ActionIndexMap& m) const override
            {
                return SubEncodingSpec::permutation("order", m.size());
            }
            Workflow manipulate(Workflow w, const ActionIndexMap&, const SubValue&) const override { return w; }
        };
        PluginRegistry reg;
        reg.appenders = cobot::metric_appenders(adaptopt::testing::w3_table());
        reg.manipulators = { cobot::cobot_flag_manipulator(), std::make_shared<Order>() };
        reg.complex_calculators = { cobot::makespan_ergonomics_calculator() };
        const auto p = AssembledProblem::assemble(adaptopt::testing::w3_workflow(), reg);
        const auto dir = adaptopt::testing::scratch_dir("refuse");
        const auto r = capture([&](auto& o, auto& e) { return write_oracle(p, dir, "x", o, e); });
        CHECK(r.code == 1);
        CHECK(r.err.find("oracle refused") != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "oracle_front.json"));
    }

    TEST_CASE("genotype json covers every encoding kind")
    {
        const MultiEncodingSpec spec { SubEncodingSpec::binary("b", 2), SubEncodingSpec::real("r", { { 0, 1 } }),
            SubEncodingSpec::permutation("p", 3) };
        const Genotype g { { BinaryValue { { false, true } }, RealValue { { 0.5 } }, PermutationValue { { 2, 0, 1 } } } };
        CHECK(genotype_json(spec, g) == R"({"b":"01","r":[0.5],"p":[2,0,1]})");
    }
}

TEST_SUITE("http")
{
    TEST_CASE("read-only API over a published run")
    {
        const auto dir = w3_setup("http", nsga2_section);
        REQUIRE(capture([&](auto& o, auto& e) { return cmd_optimize(dir / "run.cfg", o, e); }).code == 0);
        REQUIRE(capture([&](auto& o, auto& e) { return cmd_oracle(dir / "run.cfg", o, e); }).code == 0);
        const auto runs = dir / "runs";
        const auto before = adaptopt::testing::snapshot(runs);

        RunServer server(runs);
        const int port = server.bind("127.0.0.1", 0);
        REQUIRE(port > 0);
        std::thread t([&] { server.listen(); });
        server.wait_until_ready();
        httplib::Client client("127.0.0.1", port);

        auto res = client.Get("/api/runs");
        REQUIRE(res);
        CHECK(res->status == 200);
        const auto list = json::parse(res->body);
        REQUIRE(list.size() == 1);
        CHECK(list[0]["run_id"] == "fixed");
        CHECK(list[0]["solutions"] == 4);

        res = client.Get("/api/runs/fixed/front");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(res->body == read_text_file(runs / "fixed" / "front.json"));
        CHECK(front_values(json::parse(res->body)) == w3_front);

        res = client.Get("/api/runs/fixed/solutions/1");
        REQUIRE(res);
        CHECK(res->status == 200);
        const auto detail = json::parse(res->body);
        CHECK(detail["genotype"]["cobot_assignment"] == "100");
        CHECK(detail["values"] == json::array({ 60.0, 3.0 }));
        REQUIRE(detail["actions"].size() == 3);
        CHECK(detail["actions"][0]["executor"] == "cobot");
        CHECK(detail["actions"][1]["executor"] == "human");
        CHECK(detail["actions"][2]["executor"] == "human");
        double makespan = 0.0;
        double penalty = 0.0;
        for (const auto& a : detail["actions"]) {
            const bool cobot = a["executor"] == "cobot";
            makespan += a[cobot ? "cobot_time_s" : "human_time_s"].get<double>();
            penalty += cobot ? 0.0 : a["ergonomic_penalty"].get<double>();
        }
        CHECK(makespan == 60.0);
        CHECK(penalty == 3.0);

        res = client.Get("/api/runs/fixed/solutions/1/workflow.xml");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(res->body == read_text_file(runs / "fixed" / "solution_1.xml"));
        CHECK(parse_workflow(res->body).actions.size() == 3);
        const auto other = client.Get("/api/runs/fixed/solutions/2/workflow.xml");
        REQUIRE(other);
        CHECK(other->body != res->body);

        res = client.Get("/api/runs/fixed/stats");
        REQUIRE(res);
        CHECK(res->body == read_text_file(runs / "fixed" / "stats.jsonl"));

        for (const char* path : { "/api/runs/fixed/solutions/99/workflow.xml", "/api/runs/fixed/solutions/99",
                 "/api/runs/nope/front", "/api/runs/../front", "/api/runs/..%2F..%2Fetc/front", "/api/runs/fixed/solutions/-1",
                 "/api/runs/fixed/solutions/abc", "/api/unknown" }) {
            res = client.Get(path);
            REQUIRE(res);
            CHECK_MESSAGE(res->status == 404, path);
            CHECK_MESSAGE(json::parse(res->body).contains("error"), path);
        }

        res = client.Post("/api/runs", "{}", "application/json");
        REQUIRE(res);
        CHECK(res->status >= 400);
        res = client.Delete("/api/runs/fixed/front");
        REQUIRE(res);
        CHECK(res->status >= 400);

        server.stop();
        t.join();
        CHECK(adaptopt::testing::snapshot(runs) == before);
    }

    TEST_CASE("empty runs directory and static assets")
    {
        const auto runs = adaptopt::testing::scratch_dir("http-empty");
        const auto assets = adaptopt::testing::scratch_dir("http-static");
        write_text_file(assets / "index.html", "<html>ui</html>");
        RunServer server(runs, assets);
        const int port = server.bind("127.0.0.1", 0);
        REQUIRE(port > 0);
        std::thread t([&] { server.listen(); });
        server.wait_until_ready();
        httplib::Client client("127.0.0.1", port);
        auto res = client.Get("/api/runs");
        REQUIRE(res);
        CHECK(res->body == "[]");
        res = client.Get("/index.html");
        REQUIRE(res);
        CHECK(res->body == "<html>ui</html>");
        server.stop();
        t.join();
    }

    TEST_CASE("serve rejects a missing directory")
    {
        const auto r = capture([](auto& o, auto& e) { return cmd_serve("/nonexistent/runs", 0, std::nullopt, o, e); });
        CHECK(r.code == 2);
    }
}

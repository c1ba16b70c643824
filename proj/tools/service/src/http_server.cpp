#include "adaptopt/service/http_server.hpp"

#include <algorithm>
#include <stdexcept>

#include "adaptopt/cobot/plugins.hpp"
#include "adaptopt/error.hpp"
#include "adaptopt/service/artifact.hpp"
#include "adaptopt/service/run_config.hpp"
#include "adaptopt/workflow/xml.hpp"
#include "httplib.h"
#include "json.hpp"

namespace adaptopt::service {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {
    struct NotFound : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    void send_json(httplib::Response& res, int status, const ordered_json& body)
    {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }
} // namespace

struct RunServer::Impl {
    fs::path runs_dir;
    httplib::Server server;

    fs::path run_dir(const std::string& id) const
    {
        if (!is_valid_run_id(id)) throw NotFound("unknown run '" + id + "'");
        auto dir = runs_dir / id;
        if (!fs::is_regular_file(dir / front_file)) throw NotFound("unknown run '" + id + "'");
        return dir;
    }

    static ordered_json load_front(const fs::path& dir) { return ordered_json::parse(read_text_file(dir / front_file)); }

    static const ordered_json& solution(const ordered_json& front, const std::string& k_text, const std::string& id)
    {
        const auto& solutions = front.at("solutions");
        std::size_t k = 0;
        try {
            k = std::stoul(k_text);
        } catch (const std::exception&) {
            throw NotFound("unknown solution '" + k_text + "' in run '" + id + "'");
        }
        if (k >= solutions.size()) throw NotFound("unknown solution " + k_text + " in run '" + id + "'");
        return solutions[k];
    }

    static std::string workflow_file(const ordered_json& sol)
    {
        auto name = sol.at("workflow_file").get<std::string>();
        if (name.find('/') != std::string::npos || name.find('\\') != std::string::npos || name.starts_with(".")) {
            throw std::runtime_error("front.json names an unsafe workflow file");
        }
        return name;
    }

    ordered_json list_runs() const
    {
        std::vector<std::string> ids;
        std::error_code ec;
        for (const auto& e : fs::directory_iterator(runs_dir, ec)) {
            auto id = e.path().filename().string();
            if (e.is_directory() && is_valid_run_id(id) && fs::is_regular_file(e.path() / front_file)) ids.push_back(id);
        }
        std::sort(ids.begin(), ids.end());
        ordered_json runs = ordered_json::array();
        for (const auto& id : ids) {
            ordered_json summary;
            summary["run_id"] = id;
            try {
                const auto front = load_front(runs_dir / id);
                summary["algorithm"] = front.value("algorithm", "");
                summary["objectives"] = front.at("objectives");
                summary["solutions"] = front.at("solutions").size();
            } catch (const std::exception& e) {
                summary["error"] = e.what();
            }
            runs.push_back(std::move(summary));
        }
        return runs;
    }

    ordered_json solution_detail(const std::string& id, const std::string& k_text) const
    {
        const auto dir = run_dir(id);
        const auto front = load_front(dir);
        const auto& sol = solution(front, k_text, id);
        const auto file = workflow_file(sol);
        const auto workflow = parse_workflow(read_text_file(dir / file));

        ordered_json detail;
        detail["run_id"] = id;
        detail["index"] = sol.at("index");
        detail["genotype"] = sol.at("genotype");
        detail["objectives"] = front.at("objectives");
        detail["values"] = sol.at("objectives");
        detail["workflow_file"] = file;
        detail["actions"] = ordered_json::array();
        for (const auto& a : cobot::assignments(workflow)) {
            detail["actions"].push_back({ { "id", a.action_id }, { "name", a.name },
                { "executor", a.cobot ? "cobot" : "human" }, { "human_time_s", a.human_time_s },
                { "cobot_time_s", a.cobot_time_s }, { "ergonomic_penalty", a.ergonomic_penalty } });
        }
        return detail;
    }

    template <typename F>
    static httplib::Server::Handler guard(F f)
    {
        return [f](const httplib::Request& req, httplib::Response& res) {
            try {
                f(req, res);
            } catch (const NotFound& e) {
                send_json(res, 404, { { "error", e.what() } });
            } catch (const std::exception& e) {
                send_json(res, 500, { { "error", e.what() } });
            }
        };
    }

    void routes()
    {
        server.Get("/api/runs", guard([this](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, list_runs());
        }));
        server.Get(R"(/api/runs/([^/]+)/front)", guard([this](const httplib::Request& req, httplib::Response& res) {
            res.set_content(read_text_file(run_dir(req.matches[1]) / front_file), "application/json");
        }));
        server.Get(R"(/api/runs/([^/]+)/stats)", guard([this](const httplib::Request& req, httplib::Response& res) {
            const auto dir = run_dir(req.matches[1]);
            if (!fs::is_regular_file(dir / stats_file)) throw NotFound("run has no stats");
            res.set_content(read_text_file(dir / stats_file), "application/x-ndjson");
        }));
        server.Get(R"(/api/runs/([^/]+)/solutions/([^/]+))",
            guard([this](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, solution_detail(req.matches[1], req.matches[2]));
            }));
        server.Get(R"(/api/runs/([^/]+)/solutions/([^/]+)/workflow\.xml)",
            guard([this](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.matches[1];
                const auto dir = run_dir(id);
                const auto front = load_front(dir);
                const auto file = workflow_file(solution(front, req.matches[2], id));
                if (!fs::is_regular_file(dir / file)) throw NotFound("missing " + file);
                res.set_header("Content-Disposition", "attachment; filename=\"" + file + "\"");
                res.set_content(read_text_file(dir / file), "application/xml");
            }));
        server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
            if (res.body.empty()) {
                send_json(res, res.status, { { "error", "no route for " + req.method + " " + req.path } });
            }
        });
    }
};

RunServer::RunServer(fs::path runs_dir, std::optional<fs::path> static_dir)
    : impl_(std::make_unique<Impl>())
{
    impl_->runs_dir = std::move(runs_dir);
    impl_->routes();
    if (static_dir) impl_->server.set_mount_point("/", static_dir->string());
}

RunServer::~RunServer() = default;

int RunServer::bind(const std::string& host, int port)
{
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

void RunServer::listen() { impl_->server.listen_after_bind(); }

void RunServer::stop() { impl_->server.stop(); }

void RunServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

} // namespace adaptopt::service

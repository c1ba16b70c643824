#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace adaptopt::service {

// Read-only HTTP view of a runs directory.
//
//   GET /api/runs                                  run summaries
//   GET /api/runs/{id}/front                       front.json
//   GET /api/runs/{id}/solutions/{k}               solution detail with per-action assignment
//   GET /api/runs/{id}/solutions/{k}/workflow.xml  canonical XML
//   GET /api/runs/{id}/stats                       stats.jsonl
//
// Unknown runs or solutions answer 404 with {"error": "..."}. Artifacts are
// read on every request; nothing is cached or written.
class RunServer {
public:
    explicit RunServer(std::filesystem::path runs_dir, std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~RunServer();

    RunServer(const RunServer&) = delete;
    RunServer& operator=(const RunServer&) = delete;

    // Port 0 picks a free port. Returns the bound port, or -1.
    int bind(const std::string& host, int port);

    // Serves until stop(); call after bind().
    void listen();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace adaptopt::service

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "tkb/api.hpp"

namespace tkb::service {

// HTTP front end over an Engine. Every response body is an API envelope:
//   {"status":"ok","data":...} or {"status":"error","error":{code,message,entities}}
// Status codes: 400 malformed request, 404 unknown id, 409 ViewpointConflict or
// CycleWouldForm, 422 any other domain error.
class Server {
public:
    explicit Server(api::Engine& engine, std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds; port 0 picks a free port. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop() is called.
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tkb::service

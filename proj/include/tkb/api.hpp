#pragma once

// The operation engine behind both the CLI and the HTTP service. Every
// user-facing operation is a named op taking a JSON argument object and
// returning a JSON payload, so the two front ends cannot drift apart.

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "tkb/json.hpp"
#include "tkb/knowledge_base.hpp"

namespace tkb::api {

struct OpInfo {
    std::string_view name;
    bool mutates;
};

// Every op the engine understands.
const std::vector<OpInfo>& operations();
bool is_mutation(std::string_view op);

// Single writer, many readers. Reads run under a shared lock against the
// current state; a mutation is applied to a private copy, persisted (when the
// engine is bound to a file) and only then published.
class Engine {
public:
    explicit Engine(KnowledgeBase kb = {}, std::optional<std::filesystem::path> file = std::nullopt);

    // Throws tkb::Error. Unknown ops and malformed arguments are BadRequest.
    Json execute(std::string_view op, const Json& args = Json::object());

    KnowledgeBase snapshot() const;
    const std::optional<std::filesystem::path>& file() const noexcept { return file_; }

private:
    mutable std::shared_mutex mutex_;
    KnowledgeBase kb_;
    std::optional<std::filesystem::path> file_;
};

Json ok_envelope(Json data);
Json error_envelope(const Error& error);
int http_status(ErrorCode code) noexcept;

}  // namespace tkb::api

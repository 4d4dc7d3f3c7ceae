#include "tkb/service.hpp"

#include <httplib.h>

#include <initializer_list>
#include <vector>

namespace tkb::service {

namespace {

struct Route {
    enum Method { get, post, del } method;
    const char* pattern;
    const char* op;
    std::vector<const char*> captures;  // argument name for each regex group
};

// clang-format off
const std::vector<Route>& routes() {
    static const std::vector<Route> table{
        {Route::get, R"(/concepts)", "list-concepts", {}},
        {Route::get, R"(/concepts/([^/]+))", "get-concept", {"concept"}},
        {Route::get, R"(/concepts/([^/]+)/frame)", "frame", {"concept"}},
        {Route::get, R"(/concepts/([^/]+)/subsumers)", "subsumers", {"concept"}},
        {Route::get, R"(/concepts/([^/]+)/designators)", "designators", {"concept"}},
        {Route::get, R"(/terms)", "list-terms", {}},
        {Route::get, R"(/terms/([^/]+))", "get-term", {"term"}},
        {Route::get, R"(/terms/([^/]+)/meanings)", "meanings", {"term"}},
        {Route::get, R"(/terms/([^/]+)/synonyms)", "synonyms", {"term"}},
        {Route::get, R"(/terms/([^/]+)/occurrences)", "occurrences", {"term"}},
        {Route::get, R"(/terms/([^/]+)/grammatical-relations)", "grammatical-relations", {"term"}},
        {Route::get, R"(/viewpoints)", "list-viewpoints", {}},
        {Route::get, R"(/relation-types)", "list-relation-types", {}},
        {Route::get, R"(/documents)", "list-documents", {}},
        {Route::get, R"(/documents/([^/]+))", "get-document", {"document"}},
        {Route::get, R"(/units/([^/]+))", "get-unit", {"unit"}},
        {Route::get, R"(/units/([^/]+)/highlighted)", "highlight", {"unit"}},
        {Route::get, R"(/links/([^/]+))", "get-link", {"link"}},
        {Route::get, R"(/links/([^/]+)/contexts)", "contexts", {"link"}},
        {Route::get, R"(/graph)", "graph", {}},
        {Route::get, R"(/search)", "search", {}},
        {Route::get, R"(/diagnostics)", "diagnostics", {}},

        {Route::post, R"(/terms)", "add-term", {}},
        {Route::post, R"(/viewpoints)", "add-viewpoint", {}},
        {Route::post, R"(/concepts)", "add-concept", {}},
        {Route::post, R"(/concepts/([^/]+)/parents)", "add-parent", {"child"}},
        {Route::post, R"(/concepts/([^/]+)/attributes)", "set-attribute", {"concept"}},
        {Route::post, R"(/concepts/([^/]+)/relations)", "add-relation", {"source"}},
        {Route::post, R"(/relation-types)", "add-relation-type", {}},
        {Route::post, R"(/links)", "link", {}},
        {Route::post, R"(/links/([^/]+)/usages)", "anchor", {"link"}},
        {Route::post, R"(/documents)", "import-corpus", {}},
        {Route::post, R"(/term-lists)", "import-terms", {}},
        {Route::post, R"(/settings/span-policy)", "set-span-policy", {}},

        {Route::del, R"(/entities/([^/]+))", "delete", {"id"}},
        {Route::del, R"(/terms/([^/]+))", "delete", {"id"}},
        {Route::del, R"(/concepts/([^/]+))", "delete", {"id"}},
        {Route::del, R"(/viewpoints/([^/]+))", "delete", {"id"}},
        {Route::del, R"(/links/([^/]+))", "delete", {"id"}},
        {Route::del, R"(/documents/([^/]+))", "delete", {"id"}},
    };
    return table;
}
// clang-format on

void reply(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(-1, ' ', false, Json::error_handler_t::replace), "application/json; charset=utf-8");
}

}  // namespace

struct Server::Impl {
    api::Engine& engine;
    httplib::Server http;

    void handle(const Route& route, const httplib::Request& req, httplib::Response& res) {
        try {
            Json args = Json::object();
            if (route.method == Route::post && !req.body.empty()) {
                args = Json::parse(req.body, nullptr, false);
                if (args.is_discarded() || !args.is_object())
                    throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
            }
            for (const auto& [key, value] : req.params) args[key] = value;
            for (std::size_t i = 0; i < route.captures.size(); ++i) args[route.captures[i]] = req.matches[i + 1].str();
            reply(res, 200, api::ok_envelope(engine.execute(route.op, args)));
        } catch (const Error& e) {
            reply(res, api::http_status(e.code()), api::error_envelope(e));
        } catch (const std::exception& e) {
            reply(res, 500, api::error_envelope(Error(ErrorCode::IoError, e.what())));
        }
    }
};

Server::Server(api::Engine& engine, std::optional<std::filesystem::path> static_dir)
    : impl_(new Impl{engine, {}}) {
    for (const auto& route : routes()) {
        auto handler = [this, &route](const httplib::Request& req, httplib::Response& res) {
            impl_->handle(route, req, res);
        };
        switch (route.method) {
            case Route::get: impl_->http.Get(route.pattern, handler); break;
            case Route::post: impl_->http.Post(route.pattern, handler); break;
            case Route::del: impl_->http.Delete(route.pattern, handler); break;
        }
    }
    if (static_dir) impl_->http.set_mount_point("/ui", static_dir->string());
    impl_->http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        const auto code = res.status == 404 ? ErrorCode::UnknownEntity : ErrorCode::BadRequest;
        reply(res, res.status, api::error_envelope(Error(code, "no route for " + req.method + " " + req.path)));
    });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
    if (port == 0) return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace tkb::service

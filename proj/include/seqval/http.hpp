#pragma once

// HTTP routes for the session store (cpp-httplib).
//
//   POST   /sessions                 create, body = config overrides
//   GET    /sessions/{id}
//   PUT    /sessions/{id}/sequence   body = {"positions": [...]}
//   POST   /sessions/{id}/accept     body = {"field": "G7"}
//   GET    /sessions/{id}/heatmap?top=K
//   DELETE /sessions/{id}

#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "service.hpp"

namespace seqval::service {

namespace detail {

inline void send(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
}

/// Parses a request body; an empty body counts as {}.
inline bool parse_body(const httplib::Request& req, httplib::Response& res, json& out) {
    if (req.body.empty()) {
        out = json::object();
        return true;
    }
    out = json::parse(req.body, nullptr, false);
    if (out.is_discarded()) {
        send(res, error(400, "bad_request", "request body is not valid JSON"));
        return false;
    }
    return true;
}

}  // namespace detail

inline void mount(httplib::Server& server, SessionStore& store) {
    using httplib::Request;
    using httplib::Response;

    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/.*)", [](const Request&, Response& res) { res.status = 204; });

    server.Post("/sessions", [&store](const Request& req, Response& res) {
        json body;
        if (detail::parse_body(req, res, body)) detail::send(res, store.create(body));
    });
    server.Get(R"(/sessions/([^/]+))", [&store](const Request& req, Response& res) {
        detail::send(res, store.get(req.matches[1]));
    });
    server.Delete(R"(/sessions/([^/]+))", [&store](const Request& req, Response& res) {
        detail::send(res, store.remove(req.matches[1]));
    });
    server.Put(R"(/sessions/([^/]+)/sequence)", [&store](const Request& req, Response& res) {
        json body;
        if (detail::parse_body(req, res, body)) detail::send(res, store.set_sequence(req.matches[1], body));
    });
    server.Post(R"(/sessions/([^/]+)/accept)", [&store](const Request& req, Response& res) {
        json body;
        if (detail::parse_body(req, res, body)) detail::send(res, store.accept(req.matches[1], body));
    });
    server.Get(R"(/sessions/([^/]+)/heatmap)", [&store](const Request& req, Response& res) {
        std::optional<int> top;
        if (req.has_param("top")) {
            try {
                top = std::stoi(req.get_param_value("top"));
            } catch (const std::exception&) {
                detail::send(res, error(400, "invalid_parameter", "top must be an integer", {{"field", "top"}}));
                return;
            }
        }
        detail::send(res, store.heatmap(req.matches[1], top));
    });
    server.set_exception_handler([](const Request&, Response& res, std::exception_ptr ep) {
        std::string what = "unknown error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        detail::send(res, error(500, "internal_error", what));
    });
}

}  // namespace seqval::service

// seqval-serve: local HTTP/JSON service for interactive sessions.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "seqval/http.hpp"

namespace {
httplib::Server* g_server = nullptr;
}

int main(int argc, char** argv) {
    CLI::App app{"Session service for the board UI"};
    int port = 8642;
    std::string host = "127.0.0.1";
    std::string state_dir;
    app.add_option("--port", port, "Listening port")->capture_default_str();
    app.add_option("--host", host, "Bind address")->capture_default_str();
    app.add_option("--state-dir", state_dir, "Directory for session snapshots");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::optional<std::filesystem::path> dir;
    if (!state_dir.empty()) dir = state_dir;
    seqval::service::SessionStore store(dir);
    httplib::Server server;
    seqval::service::mount(server, store);

    g_server = &server;
    std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
    std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });

    std::cerr << "listening on http://" << host << ":" << port << " (" << store.size() << " sessions restored)\n";
    if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << '\n';
        return 1;
    }
    return 0;
}

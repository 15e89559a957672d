#include <csignal>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "topicforge/service.hpp"
#include "topicforge/workspace.hpp"

namespace {

topicforge::HttpServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topicforge-server: JSON API over the topicforge library"};
  topicforge::ServerOptions options;
  options.bind = env_or("TOPICFORGE_BIND", options.bind);
  options.cors_origin = env_or("TOPICFORGE_CORS_ORIGIN", options.cors_origin);
  try {
    options.port = std::stoi(env_or("TOPICFORGE_PORT", std::to_string(options.port)));
    options.timeout_seconds =
        std::stoi(env_or("TOPICFORGE_TIMEOUT", std::to_string(options.timeout_seconds)));
  } catch (const std::exception&) {
    std::cerr << "error: TOPICFORGE_PORT and TOPICFORGE_TIMEOUT must be integers\n";
    return 5;
  }
  std::optional<std::string> workspace;
  bool no_workspace = false;
  app.add_option("--port", options.port, "TCP port (0 = any free port)")->capture_default_str();
  app.add_option("--bind", options.bind, "Listen address")->capture_default_str();
  app.add_option("--cors-origin", options.cors_origin,
                 "Access-Control-Allow-Origin value; empty disables")
      ->capture_default_str();
  app.add_option("--timeout", options.timeout_seconds, "Socket read/write timeout, seconds")
      ->capture_default_str();
  app.add_option("--workspace", workspace, "Workspace shared with the CLI");
  app.add_flag("--no-workspace", no_workspace, "Keep everything in memory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 5;
  }

  topicforge::Service::Options service_options;
  if (!no_workspace) service_options.workspace = topicforge::Workspace::resolve_root(workspace);
  try {
    topicforge::Service service(service_options);
    topicforge::HttpServer server(service, options);
    const int port = server.bind();
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "listening on http://" << options.bind << ':' << port << '\n';
    server.listen();
    g_server = nullptr;
  } catch (const topicforge::Error& e) {
    std::cerr << "error: " << topicforge::to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}

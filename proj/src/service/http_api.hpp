#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "service/run_registry.hpp"

namespace httplib {
class Server;
}

namespace irp::service {

inline constexpr const char* kApiPrefix = "/api/v1";

// HTTP facade over a RunRegistry. All routes live under /api/v1 and speak
// JSON; errors carry {"code", "message"}.
class HttpServer {
public:
  explicit HttpServer(std::filesystem::path dataDir);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Serves a built web client from dir at "/". Returns false if dir is missing.
  bool setStaticDir(const std::filesystem::path& dir);

  // Blocks until stop() is called. Returns false if binding failed.
  bool listen(const std::string& host, int port);

  // For tests: bind to an ephemeral port, then serve with listenAfterBind().
  int bindToAnyPort(const std::string& host);
  bool listenAfterBind();

  void stop();
  bool isRunning() const;

  RunRegistry& registry() { return *registry_; }

private:
  void installRoutes();

  std::unique_ptr<RunRegistry> registry_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace irp::service

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "assess/session_store.hpp"

namespace assess {

struct ApiRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Transport-independent router over a SessionStore. Errors are returned as
// {"error": kind, "message": text[, "line": n]} with 400/404/405/409/500.
//
//   POST /sessions                           201, session
//   GET  /sessions                           ids
//   GET  /sessions/{id}                      session
//   PUT  /sessions/{id}/trace                JSONL body
//   POST /sessions/{id}/manual               {"ability": token, "detected": bool}
//   POST /sessions/{id}/compute
//   POST /sessions/{id}/questionnaires/sus   {"items": [...]}
//   POST /sessions/{id}/questionnaires/tlx   {"ratings": {...}, "weights": [...]}
//   GET  /sessions/{id}/report
//   GET  /kb
//   GET  / and static files when a web root is configured
class Api {
 public:
  explicit Api(SessionStore& store, std::optional<std::filesystem::path> web_root = std::nullopt);

  ApiResponse handle(const ApiRequest& request) const;

 private:
  ApiResponse serve_static(const std::string& path) const;

  SessionStore& store_;
  std::optional<std::filesystem::path> web_root_;
};

// Blocking HTTP server running an Api on a background thread.
class HttpServer {
 public:
  explicit HttpServer(const Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds host:port (port 0 picks a free one) and starts serving. Returns the
  // bound port. Throws std::runtime_error when binding fails.
  int start(const std::string& host, int port);
  // Serves on the calling thread until stop() is called from elsewhere.
  void run(const std::string& host, int port);
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace assess

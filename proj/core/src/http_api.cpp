#include "assess/http_api.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include <httplib.h>

namespace assess {

using nlohmann::json;

namespace {

ApiResponse json_response(int status, const ordered_json& body) {
  return {status, "application/json", body.dump(2) + "\n"};
}

ApiResponse error_response(int status, std::string_view kind, const std::string& message,
                           std::size_t line = 0) {
  ordered_json body = {{"error", kind}, {"message", message}};
  if (line > 0) body["line"] = line;
  return json_response(status, body);
}

ApiResponse session_error(const SessionError& e) {
  switch (e.kind()) {
    case SessionError::Kind::not_found: return error_response(404, "not_found", e.what());
    case SessionError::Kind::wrong_state: return error_response(409, "wrong_state", e.what());
    case SessionError::Kind::invalid_input: return error_response(400, "invalid_input", e.what(), e.line());
    case SessionError::Kind::storage: break;
  }
  return error_response(500, "storage", e.what());
}

std::vector<std::string> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const std::size_t slash = path.find('/', pos);
    const std::size_t end = slash == std::string_view::npos ? path.size() : slash;
    if (end > pos) parts.emplace_back(path.substr(pos, end - pos));
    if (slash == std::string_view::npos) break;
    pos = slash + 1;
  }
  return parts;
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw SessionError(SessionError::Kind::invalid_input, std::string("request body is not JSON: ") + e.what());
  }
}

std::string_view mime_type(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".html") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  return "application/octet-stream";
}

}  // namespace

Api::Api(SessionStore& store, std::optional<std::filesystem::path> web_root)
    : store_(store), web_root_(std::move(web_root)) {}

ApiResponse Api::serve_static(const std::string& path) const {
  if (!web_root_) return error_response(404, "not_found", "no route for " + path);
  std::string relative = path.substr(0, path.find('?'));
  while (!relative.empty() && relative.front() == '/') relative.erase(0, 1);
  if (relative.empty()) relative = "index.html";

  std::error_code ec;
  const auto root = std::filesystem::weakly_canonical(*web_root_, ec);
  const auto file = std::filesystem::weakly_canonical(root / relative, ec);
  const auto [r, f] = std::mismatch(root.begin(), root.end(), file.begin(), file.end());
  if (ec || r != root.end() || !std::filesystem::is_regular_file(file)) {
    return error_response(404, "not_found", "no such file " + path);
  }
  std::ifstream in(file, std::ios::binary);
  std::ostringstream content;
  content << in.rdbuf();
  return {200, std::string(mime_type(file)), content.str()};
}

ApiResponse Api::handle(const ApiRequest& request) const {
  const auto parts = split_path(request.path);
  const std::string& method = request.method;
  const auto not_allowed = [&] {
    return error_response(405, "method_not_allowed", method + " not allowed on " + request.path);
  };

  try {
    if (parts.empty() || (parts[0] != "sessions" && parts[0] != "kb")) {
      if (method != "GET") return not_allowed();
      return serve_static(request.path);
    }

    if (parts[0] == "kb") {
      if (parts.size() != 1) return error_response(404, "not_found", "no route for " + request.path);
      if (method != "GET") return not_allowed();
      return {200, "application/json", serialize(store_.kb())};
    }

    if (parts.size() == 1) {
      if (method == "POST") return json_response(201, to_json(store_.create()));
      if (method == "GET") return json_response(200, ordered_json{{"sessions", store_.ids()}});
      return not_allowed();
    }

    const std::string& id = parts[1];
    if (parts.size() == 2) {
      if (method != "GET") return not_allowed();
      return json_response(200, to_json(store_.get(id)));
    }

    const std::string& action = parts[2];
    if (parts.size() == 3 && action == "trace") {
      if (method != "PUT") return not_allowed();
      return json_response(200, to_json(store_.submit_trace(id, request.body)));
    }
    if (parts.size() == 3 && action == "manual") {
      if (method != "POST") return not_allowed();
      const json body = parse_body(request.body);
      if (!body.is_object() || !body.contains("ability") || !body["ability"].is_string() ||
          !body.contains("detected") || !body["detected"].is_boolean()) {
        return error_response(400, "invalid_input", "expected {\"ability\": string, \"detected\": bool}");
      }
      return json_response(200, to_json(store_.submit_manual(id, body["ability"].get<std::string>(),
                                                             body["detected"].get<bool>())));
    }
    if (parts.size() == 3 && action == "compute") {
      if (method != "POST") return not_allowed();
      return json_response(200, to_json(store_.compute(id)));
    }
    if (parts.size() == 3 && action == "report") {
      if (method != "GET") return not_allowed();
      return {200, "application/json", dump_report(store_.report(id))};
    }
    if (parts.size() == 4 && action == "questionnaires" && (parts[3] == "sus" || parts[3] == "tlx")) {
      if (method != "POST") return not_allowed();
      const json body = parse_body(request.body);
      try {
        if (parts[3] == "sus") return json_response(200, to_json(store_.submit_sus(id, sus_from_json(body))));
        return json_response(200, to_json(store_.submit_tlx(id, tlx_from_json(body))));
      } catch (const QuestionnaireError& e) {
        // Unknown session beats a bad body.
        store_.get(id);
        return error_response(400, "invalid_input", e.what());
      }
    }
    return error_response(404, "not_found", "no route for " + request.path);
  } catch (const SessionError& e) {
    return session_error(e);
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

struct HttpServer::Impl {
  explicit Impl(const Api& a) : api(a) {
    const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      const ApiResponse out = api.handle({req.method, req.path, req.body});
      res.status = out.status;
      res.set_content(out.body, out.content_type);
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.Put(".*", handler);
    server.Delete(".*", handler);
    server.Patch(".*", handler);
  }

  int bind(const std::string& host, int requested) {
    if (requested == 0) {
      bound_port = server.bind_to_any_port(host);
    } else if (server.bind_to_port(host, requested)) {
      bound_port = requested;
    } else {
      bound_port = -1;
    }
    if (bound_port <= 0) {
      throw std::runtime_error("cannot bind " + host + ":" + std::to_string(requested));
    }
    return bound_port;
  }

  const Api& api;
  httplib::Server server;
  std::thread thread;
  int bound_port = 0;
};

HttpServer::HttpServer(const Api& api) : impl_(std::make_unique<Impl>(api)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  const int bound = impl_->bind(host, port);
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  impl_->bind(host, port);
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int HttpServer::port() const { return impl_->bound_port; }

}  // namespace assess

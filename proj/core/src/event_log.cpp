#include "assess/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace assess {

using nlohmann::json;

json to_json(const EventLogRecord& r) {
  return {{"session", r.session_id},
          {"seq", r.sequence},
          {"kind", r.kind},
          {"payload", r.payload},
          {"ts", r.timestamp_ms}};
}

EventLogRecord event_from_json(const json& line) {
  if (!line.is_object()) throw EventLogError("event must be an object");
  try {
    EventLogRecord r;
    r.session_id = line.at("session").get<std::string>();
    r.sequence = line.at("seq").get<std::uint64_t>();
    r.kind = line.at("kind").get<std::string>();
    r.payload = line.at("payload");
    r.timestamp_ms = line.at("ts").get<std::int64_t>();
    return r;
  } catch (const json::exception& e) {
    throw EventLogError(std::string("malformed event: ") + e.what());
  }
}

namespace {

struct LoadedLog {
  std::vector<EventLogRecord> records;
  std::uintmax_t valid_bytes = 0;
};

LoadedLog load(const std::filesystem::path& path, const std::string& session_id) {
  LoadedLog out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  std::size_t pos = 0;
  std::size_t line_number = 0;
  while (pos < content.size()) {
    ++line_number;
    const std::size_t newline = content.find('\n', pos);
    const bool complete = newline != std::string::npos;
    const std::string line = content.substr(pos, complete ? newline - pos : std::string::npos);
    json parsed;
    try {
      parsed = json::parse(line);
    } catch (const json::parse_error&) {
      if (!complete) break;  // torn tail from an interrupted append
      throw EventLogError(path.string() + ": line " + std::to_string(line_number) + " is not JSON");
    }
    if (!complete) break;
    EventLogRecord record = event_from_json(parsed);
    if (record.session_id != session_id) {
      throw EventLogError(path.string() + ": line " + std::to_string(line_number) +
                          " belongs to session " + record.session_id);
    }
    if (record.sequence != out.records.size()) {
      throw EventLogError(path.string() + ": sequence gap at line " + std::to_string(line_number));
    }
    out.records.push_back(std::move(record));
    pos = newline + 1;
    out.valid_bytes = pos;
  }
  return out;
}

}  // namespace

std::vector<EventLogRecord> read_event_log(const std::filesystem::path& path,
                                           const std::string& session_id) {
  return load(path, session_id).records;
}

EventLog::EventLog(std::filesystem::path path, std::string session_id)
    : path_(std::move(path)), session_id_(std::move(session_id)) {
  LoadedLog loaded = load(path_, session_id_);
  records_ = std::move(loaded.records);
  std::error_code ec;
  if (std::filesystem::exists(path_, ec) && std::filesystem::file_size(path_) != loaded.valid_bytes) {
    std::filesystem::resize_file(path_, loaded.valid_bytes, ec);
    if (ec) throw EventLogError("cannot truncate torn log " + path_.string() + ": " + ec.message());
  }
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw EventLogError("cannot open " + path_.string() + ": " + std::strerror(errno));
}

EventLog::~EventLog() { close(); }

EventLog::EventLog(EventLog&& other) noexcept
    : path_(std::move(other.path_)),
      session_id_(std::move(other.session_id_)),
      records_(std::move(other.records_)),
      fd_(other.fd_) {
  other.fd_ = -1;
}

EventLog& EventLog::operator=(EventLog&& other) noexcept {
  if (this != &other) {
    close();
    path_ = std::move(other.path_);
    session_id_ = std::move(other.session_id_);
    records_ = std::move(other.records_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

void EventLog::close() noexcept {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

const EventLogRecord& EventLog::append(std::string kind, json payload, std::int64_t timestamp_ms) {
  EventLogRecord record{session_id_, next_sequence(), std::move(kind), std::move(payload), timestamp_ms};
  const std::string line = to_json(record).dump() + "\n";

  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string reason = std::strerror(errno);
      // Roll back a partial line so the log stays parseable.
      if (written > 0) {
        std::error_code ec;
        std::filesystem::resize_file(path_, std::filesystem::file_size(path_, ec) - written, ec);
      }
      throw EventLogError("append to " + path_.string() + " failed: " + reason);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw EventLogError("fsync " + path_.string() + " failed: " + std::strerror(errno));
  records_.push_back(std::move(record));
  return records_.back();
}

}  // namespace assess

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace assess {

struct EventLogRecord {
  std::string session_id;
  std::uint64_t sequence = 0;  // contiguous from 0 per session
  std::string kind;
  nlohmann::json payload;
  std::int64_t timestamp_ms = 0;

  bool operator==(const EventLogRecord&) const = default;
};

nlohmann::json to_json(const EventLogRecord& record);
EventLogRecord event_from_json(const nlohmann::json& line);

class EventLogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Append-only JSON Lines event log for one session. Every append is flushed
// and fsync'd before it returns. A torn final line (no trailing newline, not
// parseable) left by a crash is dropped on open and truncated away.
class EventLog {
 public:
  EventLog(std::filesystem::path path, std::string session_id);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;
  EventLog(EventLog&& other) noexcept;
  EventLog& operator=(EventLog&& other) noexcept;

  const std::vector<EventLogRecord>& records() const { return records_; }
  const std::filesystem::path& path() const { return path_; }
  std::uint64_t next_sequence() const { return records_.size(); }

  // Assigns the next sequence number. Throws EventLogError on write failure,
  // in which case nothing is recorded.
  const EventLogRecord& append(std::string kind, nlohmann::json payload, std::int64_t timestamp_ms);

 private:
  void close() noexcept;

  std::filesystem::path path_;
  std::string session_id_;
  std::vector<EventLogRecord> records_;
  int fd_ = -1;
};

// Reads and validates a log without opening it for writing.
std::vector<EventLogRecord> read_event_log(const std::filesystem::path& path,
                                           const std::string& session_id);

}  // namespace assess

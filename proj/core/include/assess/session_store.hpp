#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "assess/event_log.hpp"
#include "assess/knowledge_base.hpp"
#include "assess/metrics_config.hpp"
#include "assess/profile.hpp"
#include "assess/recommender.hpp"
#include "assess/report.hpp"
#include "assess/trace.hpp"

namespace assess {

enum class SessionState { created = 0, traced = 1, profiled = 2, complete = 3 };

std::string_view to_string(SessionState state);

struct Session {
  std::string id;
  std::int64_t created_at_ms = 0;
  SessionState state = SessionState::created;
  std::optional<std::string> trace_text;
  std::optional<AssessmentTrace> trace;
  // Checkbox entries submitted after (or without) the trace; they win over
  // manual records inside the trace.
  std::map<AbilityId, bool> manual_overrides;
  std::optional<AbilityProfile> profile;
  std::optional<Recommendation> recommendation;
  QuestionnaireScores questionnaires;

  // The trace the profile is computed from: uploaded trace plus overrides.
  AssessmentTrace effective_trace() const;
};

// Full session state, used for persistence checks and the GET endpoint.
nlohmann::ordered_json to_json(const Session& session);

class SessionError : public std::runtime_error {
 public:
  enum class Kind { not_found, wrong_state, invalid_input, storage };

  SessionError(Kind kind, const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}
  Kind kind() const noexcept { return kind_; }
  // Trace line that caused an invalid_input error, 0 otherwise.
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Sessions backed by one append-only event log each under <data_dir>/sessions.
// State is rebuilt by replaying the logs on construction. Mutations on one
// session are serialized; different sessions proceed independently.
class SessionStore {
 public:
  SessionStore(std::filesystem::path data_dir, KnowledgeBase kb, MetricsConfig config = {});
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  Session create();
  Session get(std::string_view id) const;
  std::vector<std::string> ids() const;

  // Idempotent on byte-identical resubmission. Parse errors leave the session untouched.
  Session submit_trace(std::string_view id, std::string_view trace_text);
  Session submit_manual(std::string_view id, std::string_view ability, bool detected);
  Session compute(std::string_view id);
  Session submit_sus(std::string_view id, const SusResponse& response);
  Session submit_tlx(std::string_view id, const TlxResponse& response);

  nlohmann::ordered_json report(std::string_view id) const;

  const KnowledgeBase& kb() const { return kb_; }
  const MetricsConfig& config() const { return config_; }
  const std::filesystem::path& data_dir() const { return data_dir_; }

 private:
  struct Slot;

  std::shared_ptr<Slot> slot(std::string_view id) const;
  Session mutate(std::string_view id, const std::string& kind, nlohmann::json payload);
  void apply(Session& session, const EventLogRecord& event) const;

  std::filesystem::path data_dir_;
  KnowledgeBase kb_;
  MetricsConfig config_;
  mutable std::shared_mutex slots_mutex_;
  std::map<std::string, std::shared_ptr<Slot>, std::less<>> slots_;
};

// 128 random bits, lowercase hex.
std::string new_session_id();

}  // namespace assess

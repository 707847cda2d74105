#include "assess/session_store.hpp"

#include <chrono>
#include <cstdio>
#include <random>

namespace assess {

using nlohmann::json;

std::string_view to_string(SessionState state) {
  switch (state) {
    case SessionState::created: return "created";
    case SessionState::traced: return "traced";
    case SessionState::profiled: return "profiled";
    case SessionState::complete: return "complete";
  }
  return "created";
}

AssessmentTrace Session::effective_trace() const {
  AssessmentTrace out = trace.value_or(AssessmentTrace{});
  for (const auto& [ability, detected] : manual_overrides) out.manual_entries[ability] = detected;
  return out;
}

ordered_json to_json(const Session& s) {
  ordered_json out;
  out["id"] = s.id;
  out["created_at_ms"] = s.created_at_ms;
  out["state"] = to_string(s.state);
  out["trace"] = s.trace_text ? ordered_json(*s.trace_text) : ordered_json();
  if (s.trace) {
    out["windows"] = s.trace->windows.size();
    out["records"] = s.trace->records.size();
  }
  ordered_json overrides = ordered_json::object();
  for (const auto& [a, v] : s.manual_overrides) overrides[std::string(to_string(a))] = v;
  out["manual_overrides"] = std::move(overrides);
  out["profile"] = s.profile ? to_json(*s.profile) : ordered_json();
  out["recommendation"] = s.recommendation ? to_json(*s.recommendation) : ordered_json();
  ordered_json q = ordered_json::object();
  if (s.questionnaires.sus) q["sus"] = to_json(*s.questionnaires.sus);
  if (s.questionnaires.tlx) q["tlx"] = to_json(*s.questionnaires.tlx);
  out["questionnaires"] = std::move(q);
  return out;
}

std::string new_session_id() {
  static std::mutex mutex;
  static std::random_device device;
  std::lock_guard lock(mutex);
  std::uniform_int_distribution<std::uint64_t> dist;
  char buffer[33];
  std::snprintf(buffer, sizeof buffer, "%016llx%016llx",
                static_cast<unsigned long long>(dist(device)),
                static_cast<unsigned long long>(dist(device)));
  return buffer;
}

namespace {

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

[[noreturn]] void wrong_state(const Session& s, const std::string& action) {
  throw SessionError(SessionError::Kind::wrong_state,
                     "cannot " + action + " session " + s.id + " in state " + std::string(to_string(s.state)));
}

}  // namespace

struct SessionStore::Slot {
  Slot(std::filesystem::path path, const std::string& id) : log(std::move(path), id) {}

  std::mutex mutex;
  Session session;
  EventLog log;
};

SessionStore::SessionStore(std::filesystem::path data_dir, KnowledgeBase kb, MetricsConfig config)
    : data_dir_(std::move(data_dir)), kb_(std::move(kb)), config_(config) {
  const auto dir = data_dir_ / "sessions";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw SessionError(SessionError::Kind::storage, "cannot create " + dir.string() + ": " + ec.message());

  for (const auto& file : std::filesystem::directory_iterator(dir)) {
    if (file.path().extension() != ".jsonl") continue;
    const std::string id = file.path().stem().string();
    try {
      auto s = std::make_shared<Slot>(file.path(), id);
      s->session.id = id;
      for (const EventLogRecord& event : s->log.records()) apply(s->session, event);
      if (!s->log.records().empty()) slots_.emplace(id, std::move(s));
    } catch (const SessionError& e) {
      throw SessionError(SessionError::Kind::storage, "replay of " + file.path().string() + " failed: " + e.what());
    } catch (const EventLogError& e) {
      throw SessionError(SessionError::Kind::storage, e.what());
    }
  }
}

SessionStore::~SessionStore() = default;

void SessionStore::apply(Session& s, const EventLogRecord& event) const {
  const json& p = event.payload;
  if (event.kind == "created") {
    if (event.sequence != 0) throw SessionError(SessionError::Kind::storage, "'created' must be the first event");
    s.created_at_ms = p.at("created_at_ms").get<std::int64_t>();
    s.state = SessionState::created;
    return;
  }
  if (event.sequence == 0) throw SessionError(SessionError::Kind::storage, "log does not start with 'created'");

  if (event.kind == "trace") {
    if (s.state != SessionState::created && s.state != SessionState::traced) wrong_state(s, "submit a trace to");
    const std::string text = p.at("text").get<std::string>();
    try {
      s.trace = parse_trace(text);
    } catch (const TraceError& e) {
      throw SessionError(SessionError::Kind::invalid_input, e.what(), e.line());
    }
    s.trace_text = text;
    s.state = SessionState::traced;
  } else if (event.kind == "manual") {
    if (s.state == SessionState::complete) wrong_state(s, "record a manual entry on");
    const std::string token = p.at("ability").get<std::string>();
    auto ability = parse_ability(token);
    if (!ability) throw SessionError(SessionError::Kind::invalid_input, "unknown ability '" + token + "'");
    s.manual_overrides[*ability] = p.at("detected").get<bool>();
    // A changed entry invalidates the computed profile.
    if (s.state == SessionState::profiled) {
      s.profile.reset();
      s.recommendation.reset();
      s.state = SessionState::traced;
    }
  } else if (event.kind == "computed") {
    if (s.state == SessionState::created) wrong_state(s, "compute");
    try {
      AbilityProfile profile = build_profile(s.effective_trace(), kb_, config_);
      s.recommendation = recommend(profile, kb_);
      s.profile = std::move(profile);
    } catch (const RecommendError& e) {
      throw SessionError(SessionError::Kind::invalid_input, e.what());
    }
    if (s.state < SessionState::profiled) s.state = SessionState::profiled;
  } else if (event.kind == "sus" || event.kind == "tlx") {
    if (s.state < SessionState::profiled) wrong_state(s, "submit a questionnaire to");
    try {
      if (event.kind == "sus") {
        s.questionnaires.sus = evaluate_sus(sus_from_json(p));
      } else {
        s.questionnaires.tlx = evaluate_tlx(tlx_from_json(p));
      }
    } catch (const QuestionnaireError& e) {
      throw SessionError(SessionError::Kind::invalid_input, e.what());
    }
    s.state = SessionState::complete;
  } else {
    throw SessionError(SessionError::Kind::storage, "unknown event kind '" + event.kind + "'");
  }
}

std::shared_ptr<SessionStore::Slot> SessionStore::slot(std::string_view id) const {
  std::shared_lock lock(slots_mutex_);
  auto it = slots_.find(id);
  if (it == slots_.end()) {
    throw SessionError(SessionError::Kind::not_found, "unknown session '" + std::string(id) + "'");
  }
  return it->second;
}

Session SessionStore::create() {
  std::string id;
  std::shared_ptr<Slot> s;
  {
    std::unique_lock lock(slots_mutex_);
    do {
      id = new_session_id();
    } while (slots_.count(id));
    try {
      s = std::make_shared<Slot>(data_dir_ / "sessions" / (id + ".jsonl"), id);
      s->session.id = id;
      const std::int64_t t = now_ms();
      const EventLogRecord& event = s->log.append("created", {{"created_at_ms", t}}, t);
      apply(s->session, event);
    } catch (const EventLogError& e) {
      throw SessionError(SessionError::Kind::storage, e.what());
    }
    slots_.emplace(id, s);
  }
  return s->session;
}

Session SessionStore::get(std::string_view id) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session;
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(slots_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : slots_) out.push_back(id);
  return out;
}

Session SessionStore::mutate(std::string_view id, const std::string& kind, json payload) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  const std::int64_t t = now_ms();
  // Validate against a copy first; only events that apply cleanly are logged.
  Session next = s->session;
  EventLogRecord event{next.id, s->log.next_sequence(), kind, payload, t};
  apply(next, event);
  try {
    s->log.append(kind, std::move(payload), t);
  } catch (const EventLogError& e) {
    throw SessionError(SessionError::Kind::storage, e.what());
  }
  s->session = std::move(next);
  return s->session;
}

Session SessionStore::submit_trace(std::string_view id, std::string_view trace_text) {
  {
    auto s = slot(id);
    std::lock_guard lock(s->mutex);
    if (s->session.state == SessionState::traced && s->session.trace_text == trace_text) {
      return s->session;
    }
  }
  return mutate(id, "trace", {{"text", std::string(trace_text)}});
}

Session SessionStore::submit_manual(std::string_view id, std::string_view ability, bool detected) {
  return mutate(id, "manual", {{"ability", std::string(ability)}, {"detected", detected}});
}

Session SessionStore::compute(std::string_view id) {
  return mutate(id, "computed", {{"kb_version", kb_.version}});
}

Session SessionStore::submit_sus(std::string_view id, const SusResponse& response) {
  return mutate(id, "sus", {{"items", response.items}});
}

Session SessionStore::submit_tlx(std::string_view id, const TlxResponse& response) {
  json ratings = json::object();
  for (std::size_t i = 0; i < kTlxDimensionCount; ++i) {
    ratings[std::string(to_string(static_cast<TlxDimension>(i)))] = response.ratings[i];
  }
  json payload = {{"ratings", ratings}};
  if (response.weights) {
    json weights = json::array();
    for (const PairwiseChoice& c : *response.weights) {
      weights.push_back({{"first", to_string(c.first)},
                         {"second", to_string(c.second)},
                         {"winner", to_string(c.winner)}});
    }
    payload["weights"] = std::move(weights);
  }
  return mutate(id, "tlx", std::move(payload));
}

ordered_json SessionStore::report(std::string_view id) const {
  const Session s = get(id);
  if (s.state < SessionState::profiled || !s.profile || !s.recommendation) wrong_state(s, "report on");
  ordered_json report = build_report(*s.profile, *s.recommendation, kb_, config_, s.questionnaires);
  report["session"] = {{"id", s.id}, {"state", to_string(s.state)}, {"created_at_ms", s.created_at_ms}};
  return report;
}

}  // namespace assess

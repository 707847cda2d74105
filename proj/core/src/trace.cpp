#include "assess/trace.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

namespace assess {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, kRecordKindCount> kKindNames = {
    "imu", "audio", "step", "face", "touch", "transcript", "task", "manual"};

std::string_view to_string(TouchPhase phase) {
  switch (phase) {
    case TouchPhase::down: return "down";
    case TouchPhase::move: return "move";
    case TouchPhase::up: return "up";
  }
  return "down";
}

std::string_view to_string(TaskPhase phase) { return phase == TaskPhase::start ? "start" : "end"; }

std::string describe(TraceError::Kind kind) {
  switch (kind) {
    case TraceError::Kind::malformed: return "malformed record";
    case TraceError::Kind::non_monotonic: return "non-monotonic timestamp";
    case TraceError::Kind::unmatched_task: return "unmatched task marker";
    case TraceError::Kind::unknown_token: return "unknown token";
    case TraceError::Kind::out_of_range: return "value out of range";
  }
  return "trace error";
}

class RecordReader {
 public:
  RecordReader(const json& object, std::size_t line) : object_(object), line_(line) {}

  [[noreturn]] void fail(TraceError::Kind kind, const std::string& message) const {
    throw TraceError(kind, line_, message);
  }

  const json& field(const char* key) {
    auto it = object_.find(key);
    if (it == object_.end()) fail(TraceError::Kind::malformed, std::string("missing field '") + key + "'");
    consumed_.push_back(key);
    return *it;
  }

  double number(const char* key) {
    const json& v = field(key);
    if (!v.is_number()) fail(TraceError::Kind::malformed, std::string("field '") + key + "' must be a number");
    return v.get<double>();
  }

  double unit_interval(const char* key) {
    double v = number(key);
    if (v < 0.0 || v > 1.0) {
      fail(TraceError::Kind::out_of_range, std::string("field '") + key + "' must lie in [0,1]");
    }
    return v;
  }

  std::string text(const char* key) {
    const json& v = field(key);
    if (!v.is_string()) fail(TraceError::Kind::malformed, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  bool boolean(const char* key) {
    const json& v = field(key);
    if (!v.is_boolean()) fail(TraceError::Kind::malformed, std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
  }

  Vec3 vec3(const char* key) {
    const json& v = field(key);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number()) {
      fail(TraceError::Kind::malformed, std::string("field '") + key + "' must be [x, y, z]");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
  }

  AbilityId ability() {
    std::string token = text("ability");
    auto id = parse_ability(token);
    if (!id) fail(TraceError::Kind::unknown_token, "unknown ability '" + token + "'");
    return *id;
  }

  void reject_extra_fields() const {
    for (const auto& item : object_.items()) {
      if (std::find(consumed_.begin(), consumed_.end(), item.key()) == consumed_.end()) {
        fail(TraceError::Kind::malformed, "unexpected field '" + item.key() + "'");
      }
    }
  }

 private:
  const json& object_;
  std::size_t line_;
  std::vector<std::string> consumed_;
};

}  // namespace

std::string_view to_string(RecordKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<RecordKind> parse_record_kind(std::string_view token) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == token) return static_cast<RecordKind>(i);
  }
  return std::nullopt;
}

TraceError::TraceError(Kind kind, std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + describe(kind) + ": " + message
                              : describe(kind) + ": " + message),
      kind_(kind),
      line_(line) {}

TraceRecord parse_record(std::string_view line, std::size_t line_number) {
  json object;
  try {
    object = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    throw TraceError(TraceError::Kind::malformed, line_number, e.what());
  }
  if (!object.is_object()) {
    throw TraceError(TraceError::Kind::malformed, line_number, "record must be a JSON object");
  }

  RecordReader reader(object, line_number);
  TraceRecord record;
  const json& t = reader.field("t_ms");
  if (!t.is_number_integer()) reader.fail(TraceError::Kind::malformed, "t_ms must be an integer");
  record.t_ms = t.get<std::int64_t>();
  if (record.t_ms < 0) reader.fail(TraceError::Kind::out_of_range, "t_ms must be non-negative");

  const std::string kind_token = reader.text("kind");
  auto kind = parse_record_kind(kind_token);
  if (!kind) reader.fail(TraceError::Kind::unknown_token, "unknown kind '" + kind_token + "'");

  switch (*kind) {
    case RecordKind::imu:
      record.payload = ImuSample{reader.vec3("accel"), reader.vec3("gyro")};
      break;
    case RecordKind::audio:
      record.payload = AudioFrame{reader.unit_interval("rms")};
      break;
    case RecordKind::step:
      record.payload = StepEvent{};
      break;
    case RecordKind::face: {
      FaceFrame face;
      face.smile_prob = reader.unit_interval("smile_prob");
      face.left_eye_open_prob = reader.unit_interval("left_eye_open_prob");
      face.right_eye_open_prob = reader.unit_interval("right_eye_open_prob");
      face.yaw_deg = reader.number("yaw");
      face.pitch_deg = reader.number("pitch");
      record.payload = face;
      break;
    }
    case RecordKind::touch: {
      TouchPoint touch;
      touch.x = reader.unit_interval("x");
      touch.y = reader.unit_interval("y");
      const std::string phase = reader.text("phase");
      if (phase == "down") {
        touch.phase = TouchPhase::down;
      } else if (phase == "move") {
        touch.phase = TouchPhase::move;
      } else if (phase == "up") {
        touch.phase = TouchPhase::up;
      } else {
        reader.fail(TraceError::Kind::unknown_token, "unknown touch phase '" + phase + "'");
      }
      record.payload = touch;
      break;
    }
    case RecordKind::transcript:
      record.payload = Transcript{reader.text("expected"), reader.text("recognized")};
      break;
    case RecordKind::task: {
      TaskMarker marker;
      marker.ability = reader.ability();
      const std::string phase = reader.text("phase");
      if (phase == "start") {
        marker.phase = TaskPhase::start;
      } else if (phase == "end") {
        marker.phase = TaskPhase::end;
      } else {
        reader.fail(TraceError::Kind::unknown_token, "unknown task phase '" + phase + "'");
      }
      record.payload = marker;
      break;
    }
    case RecordKind::manual: {
      ManualEntry entry;
      entry.ability = reader.ability();
      entry.detected = reader.boolean("detected");
      record.payload = entry;
      break;
    }
  }
  reader.reject_extra_fields();
  return record;
}

AssessmentTrace parse_trace(std::istream& in) {
  AssessmentTrace trace;
  struct OpenWindow {
    std::int64_t start_ms;
    std::size_t line;
  };
  std::map<AbilityId, OpenWindow> open;

  std::string line;
  std::size_t line_number = 0;
  std::int64_t last_t = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    TraceRecord record = parse_record(line, line_number);
    if (!trace.records.empty() && record.t_ms < last_t) {
      throw TraceError(TraceError::Kind::non_monotonic, line_number,
                       "t_ms " + std::to_string(record.t_ms) + " precedes " + std::to_string(last_t));
    }
    last_t = record.t_ms;

    if (const auto* marker = std::get_if<TaskMarker>(&record.payload)) {
      const std::string name(to_string(marker->ability));
      if (marker->phase == TaskPhase::start) {
        if (open.count(marker->ability)) {
          throw TraceError(TraceError::Kind::unmatched_task, line_number,
                           "task '" + name + "' started while already open");
        }
        open.emplace(marker->ability, OpenWindow{record.t_ms, line_number});
      } else {
        auto it = open.find(marker->ability);
        if (it == open.end()) {
          throw TraceError(TraceError::Kind::unmatched_task, line_number,
                           "task '" + name + "' ended without a start");
        }
        if (record.t_ms <= it->second.start_ms) {
          throw TraceError(TraceError::Kind::out_of_range, line_number,
                           "task '" + name + "' window is empty");
        }
        trace.windows.push_back({marker->ability, it->second.start_ms, record.t_ms});
        open.erase(it);
      }
    } else if (const auto* entry = std::get_if<ManualEntry>(&record.payload)) {
      trace.manual_entries[entry->ability] = entry->detected;
    }
    trace.records.push_back(std::move(record));
  }
  if (in.bad()) throw TraceError(TraceError::Kind::malformed, 0, "stream read failure");

  if (!open.empty()) {
    auto first = std::min_element(open.begin(), open.end(), [](const auto& a, const auto& b) {
      return a.second.line < b.second.line;
    });
    throw TraceError(TraceError::Kind::unmatched_task, first->second.line,
                     "task '" + std::string(to_string(first->first)) + "' never ended");
  }
  return trace;
}

AssessmentTrace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

std::string to_jsonl(const TraceRecord& record) {
  ordered_json out;
  out["t_ms"] = record.t_ms;
  out["kind"] = to_string(record.kind());
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ImuSample>) {
          out["accel"] = {p.accel.x, p.accel.y, p.accel.z};
          out["gyro"] = {p.gyro.x, p.gyro.y, p.gyro.z};
        } else if constexpr (std::is_same_v<T, AudioFrame>) {
          out["rms"] = p.rms;
        } else if constexpr (std::is_same_v<T, FaceFrame>) {
          out["smile_prob"] = p.smile_prob;
          out["left_eye_open_prob"] = p.left_eye_open_prob;
          out["right_eye_open_prob"] = p.right_eye_open_prob;
          out["yaw"] = p.yaw_deg;
          out["pitch"] = p.pitch_deg;
        } else if constexpr (std::is_same_v<T, TouchPoint>) {
          out["x"] = p.x;
          out["y"] = p.y;
          out["phase"] = to_string(p.phase);
        } else if constexpr (std::is_same_v<T, Transcript>) {
          out["expected"] = p.expected;
          out["recognized"] = p.recognized;
        } else if constexpr (std::is_same_v<T, TaskMarker>) {
          out["ability"] = to_string(p.ability);
          out["phase"] = to_string(p.phase);
        } else if constexpr (std::is_same_v<T, ManualEntry>) {
          out["ability"] = to_string(p.ability);
          out["detected"] = p.detected;
        }
      },
      record.payload);
  return out.dump();
}

std::string to_jsonl(const std::vector<TraceRecord>& records) {
  std::string out;
  for (const TraceRecord& r : records) {
    out += to_jsonl(r);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> slice_range(const AssessmentTrace& trace, std::int64_t start_ms,
                                     std::int64_t end_ms, const KindFilter& filter) {
  auto by_time = [](const TraceRecord& r, std::int64_t t) { return r.t_ms < t; };
  auto first = std::lower_bound(trace.records.begin(), trace.records.end(), start_ms, by_time);
  auto last = std::lower_bound(first, trace.records.end(), end_ms, by_time);
  std::vector<TraceRecord> out;
  for (auto it = first; it != last; ++it) {
    if (filter.accepts(it->kind())) out.push_back(*it);
  }
  return out;
}

std::vector<TraceRecord> slice_window(const AssessmentTrace& trace, const TaskWindow& window,
                                      const KindFilter& filter) {
  if (std::find(trace.windows.begin(), trace.windows.end(), window) == trace.windows.end()) {
    throw std::invalid_argument("unknown window for ability '" +
                                std::string(to_string(window.ability)) + "'");
  }
  return slice_range(trace, window.start_ms, window.end_ms, filter);
}

}  // namespace assess

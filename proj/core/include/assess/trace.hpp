#pragma once

#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "assess/ability.hpp"

namespace assess {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Vec3&) const = default;
};

// accel in m/s^2, gyro in rad/s, device frame.
struct ImuSample {
  Vec3 accel;
  Vec3 gyro;
  bool operator==(const ImuSample&) const = default;
};

// Frame RMS amplitude relative to full scale, in [0,1].
struct AudioFrame {
  double rms = 0.0;
  bool operator==(const AudioFrame&) const = default;
};

struct StepEvent {
  bool operator==(const StepEvent&) const = default;
};

// Face detector output for one video frame.
struct FaceFrame {
  double smile_prob = 0.0;
  double left_eye_open_prob = 0.0;
  double right_eye_open_prob = 0.0;
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  bool operator==(const FaceFrame&) const = default;
};

enum class TouchPhase { down, move, up };

struct TouchPoint {
  double x = 0.0;  // normalized [0,1]
  double y = 0.0;
  TouchPhase phase = TouchPhase::down;
  bool operator==(const TouchPoint&) const = default;
};

struct Transcript {
  std::string expected;
  std::string recognized;
  bool operator==(const Transcript&) const = default;
};

enum class TaskPhase { start, end };

struct TaskMarker {
  AbilityId ability{};
  TaskPhase phase = TaskPhase::start;
  bool operator==(const TaskMarker&) const = default;
};

struct ManualEntry {
  AbilityId ability{};
  bool detected = false;
  bool operator==(const ManualEntry&) const = default;
};

// Variant alternative order matches RecordKind.
enum class RecordKind : std::uint8_t { imu, audio, step, face, touch, transcript, task, manual };
inline constexpr std::size_t kRecordKindCount = 8;

std::string_view to_string(RecordKind kind);
std::optional<RecordKind> parse_record_kind(std::string_view token);

using RecordPayload = std::variant<ImuSample, AudioFrame, StepEvent, FaceFrame, TouchPoint,
                                   Transcript, TaskMarker, ManualEntry>;

struct TraceRecord {
  std::int64_t t_ms = 0;
  RecordPayload payload;

  RecordKind kind() const { return static_cast<RecordKind>(payload.index()); }
  bool operator==(const TraceRecord&) const = default;
};

// Half-open interval [start_ms, end_ms) during which one ability was prompted.
struct TaskWindow {
  AbilityId ability{};
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;

  std::int64_t duration_ms() const { return end_ms - start_ms; }
  bool operator==(const TaskWindow&) const = default;
};

struct AssessmentTrace {
  std::vector<TraceRecord> records;  // non-decreasing t_ms
  std::vector<TaskWindow> windows;   // in order of their end markers
  std::map<AbilityId, bool> manual_entries;

  bool operator==(const AssessmentTrace&) const = default;
};

class TraceError : public std::runtime_error {
 public:
  enum class Kind { malformed, non_monotonic, unmatched_task, unknown_token, out_of_range };

  TraceError(Kind kind, std::size_t line, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  // 1-based line number of the offending record, 0 when not line-specific.
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Parses a JSON Lines trace. Blank lines are skipped. Throws TraceError; a
// rejected stream never yields a partial trace.
AssessmentTrace parse_trace(std::istream& in);
AssessmentTrace parse_trace(std::string_view text);

// Decodes a single JSONL line without cross-record validation.
TraceRecord parse_record(std::string_view line, std::size_t line_number = 0);

// One JSON object per record, no trailing newline.
std::string to_jsonl(const TraceRecord& record);
std::string to_jsonl(const std::vector<TraceRecord>& records);

class KindFilter {
 public:
  KindFilter() = default;
  KindFilter(std::initializer_list<RecordKind> kinds) {
    for (RecordKind k : kinds) bits_.set(static_cast<std::size_t>(k));
  }
  static KindFilter all() {
    KindFilter f;
    f.bits_.set();
    return f;
  }
  bool accepts(RecordKind kind) const { return bits_.test(static_cast<std::size_t>(kind)); }

 private:
  std::bitset<kRecordKindCount> bits_;
};

// Records with start_ms <= t_ms < end_ms whose kind passes the filter. Throws
// std::invalid_argument when the window is not one of trace.windows.
std::vector<TraceRecord> slice_window(const AssessmentTrace& trace, const TaskWindow& window,
                                      const KindFilter& filter);

// Same half-open slice without the membership check; used for windows derived
// from trace windows (e.g. the clamped step window).
std::vector<TraceRecord> slice_range(const AssessmentTrace& trace, std::int64_t start_ms,
                                     std::int64_t end_ms, const KindFilter& filter);

}  // namespace assess

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assess/ability.hpp"
#include "assess/metrics_config.hpp"
#include "assess/trace.hpp"

namespace assess {

enum class MetricUnit { degrees, db, steps, count, similarity, probability, boolean };
enum class MetricMethod { sensor, manual };

std::string_view to_string(MetricUnit unit);
std::string_view to_string(MetricMethod method);
std::optional<MetricUnit> parse_metric_unit(std::string_view token);
std::optional<MetricMethod> parse_metric_method(std::string_view token);

struct MetricValue {
  AbilityId ability{};
  double value = 0.0;
  MetricUnit unit = MetricUnit::boolean;
  double confidence = 1.0;
  MetricMethod method = MetricMethod::sensor;

  bool operator==(const MetricValue&) const = default;
};

// ---------------------------------------------------------------------------
// Orientation
// ---------------------------------------------------------------------------

// Device frame: x lateral, y toward the top edge, z out of the screen. Pitch is rotation
// about x (positive tilts the top edge up, gyro_x), roll about y (gyro_y), yaw
// about z (gyro_z, positive = left). Pitch and roll are wrapped to [-180,180);
// yaw is cumulative.
struct OrientationEstimate {
  std::int64_t t_ms = 0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  double yaw_deg = 0.0;
};

struct TimedImu {
  std::int64_t t_ms = 0;
  ImuSample sample;
};

// Accelerometer-only tilt for one sample, degrees.
double accel_pitch_deg(const Vec3& accel);
double accel_roll_deg(const Vec3& accel);

// Complementary filter: each step blends gyro integration (weight alpha) with
// the accelerometer tilt (weight 1 - alpha). The first sample is taken from the
// accelerometer alone. Throws std::invalid_argument on empty input or alpha
// outside [0,1].
std::vector<OrientationEstimate> estimate_orientation(std::span<const TimedImu> samples,
                                                      double alpha = 0.98);

std::vector<TimedImu> imu_samples(std::span<const TraceRecord> records);

struct HeadRom {
  double max_up_deg = 0.0;
  double max_down_deg = 0.0;
  double max_left_deg = 0.0;
  double max_right_deg = 0.0;
};

// Excursions relative to the first estimate, clamped at zero.
HeadRom head_rom(std::span<const OrientationEstimate> series);

// Orientation taken directly from face-detector yaw/pitch, used when a head
// window carries no IMU data. Roll is zero.
std::vector<OrientationEstimate> face_orientation(std::span<const TraceRecord> records);

// ---------------------------------------------------------------------------
// Audio
// ---------------------------------------------------------------------------

enum class BlowDirection { in, out };

// 20*log10(rms) + offset; rms == 0 yields -infinity. Throws
// std::invalid_argument when rms is outside [0,1].
double audio_level_db(double rms, double cal_offset_db = 94.0);

struct BlowResult {
  bool detected = false;
  double peak_db = 0.0;  // -infinity for silence or an empty window
  double threshold_db = 0.0;
  bool marginal = false;  // detected with peak within blow_marginal_db of the threshold
};

// Detected iff consecutive frames at or above the direction's threshold span at
// least blow_sustain_ms (first to last frame of the run).
BlowResult detect_blow(std::span<const TraceRecord> records, BlowDirection direction,
                       const MetricsConfig& config = {});

// ---------------------------------------------------------------------------
// Steps
// ---------------------------------------------------------------------------

// Counts steps in window, clamped to step_window_ms from its start. Step events
// win when present; otherwise accelerometer-magnitude peaks above step_peak_ms2
// separated by at least step_refractory_ms.
int count_steps(const AssessmentTrace& trace, const TaskWindow& window,
                const MetricsConfig& config = {});

int count_accel_peaks(std::span<const TraceRecord> records, const MetricsConfig& config = {});

// ---------------------------------------------------------------------------
// Face
// ---------------------------------------------------------------------------

// One blink per close (min eye-open < blink_closed_prob) that reopens
// (> blink_open_prob) within blink_recovery_ms. A close only counts after the
// eyes have been seen open.
int detect_blink(std::span<const TraceRecord> records, const MetricsConfig& config = {});

struct SmileResult {
  bool detected = false;
  double peak_prob = 0.0;
};

SmileResult detect_smile(std::span<const TraceRecord> records, const MetricsConfig& config = {});

// ---------------------------------------------------------------------------
// Speech
// ---------------------------------------------------------------------------

// Lowercase, punctuation stripped, whitespace runs collapsed, trimmed.
std::string normalize_phrase(std::string_view text);
std::size_t edit_distance(std::string_view a, std::string_view b);

// 1 - edit_distance / max(length) over normalized texts. Throws
// std::invalid_argument when the expected phrase normalizes to empty.
double score_speech(std::string_view expected, std::string_view recognized);

// ---------------------------------------------------------------------------
// Limb motion
// ---------------------------------------------------------------------------

enum class Axis { x, y, z };

struct MotionRom {
  double degrees = 0.0;
  Axis axis = Axis::x;
  bool significant = false;
};

// Integrates |gyro| per axis (rectangular rule) and reports the dominant axis.
// With an axis selection only that axis is integrated. Throws
// std::invalid_argument on an empty window.
MotionRom motion_rom(std::span<const TraceRecord> records, std::optional<Axis> axis = std::nullopt,
                     const MetricsConfig& config = {});

// ---------------------------------------------------------------------------
// Touch
// ---------------------------------------------------------------------------

struct TouchSummary {
  int tap_count = 0;
  int swipe_count = 0;
  std::vector<std::string> warnings;

  int gestures() const { return tap_count + swipe_count; }
};

TouchSummary classify_touch(std::span<const TraceRecord> records, const MetricsConfig& config = {});

}  // namespace assess

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "assess/metrics.hpp"

namespace assess {
namespace {

constexpr std::array<std::string_view, 7> kUnitNames = {
    "degrees", "dB", "steps", "count", "similarity", "probability", "boolean"};
constexpr std::array<std::string_view, 2> kMethodNames = {"sensor", "manual"};

double magnitude(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

}  // namespace

std::string_view to_string(MetricUnit unit) { return kUnitNames[static_cast<std::size_t>(unit)]; }
std::string_view to_string(MetricMethod method) {
  return kMethodNames[static_cast<std::size_t>(method)];
}

std::optional<MetricUnit> parse_metric_unit(std::string_view token) {
  for (std::size_t i = 0; i < kUnitNames.size(); ++i) {
    if (kUnitNames[i] == token) return static_cast<MetricUnit>(i);
  }
  return std::nullopt;
}

std::optional<MetricMethod> parse_metric_method(std::string_view token) {
  for (std::size_t i = 0; i < kMethodNames.size(); ++i) {
    if (kMethodNames[i] == token) return static_cast<MetricMethod>(i);
  }
  return std::nullopt;
}

int count_accel_peaks(std::span<const TraceRecord> records, const MetricsConfig& config) {
  std::vector<std::pair<std::int64_t, double>> mags;
  for (const TraceRecord& r : records) {
    if (const auto* imu = std::get_if<ImuSample>(&r.payload)) {
      mags.emplace_back(r.t_ms, magnitude(imu->accel));
    }
  }
  int steps = 0;
  std::optional<std::int64_t> last_counted;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double m = mags[i].second;
    if (m <= config.step_peak_ms2) continue;
    const bool rising = i == 0 || m >= mags[i - 1].second;
    const bool falling = i + 1 == mags.size() || m > mags[i + 1].second;
    if (!rising || !falling) continue;
    if (last_counted &&
        static_cast<double>(mags[i].first - *last_counted) < config.step_refractory_ms) {
      continue;
    }
    ++steps;
    last_counted = mags[i].first;
  }
  return steps;
}

int count_steps(const AssessmentTrace& trace, const TaskWindow& window,
                const MetricsConfig& config) {
  const auto limit = window.start_ms + static_cast<std::int64_t>(config.step_window_ms);
  const std::int64_t end = std::min(window.end_ms, limit);
  const auto records =
      slice_range(trace, window.start_ms, end, KindFilter{RecordKind::step, RecordKind::imu});
  const auto events = std::count_if(records.begin(), records.end(), [](const TraceRecord& r) {
    return r.kind() == RecordKind::step;
  });
  if (events > 0) return static_cast<int>(events);
  return count_accel_peaks(records, config);
}

int detect_blink(std::span<const TraceRecord> records, const MetricsConfig& config) {
  enum class State { unknown, open, closed, stuck };
  State state = State::unknown;
  std::int64_t closed_at = 0;
  int blinks = 0;
  for (const TraceRecord& r : records) {
    const auto* face = std::get_if<FaceFrame>(&r.payload);
    if (face == nullptr) continue;
    const double eye = std::min(face->left_eye_open_prob, face->right_eye_open_prob);
    switch (state) {
      case State::unknown:
      case State::stuck:
        if (eye > config.blink_open_prob) state = State::open;
        break;
      case State::open:
        if (eye < config.blink_closed_prob) {
          state = State::closed;
          closed_at = r.t_ms;
        }
        break;
      case State::closed:
        if (eye > config.blink_open_prob) {
          if (static_cast<double>(r.t_ms - closed_at) <= config.blink_recovery_ms) ++blinks;
          state = State::open;
        } else if (static_cast<double>(r.t_ms - closed_at) > config.blink_recovery_ms) {
          state = State::stuck;
        }
        break;
    }
  }
  return blinks;
}

SmileResult detect_smile(std::span<const TraceRecord> records, const MetricsConfig& config) {
  SmileResult result;
  bool in_run = false;
  std::int64_t run_start = 0;
  for (const TraceRecord& r : records) {
    const auto* face = std::get_if<FaceFrame>(&r.payload);
    if (face == nullptr) continue;
    result.peak_prob = std::max(result.peak_prob, face->smile_prob);
    if (face->smile_prob >= config.smile_prob) {
      if (!in_run) {
        in_run = true;
        run_start = r.t_ms;
      }
      if (static_cast<double>(r.t_ms - run_start) >= config.smile_sustain_ms) result.detected = true;
    } else {
      in_run = false;
    }
  }
  return result;
}

MotionRom motion_rom(std::span<const TraceRecord> records, std::optional<Axis> axis,
                     const MetricsConfig& config) {
  const std::vector<TimedImu> samples = imu_samples(records);
  if (samples.empty()) throw std::invalid_argument("motion_rom: window has no IMU samples");

  std::array<double, 3> integrated{0.0, 0.0, 0.0};
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double dt = static_cast<double>(samples[i].t_ms - samples[i - 1].t_ms) / 1000.0;
    const Vec3& g = samples[i].sample.gyro;
    integrated[0] += std::abs(g.x) * dt;
    integrated[1] += std::abs(g.y) * dt;
    integrated[2] += std::abs(g.z) * dt;
  }

  MotionRom rom;
  std::size_t chosen = 0;
  if (axis) {
    chosen = static_cast<std::size_t>(*axis);
  } else {
    chosen = static_cast<std::size_t>(
        std::max_element(integrated.begin(), integrated.end()) - integrated.begin());
  }
  rom.axis = static_cast<Axis>(chosen);
  rom.degrees = integrated[chosen] * 180.0 / std::numbers::pi;
  rom.significant = rom.degrees >= config.significant_motion_deg;
  return rom;
}

TouchSummary classify_touch(std::span<const TraceRecord> records, const MetricsConfig& config) {
  TouchSummary summary;
  struct Down {
    std::int64_t t_ms = 0;
    double x = 0.0;
    double y = 0.0;
  };
  // Plain flag plus value; std::optional trips a gcc maybe-uninitialized false positive here.
  bool down = false;
  Down active;
  for (const TraceRecord& r : records) {
    const auto* touch = std::get_if<TouchPoint>(&r.payload);
    if (touch == nullptr) continue;
    const std::string at = " at t=" + std::to_string(r.t_ms);
    switch (touch->phase) {
      case TouchPhase::down:
        if (down) summary.warnings.push_back("touch down without up" + at + ", previous contact dropped");
        active = Down{r.t_ms, touch->x, touch->y};
        down = true;
        break;
      case TouchPhase::move:
        if (!down) summary.warnings.push_back("touch move without down" + at);
        break;
      case TouchPhase::up: {
        if (!down) {
          summary.warnings.push_back("touch up without down" + at);
          break;
        }
        const double displacement = std::hypot(touch->x - active.x, touch->y - active.y);
        const auto duration = static_cast<double>(r.t_ms - active.t_ms);
        if (displacement >= config.swipe_min_displacement) {
          ++summary.swipe_count;
        } else if (duration <= config.tap_max_ms && displacement < config.tap_max_displacement) {
          ++summary.tap_count;
        }
        down = false;
        break;
      }
    }
  }
  if (down) summary.warnings.push_back("touch down at t=" + std::to_string(active.t_ms) + " never lifted");
  return summary;
}

}  // namespace assess

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "assess/metrics.hpp"

namespace assess {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Wraps to [-180,180); values already in range are returned unchanged.
double wrap_deg(double angle) {
  if (angle >= -180.0 && angle < 180.0) return angle;
  angle = std::fmod(angle + 180.0, 360.0);
  if (angle < 0.0) angle += 360.0;
  return angle - 180.0;
}

// Accelerometer angle shifted by whole turns to lie within 180 deg of the prediction.
double nearest_turn(double accel_angle, double predicted) {
  while (accel_angle - predicted > 180.0) accel_angle -= 360.0;
  while (accel_angle - predicted < -180.0) accel_angle += 360.0;
  return accel_angle;
}

double blend(double predicted, double accel_angle, double alpha) {
  return wrap_deg(alpha * predicted + (1.0 - alpha) * nearest_turn(accel_angle, predicted));
}

}  // namespace

double accel_pitch_deg(const Vec3& a) {
  return std::atan2(a.y, std::sqrt(a.x * a.x + a.z * a.z)) * kRadToDeg;
}

double accel_roll_deg(const Vec3& a) {
  return std::atan2(-a.x, std::sqrt(a.y * a.y + a.z * a.z)) * kRadToDeg;
}

std::vector<TimedImu> imu_samples(std::span<const TraceRecord> records) {
  std::vector<TimedImu> out;
  for (const TraceRecord& r : records) {
    if (const auto* imu = std::get_if<ImuSample>(&r.payload)) out.push_back({r.t_ms, *imu});
  }
  return out;
}

std::vector<OrientationEstimate> estimate_orientation(std::span<const TimedImu> samples,
                                                      double alpha) {
  if (samples.empty()) throw std::invalid_argument("estimate_orientation: no IMU samples");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("estimate_orientation: alpha must lie in [0,1]");
  }

  std::vector<OrientationEstimate> out;
  out.reserve(samples.size());
  const TimedImu& first = samples.front();
  out.push_back({first.t_ms, accel_pitch_deg(first.sample.accel),
                 accel_roll_deg(first.sample.accel), 0.0});

  for (std::size_t i = 1; i < samples.size(); ++i) {
    const TimedImu& s = samples[i];
    const OrientationEstimate& prev = out.back();
    const double dt = static_cast<double>(s.t_ms - samples[i - 1].t_ms) / 1000.0;
    const Vec3& g = s.sample.gyro;

    OrientationEstimate next;
    next.t_ms = s.t_ms;
    next.pitch_deg = blend(prev.pitch_deg + g.x * kRadToDeg * dt, accel_pitch_deg(s.sample.accel), alpha);
    next.roll_deg = blend(prev.roll_deg + g.y * kRadToDeg * dt, accel_roll_deg(s.sample.accel), alpha);
    next.yaw_deg = prev.yaw_deg + g.z * kRadToDeg * dt;
    out.push_back(next);
  }
  return out;
}

HeadRom head_rom(std::span<const OrientationEstimate> series) {
  if (series.empty()) throw std::invalid_argument("head_rom: empty orientation series");
  const OrientationEstimate& origin = series.front();
  double max_pitch = origin.pitch_deg, min_pitch = origin.pitch_deg;
  double max_yaw = origin.yaw_deg, min_yaw = origin.yaw_deg;
  for (const OrientationEstimate& e : series) {
    max_pitch = std::max(max_pitch, e.pitch_deg);
    min_pitch = std::min(min_pitch, e.pitch_deg);
    max_yaw = std::max(max_yaw, e.yaw_deg);
    min_yaw = std::min(min_yaw, e.yaw_deg);
  }
  HeadRom rom;
  rom.max_up_deg = std::max(0.0, max_pitch - origin.pitch_deg);
  rom.max_down_deg = std::max(0.0, origin.pitch_deg - min_pitch);
  rom.max_left_deg = std::max(0.0, max_yaw - origin.yaw_deg);
  rom.max_right_deg = std::max(0.0, origin.yaw_deg - min_yaw);
  return rom;
}

std::vector<OrientationEstimate> face_orientation(std::span<const TraceRecord> records) {
  std::vector<OrientationEstimate> out;
  for (const TraceRecord& r : records) {
    if (const auto* face = std::get_if<FaceFrame>(&r.payload)) {
      out.push_back({r.t_ms, face->pitch_deg, 0.0, face->yaw_deg});
    }
  }
  return out;
}

}  // namespace assess

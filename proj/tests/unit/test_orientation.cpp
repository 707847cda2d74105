#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "assess/metrics.hpp"
#include "trace_gen.hpp"

using namespace assess;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<TimedImu> constant_imu(int n, double rate_hz, Vec3 accel, Vec3 gyro) {
  std::vector<TimedImu> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({static_cast<std::int64_t>(std::llround(i * 1000.0 / rate_hz)), {accel, gyro}});
  }
  return out;
}

double wrap(double a) {
  a = std::fmod(a + 180.0, 360.0);
  if (a < 0) a += 360.0;
  return a - 180.0;
}

std::vector<TimedImu> imu_from(const std::string& jsonl) {
  return imu_samples(parse_trace(std::string_view(jsonl)).records);
}

}  // namespace

TEST(Orientation, GravityAlignedRest) {
  const auto series = estimate_orientation(constant_imu(300, 100, {0, 0, 9.81}, {}));
  for (const auto& e : series) {
    EXPECT_EQ(e.pitch_deg, 0.0);
    EXPECT_EQ(e.roll_deg, 0.0);
    EXPECT_EQ(e.yaw_deg, 0.0);
  }
}

TEST(Orientation, StaticThirtyDegreeTilt) {
  const double g = 9.81, th = 30.0 * kPi / 180.0;
  const auto series = estimate_orientation(constant_imu(200, 100, {0, g * std::sin(th), g * std::cos(th)}, {}));
  // Within 2 s at 100 Hz the estimate sits on 30 degrees.
  EXPECT_NEAR(series.back().pitch_deg, 30.0, 1e-9);
  EXPECT_EQ(series.back().t_ms, 1990);
  for (const auto& e : series) EXPECT_NEAR(e.pitch_deg, 30.0, 1e-9);
}

TEST(Orientation, RollFromLateralGravity) {
  const double g = 9.81, ph = 20.0 * kPi / 180.0;
  EXPECT_NEAR(accel_roll_deg({-g * std::sin(ph), 0.0, g * std::cos(ph)}), 20.0, 1e-9);
  EXPECT_NEAR(accel_pitch_deg({0.0, -g * std::sin(ph), g * std::cos(ph)}), -20.0, 1e-9);
}

TEST(Orientation, YawQuarterTurnPureGyro) {
  // 101 samples span exactly 1 s; rectangular oracle: sum of rate * dt over 100 intervals.
  const auto imu = constant_imu(101, 100, {0, 0, 9.81}, {0, 0, kPi / 2});
  double oracle = 0.0;
  for (std::size_t i = 1; i < imu.size(); ++i) {
    oracle += (kPi / 2) * (180.0 / kPi) * static_cast<double>(imu[i].t_ms - imu[i - 1].t_ms) / 1000.0;
  }
  const auto series = estimate_orientation(imu, 1.0);
  EXPECT_NEAR(oracle, 90.0, 1e-9);
  EXPECT_NEAR(series.back().yaw_deg, 90.0, 1.0);
  EXPECT_NEAR(series.back().yaw_deg, oracle, 1e-9);
}

TEST(Orientation, Preconditions) {
  EXPECT_THROW(estimate_orientation({}), std::invalid_argument);
  const auto imu = constant_imu(3, 100, {0, 0, 9.81}, {});
  EXPECT_THROW(estimate_orientation(imu, -0.1), std::invalid_argument);
  EXPECT_THROW(estimate_orientation(imu, 1.1), std::invalid_argument);
  EXPECT_THROW(head_rom({}), std::invalid_argument);
}

TEST(OrientationProperty, AlphaZeroIsAccelerometerTilt) {
  std::mt19937 rng(3);
  std::normal_distribution<double> n(0.0, 3.0);
  std::vector<TimedImu> imu;
  for (int i = 0; i < 500; ++i) {
    imu.push_back({i * 10, {{n(rng), n(rng), 9.81 + n(rng)}, {n(rng) * 0.01, n(rng) * 0.01, n(rng)}}});
  }
  const auto series = estimate_orientation(imu, 0.0);
  for (std::size_t i = 0; i < imu.size(); ++i) {
    ASSERT_DOUBLE_EQ(series[i].pitch_deg, accel_pitch_deg(imu[i].sample.accel)) << i;
    ASSERT_DOUBLE_EQ(series[i].roll_deg, accel_roll_deg(imu[i].sample.accel)) << i;
  }
}

TEST(OrientationProperty, AlphaOneIsGyroIntegration) {
  std::mt19937 rng(5);
  std::normal_distribution<double> n(0.0, 2.0);
  std::uniform_int_distribution<int> dt(1, 25);
  std::vector<TimedImu> imu;
  std::int64_t t = 0;
  for (int i = 0; i < 500; ++i) {
    t += dt(rng);
    imu.push_back({t, {{n(rng), n(rng), 9.81}, {n(rng), n(rng), n(rng)}}});
  }
  const auto series = estimate_orientation(imu, 1.0);
  double pitch = accel_pitch_deg(imu[0].sample.accel), roll = accel_roll_deg(imu[0].sample.accel), yaw = 0.0;
  for (std::size_t i = 1; i < imu.size(); ++i) {
    const double step = static_cast<double>(imu[i].t_ms - imu[i - 1].t_ms) / 1000.0 * 180.0 / kPi;
    pitch += imu[i].sample.gyro.x * step;
    roll += imu[i].sample.gyro.y * step;
    yaw += imu[i].sample.gyro.z * step;
    ASSERT_NEAR(series[i].pitch_deg, wrap(pitch), 1e-6) << i;
    ASSERT_NEAR(series[i].roll_deg, wrap(roll), 1e-6) << i;
    ASSERT_NEAR(series[i].yaw_deg, yaw, 1e-6) << i;
    ASSERT_GE(series[i].pitch_deg, -180.0);
    ASSERT_LT(series[i].pitch_deg, 180.0);
  }
}

TEST(HeadRom, ConstantOrientationIsZero) {
  const auto series = estimate_orientation(constant_imu(100, 100, {0, 0, 9.81}, {}));
  const HeadRom rom = head_rom(series);
  EXPECT_EQ(rom.max_up_deg, 0.0);
  EXPECT_EQ(rom.max_down_deg, 0.0);
  EXPECT_EQ(rom.max_left_deg, 0.0);
  EXPECT_EQ(rom.max_right_deg, 0.0);
}

TEST(HeadRom, PitchRiseAndReturn) {
  gen::TraceBuilder b;
  b.head_pitch(0, {25.0, 2000});
  const HeadRom rom = head_rom(estimate_orientation(imu_from(b.jsonl())));
  EXPECT_NEAR(rom.max_up_deg, 25.0, 1.0);
  EXPECT_NEAR(rom.max_down_deg, 0.0, 1.0);
}

TEST(HeadRom, PitchDown) {
  gen::TraceBuilder b;
  b.head_pitch(0, {-40.0, 1500});
  const HeadRom rom = head_rom(estimate_orientation(imu_from(b.jsonl())));
  EXPECT_NEAR(rom.max_down_deg, 40.0, 1.0);
  EXPECT_NEAR(rom.max_up_deg, 0.0, 1.0);
}

TEST(HeadRom, YawExcursionBothWays) {
  gen::TraceBuilder b;
  b.head_yaw(0, {-30.0, 1500});
  b.head_yaw(1510, {85.0, 2500});
  const HeadRom rom = head_rom(estimate_orientation(imu_from(b.jsonl())));
  EXPECT_NEAR(rom.max_left_deg, 85.0, 1.0);
  EXPECT_NEAR(rom.max_right_deg, 30.0, 1.0);
}

TEST(HeadRomProperty, NonNegativeAndGrowsWithWindow) {
  std::mt19937 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<TimedImu> imu;
  for (int i = 0; i < 400; ++i) {
    imu.push_back({i * 10, {{n(rng), n(rng), 9.81}, {n(rng), n(rng), n(rng)}}});
  }
  const auto series = estimate_orientation(imu);
  HeadRom prev;
  for (std::size_t len = 1; len <= series.size(); ++len) {
    const HeadRom rom = head_rom(std::span(series).first(len));
    ASSERT_GE(rom.max_up_deg, prev.max_up_deg);
    ASSERT_GE(rom.max_down_deg, prev.max_down_deg);
    ASSERT_GE(rom.max_left_deg, prev.max_left_deg);
    ASSERT_GE(rom.max_right_deg, prev.max_right_deg);
    prev = rom;
  }
  EXPECT_GE(prev.max_up_deg, 0.0);
}

TEST(HeadRom, FaceOrientationSeries) {
  gen::TraceBuilder b;
  b.face(0, 0.1, 0.9, 0.9, 0.0, 0.0);
  b.face(100, 0.1, 0.9, 0.9, 15.0, 22.0);
  b.face(200, 0.1, 0.9, 0.9, -5.0, -3.0);
  const AssessmentTrace trace = parse_trace(std::string_view(b.jsonl()));
  const auto series = face_orientation(trace.records);
  ASSERT_EQ(series.size(), 3u);
  const HeadRom rom = head_rom(series);
  EXPECT_EQ(rom.max_up_deg, 22.0);
  EXPECT_EQ(rom.max_down_deg, 3.0);
  EXPECT_EQ(rom.max_left_deg, 15.0);
  EXPECT_EQ(rom.max_right_deg, 5.0);
}

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "assess/metrics.hpp"
#include "fixtures.hpp"
#include "trace_gen.hpp"

using namespace assess;

namespace {

AssessmentTrace parse(const std::string& jsonl) { return parse_trace(std::string_view(jsonl)); }

std::vector<TraceRecord> records(const gen::TraceBuilder& b) { return parse(b.jsonl()).records; }

}  // namespace

// ---------------------------------------------------------------------------
// Audio level and blow detection

TEST(AudioLevel, Calibration) {
  EXPECT_DOUBLE_EQ(audio_level_db(1.0), 94.0);
  EXPECT_NEAR(audio_level_db(0.1), 74.0, 1e-12);
  EXPECT_NEAR(audio_level_db(6.3096e-3), 50.0, 0.01);
  EXPECT_NEAR(audio_level_db(0.5, 100.0), 100.0 + 20.0 * std::log10(0.5), 1e-12);
  EXPECT_TRUE(std::isinf(audio_level_db(0.0)));
  EXPECT_LT(audio_level_db(0.0), 0.0);
  EXPECT_THROW(audio_level_db(1.01), std::invalid_argument);
  EXPECT_THROW(audio_level_db(-0.01), std::invalid_argument);
  EXPECT_THROW(audio_level_db(std::nan("")), std::invalid_argument);
}

TEST(AudioLevelProperty, TwentyDbPerDecade) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> exponent(-6.0, -1.0);
  for (int i = 0; i < 1000; ++i) {
    const double rms = std::pow(10.0, exponent(rng));
    ASSERT_LE(10.0 * rms, 1.0);
    ASSERT_NEAR(audio_level_db(10.0 * rms) - audio_level_db(rms), 20.0, 1e-9) << rms;
  }
}

TEST(Blow, FourHundredMsAtFiftyTwoDb) {
  gen::TraceBuilder b;
  b.tone(0, 400, 52.0);
  const BlowResult in = detect_blow(records(b), BlowDirection::in);
  EXPECT_TRUE(in.detected);
  EXPECT_NEAR(in.peak_db, 52.0, 1e-9);
  EXPECT_EQ(in.threshold_db, 50.0);
  EXPECT_TRUE(in.marginal);  // within 3 dB of the threshold
}

TEST(Blow, FortySevenDbSplitsDirections) {
  gen::TraceBuilder b;
  b.tone(0, 1000, 47.0);
  EXPECT_TRUE(detect_blow(records(b), BlowDirection::out).detected);
  EXPECT_FALSE(detect_blow(records(b), BlowDirection::in).detected);
}

TEST(Blow, Silence) {
  gen::TraceBuilder b;
  for (int t = 0; t < 1000; t += 20) b.audio(t, 0.0);
  const BlowResult r = detect_blow(records(b), BlowDirection::in);
  EXPECT_FALSE(r.detected);
  EXPECT_TRUE(std::isinf(r.peak_db) && r.peak_db < 0);
  const BlowResult empty = detect_blow({}, BlowDirection::out);
  EXPECT_FALSE(empty.detected);
  EXPECT_TRUE(std::isinf(empty.peak_db));
}

TEST(Blow, SustainNeedsContiguousFrames) {
  gen::TraceBuilder b;
  b.tone(0, 200, 60.0);
  b.audio(220, gen::rms_for_db(40.0));
  b.tone(240, 200, 60.0);
  EXPECT_FALSE(detect_blow(records(b), BlowDirection::in).detected);
  gen::TraceBuilder exact;
  exact.tone(0, 300, 60.0);
  const BlowResult r = detect_blow(records(exact), BlowDirection::in);
  EXPECT_TRUE(r.detected);
  EXPECT_FALSE(r.marginal);
  gen::TraceBuilder short_run;
  short_run.tone(0, 280, 60.0);
  EXPECT_FALSE(detect_blow(records(short_run), BlowDirection::in).detected);
}

TEST(Blow, ConfiguredThreshold) {
  gen::TraceBuilder b;
  b.tone(0, 500, 52.0);
  MetricsConfig c;
  c.blow_in_threshold_db = 55.0;
  EXPECT_FALSE(detect_blow(records(b), BlowDirection::in, c).detected);
}

// ---------------------------------------------------------------------------
// Steps

TEST(Steps, ThirtyEventsInFortySeconds) {
  const AssessmentTrace trace = parse(gen::fixtures()[7].second);
  ASSERT_EQ(gen::fixtures()[7].first, "walk_step_events.jsonl");
  ASSERT_EQ(trace.windows.size(), 1u);
  EXPECT_EQ(count_steps(trace, trace.windows[0]), 30);
}

TEST(Steps, AccelerometerPeaksAndTruncation) {
  const AssessmentTrace trace = parse(gen::walk_trace(30, 5, 50000));
  ASSERT_EQ(trace.windows[0].duration_ms(), 50000);
  EXPECT_EQ(count_steps(trace, trace.windows[0]), 30);
  MetricsConfig longer;
  longer.step_window_ms = 50000;
  EXPECT_EQ(count_steps(trace, trace.windows[0], longer), 35);
}

TEST(Steps, EmptyWindow) {
  const AssessmentTrace trace = parse(gen::fixtures()[8].second);
  ASSERT_EQ(gen::fixtures()[8].first, "walk_window.jsonl");
  EXPECT_EQ(count_steps(trace, trace.windows[0]), 0);
}

TEST(Steps, RefractoryMergesClosePeaks) {
  gen::TraceBuilder b;
  b.walk(0, 2000, {500, 700});
  EXPECT_EQ(count_accel_peaks(records(b)), 1);
  gen::TraceBuilder apart;
  apart.walk(0, 2000, {500, 900});
  EXPECT_EQ(count_accel_peaks(records(apart)), 2);
}

TEST(Steps, PeaksBelowThresholdIgnored) {
  gen::TraceBuilder b;
  b.walk(0, 5000, gen::step_times(500, 1000, 4), 11.5);
  EXPECT_EQ(count_accel_peaks(records(b)), 0);
}

TEST(StepsProperty, TimeTranslationInvariant) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> spacing(320, 1500), shift(0, 100000), count(0, 40);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int64_t> times;
    std::int64_t t = 400;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      times.push_back(t);
      t += spacing(rng) / 20 * 20;
    }
    const std::int64_t offset = shift(rng) / 20 * 20;
    auto build = [&](std::int64_t o) {
      gen::TraceBuilder b;
      std::vector<std::int64_t> shifted;
      for (auto s : times) shifted.push_back(s + o);
      b.task("walk", o, o + 45000, [&](std::int64_t a, std::int64_t e) { b.walk(a, e, shifted); });
      return parse(b.jsonl());
    };
    const AssessmentTrace base = build(0), moved = build(offset);
    ASSERT_EQ(count_steps(base, base.windows[0]), count_steps(moved, moved.windows[0]));
  }
}

// ---------------------------------------------------------------------------
// Face

TEST(Blink, SingleEpisode) {
  gen::TraceBuilder b;
  b.face(0, 0.1, 0.9, 0.9);
  b.face(200, 0.1, 0.1, 0.1);
  b.face(400, 0.1, 0.9, 0.9);
  EXPECT_EQ(detect_blink(records(b)), 1);
}

TEST(Blink, ConstantOpenAndNoRecovery) {
  gen::TraceBuilder open;
  for (int t = 0; t < 2000; t += 33) open.face(t, 0.1, 0.9, 0.9);
  EXPECT_EQ(detect_blink(records(open)), 0);
  gen::TraceBuilder stuck;
  stuck.face(0, 0.1, 0.9, 0.9);
  for (int t = 100; t < 3000; t += 33) stuck.face(t, 0.1, 0.1, 0.2);
  EXPECT_EQ(detect_blink(records(stuck)), 0);
}

TEST(Blink, SlowReopenDoesNotCount) {
  gen::TraceBuilder b;
  b.face(0, 0.1, 0.9, 0.9);
  b.face(100, 0.1, 0.1, 0.1);
  b.face(900, 0.1, 0.9, 0.9);
  EXPECT_EQ(detect_blink(records(b)), 0);
}

TEST(Blink, UsesTheLowerEye) {
  gen::TraceBuilder b;
  b.face(0, 0.1, 0.9, 0.9);
  b.face(100, 0.1, 0.9, 0.1);
  b.face(200, 0.1, 0.9, 0.9);
  EXPECT_EQ(detect_blink(records(b)), 1);
}

TEST(Blink, GeneratedClosures) {
  gen::TraceBuilder b;
  b.blinks(0, 5000, {{500, 150}, {1500, 200}, {2500, 100}, {3500, 900}});
  EXPECT_EQ(detect_blink(records(b)), 3);
}

TEST(Smile, Sustained) {
  gen::TraceBuilder b;
  b.smile(0, 1000, 100, 700, 0.8);
  const SmileResult r = detect_smile(records(b));
  EXPECT_TRUE(r.detected);
  EXPECT_DOUBLE_EQ(r.peak_prob, 0.8);
}

TEST(Smile, LowAndSpike) {
  gen::TraceBuilder low;
  for (int t = 0; t < 1000; t += 33) low.face(t, 0.1, 0.9, 0.9);
  EXPECT_FALSE(detect_smile(records(low)).detected);
  gen::TraceBuilder spike;
  for (int t = 0; t < 1000; t += 33) spike.face(t, t == 495 ? 0.9 : 0.1, 0.9, 0.9);
  const SmileResult r = detect_smile(records(spike));
  EXPECT_FALSE(r.detected);
  EXPECT_DOUBLE_EQ(r.peak_prob, 0.9);
}

// ---------------------------------------------------------------------------
// Speech

TEST(Speech, Examples) {
  EXPECT_DOUBLE_EQ(score_speech("the quick brown fox", "the quick brown fox"), 1.0);
  EXPECT_DOUBLE_EQ(score_speech("the quick brown fox", ""), 0.0);
  // One substitution over 19 normalized characters.
  EXPECT_NEAR(score_speech("the quick brown fox", "the quick brown box"), 1.0 - 1.0 / 19.0, 1e-12);
  EXPECT_NEAR(score_speech("the quick brown fox", "the quick brown box"), 0.947, 0.001);
  EXPECT_DOUBLE_EQ(score_speech("Hello,   World!", "hello world"), 1.0);
  EXPECT_THROW(score_speech("", "anything"), std::invalid_argument);
  EXPECT_THROW(score_speech("?!", "anything"), std::invalid_argument);
}

TEST(Speech, Normalize) {
  EXPECT_EQ(normalize_phrase("  The  QUICK,\tbrown fox. "), "the quick brown fox");
  EXPECT_EQ(normalize_phrase(""), "");
  EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(edit_distance("", "abc"), 3u);
  EXPECT_EQ(edit_distance("flaw", "lawn"), 2u);
}

TEST(SpeechProperty, RangeSymmetryAndIdentity) {
  std::mt19937 rng(6);
  const std::string alphabet = "abc ,.!ABC";
  std::uniform_int_distribution<std::size_t> len(1, 12), pick(0, alphabet.size() - 1);
  auto random_text = [&] {
    std::string s;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) s.push_back(alphabet[pick(rng)]);
    return s;
  };
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::string a = random_text(), b = random_text();
    if (normalize_phrase(a).empty() || normalize_phrase(b).empty()) continue;
    ++checked;
    const double s = score_speech(a, b);
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
    ASSERT_DOUBLE_EQ(s, score_speech(b, a));
    ASSERT_EQ(s == 1.0, normalize_phrase(a) == normalize_phrase(b)) << a << " | " << b;
  }
  EXPECT_GT(checked, 1000);
}

// ---------------------------------------------------------------------------
// Limb motion

TEST(Motion, ZeroGyro) {
  gen::TraceBuilder b;
  b.rotation(0, 1000, 0, 0, 0);
  const MotionRom r = motion_rom(records(b));
  EXPECT_EQ(r.degrees, 0.0);
  EXPECT_FALSE(r.significant);
}

TEST(Motion, IntegratesTwoRadPerSecond) {
  gen::TraceBuilder b;
  b.rotation(0, 1200, 2.0, 0, 0);
  const MotionRom r = motion_rom(records(b));
  EXPECT_NEAR(r.degrees, 2.0 * 1.2 * 180.0 / gen::kPi, 1e-9);
  EXPECT_NEAR(r.degrees, 137.5, 0.1);
  EXPECT_EQ(r.axis, Axis::x);
  EXPECT_TRUE(r.significant);
}

TEST(Motion, SplitRotationReportsDominantAxisOnly) {
  gen::TraceBuilder b;
  b.rotation(0, 1000, 0, 1.0, -1.2);
  const MotionRom r = motion_rom(records(b));
  EXPECT_EQ(r.axis, Axis::z);
  EXPECT_NEAR(r.degrees, 1.2 * 180.0 / gen::kPi, 1e-9);
  const MotionRom y = motion_rom(records(b), Axis::y);
  EXPECT_EQ(y.axis, Axis::y);
  EXPECT_NEAR(y.degrees, 180.0 / gen::kPi, 1e-9);
}

TEST(Motion, BackAndForthAccumulates) {
  gen::TraceBuilder b;
  b.rotation(0, 500, 1.0, 0, 0);
  b.rotation(510, 500, -1.0, 0, 0);
  EXPECT_NEAR(motion_rom(records(b)).degrees, 180.0 / gen::kPi, 0.6);
}

TEST(Motion, EmptyWindowThrows) { EXPECT_THROW(motion_rom({}), std::invalid_argument); }

// ---------------------------------------------------------------------------
// Touch

TEST(Touch, TapAndSwipe) {
  gen::TraceBuilder tap;
  tap.touch(0, 0.5, 0.5, "down");
  tap.touch(100, 0.5, 0.5, "up");
  TouchSummary t = classify_touch(records(tap));
  EXPECT_EQ(t.tap_count, 1);
  EXPECT_EQ(t.swipe_count, 0);

  gen::TraceBuilder swipe;
  swipe.touch(0, 0.2, 0.5, "down");
  swipe.touch(200, 0.5, 0.5, "move");
  swipe.touch(1500, 0.8, 0.5, "up");
  t = classify_touch(records(swipe));
  EXPECT_EQ(t.tap_count, 0);
  EXPECT_EQ(t.swipe_count, 1);
  EXPECT_EQ(t.gestures(), 1);
  EXPECT_TRUE(t.warnings.empty());
}

TEST(Touch, NoRecordsAndAmbiguousContacts) {
  const TouchSummary none = classify_touch({});
  EXPECT_EQ(none.tap_count, 0);
  EXPECT_EQ(none.swipe_count, 0);

  gen::TraceBuilder b;
  b.touch(0, 0.5, 0.5, "down");
  b.touch(500, 0.5, 0.5, "up");  // too slow for a tap
  b.touch(600, 0.5, 0.5, "down");
  b.touch(700, 0.6, 0.5, "up");  // 0.1: neither tap nor swipe
  const TouchSummary t = classify_touch(records(b));
  EXPECT_EQ(t.gestures(), 0);
}

TEST(Touch, UnmatchedPairsWarn) {
  gen::TraceBuilder b;
  b.touch(0, 0.5, 0.5, "up");
  b.touch(100, 0.5, 0.5, "down");
  b.touch(150, 0.5, 0.5, "down");
  b.touch(200, 0.5, 0.5, "up");
  b.touch(300, 0.5, 0.5, "down");
  const TouchSummary t = classify_touch(records(b));
  EXPECT_EQ(t.tap_count, 1);
  EXPECT_EQ(t.warnings.size(), 3u);
}

// ---------------------------------------------------------------------------

TEST(Metric, UnitTokens) {
  EXPECT_EQ(to_string(MetricUnit::db), "dB");
  EXPECT_EQ(parse_metric_unit("similarity"), MetricUnit::similarity);
  EXPECT_EQ(parse_metric_method("manual"), MetricMethod::manual);
  EXPECT_FALSE(parse_metric_unit("furlongs"));
}

TEST(DetectorProperty, Deterministic) {
  const AssessmentTrace trace = parse(gen::worked_example_trace());
  for (const TaskWindow& w : trace.windows) {
    const auto all = slice_window(trace, w, KindFilter::all());
    EXPECT_EQ(detect_blink(all), detect_blink(all));
    EXPECT_EQ(detect_blow(all, BlowDirection::in).peak_db, detect_blow(all, BlowDirection::in).peak_db);
    EXPECT_EQ(count_steps(trace, w), count_steps(trace, w));
  }
}

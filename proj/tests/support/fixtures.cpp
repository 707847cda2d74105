#include "fixtures.hpp"

#include <cstdint>
#include <sstream>

#include "trace_gen.hpp"

namespace gen {

std::string head_tilt_trace(double peak_deg) {
  TraceBuilder b;
  b.task("head_tilt_up", 0, 2600, [&](std::int64_t a, std::int64_t) { b.head_pitch(a + 200, {peak_deg, 2000}); });
  return b.jsonl();
}

std::string walk_trace(int steps_in_window, int steps_after, std::int64_t window_ms) {
  TraceBuilder b;
  b.task("walk", 0, window_ms, [&](std::int64_t a, std::int64_t e) {
    auto times = step_times(a + 1000, 1300, steps_in_window);
    for (std::int64_t t : step_times(41000, 2000, steps_after)) times.push_back(t);
    b.walk(a, e, times);
  });
  return b.jsonl();
}

std::string blow_trace(double level_db, std::int64_t hold_ms) {
  TraceBuilder b;
  b.task("blow_in", 0, hold_ms + 400, [&](std::int64_t a, std::int64_t) { b.tone(a + 200, hold_ms, level_db); });
  const std::int64_t s = hold_ms + 1000;
  b.task("blow_out", s, s + hold_ms + 400, [&](std::int64_t a, std::int64_t) { b.tone(a + 200, hold_ms, level_db); });
  return b.jsonl();
}

std::vector<std::pair<std::string, std::string>> fixtures() {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("worked_example.jsonl", worked_example_trace());
  out.emplace_back("head_tilt_25.jsonl", head_tilt_trace(25.0));
  out.emplace_back("head_tilt_12.jsonl", head_tilt_trace(12.0));
  out.emplace_back("head_tilt_3.jsonl", head_tilt_trace(3.0));
  out.emplace_back("walk_30_steps.jsonl", walk_trace(30, 5, 50000));
  out.emplace_back("blow_52db.jsonl", blow_trace(52.0, 400));
  out.emplace_back("blow_47db.jsonl", blow_trace(47.0, 400));

  TraceBuilder events;
  events.task("walk", 0, 40000, [&](std::int64_t, std::int64_t) {
    for (std::int64_t t : step_times(500, 1000, 30)) events.step(t);
  });
  out.emplace_back("walk_step_events.jsonl", events.jsonl());

  out.emplace_back("walk_window.jsonl",
                   "{\"t_ms\":0,\"kind\":\"task\",\"ability\":\"walk\",\"phase\":\"start\"}\n"
                   "{\"t_ms\":40000,\"kind\":\"task\",\"ability\":\"walk\",\"phase\":\"end\"}\n");

  std::ostringstream bad;
  bad << "{\"t_ms\":0,\"kind\":\"task\",\"ability\":\"smile\",\"phase\":\"start\"}\n";
  for (int i = 1; i <= 5; ++i) {
    bad << "{\"t_ms\":" << i * 33
        << ",\"kind\":\"face\",\"smile_prob\":0.9,\"left_eye_open_prob\":0.9,\"right_eye_open_prob\":0.9,"
           "\"yaw\":0,\"pitch\":0}\n";
  }
  bad << "{\"t_ms\":200,\"kind\":\"face\",\"smile_prob\":0.9,\n";
  bad << "{\"t_ms\":1000,\"kind\":\"task\",\"ability\":\"smile\",\"phase\":\"end\"}\n";
  out.emplace_back("malformed_line7.jsonl", bad.str());
  return out;
}

}  // namespace gen

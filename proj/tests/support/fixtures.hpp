#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gen {

// Head-tilt-up window with a single raised-cosine pitch excursion of peak_deg.
std::string head_tilt_trace(double peak_deg);
// Walk window [0, window_ms) with accelerometer steps; extra steps may fall past 40 s.
std::string walk_trace(int steps_in_window, int steps_after, std::int64_t window_ms);
// Blow window(s) holding level_db for hold_ms.
std::string blow_trace(double level_db, std::int64_t hold_ms);

// (file name, contents) for everything shipped under testdata/traces.
std::vector<std::pair<std::string, std::string>> fixtures();

}  // namespace gen

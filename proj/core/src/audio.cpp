#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "assess/metrics.hpp"

namespace assess {

double audio_level_db(double rms, double cal_offset_db) {
  if (!(rms >= 0.0 && rms <= 1.0)) {
    throw std::invalid_argument("audio_level_db: rms must lie in [0,1]");
  }
  if (rms == 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(rms) + cal_offset_db;
}

BlowResult detect_blow(std::span<const TraceRecord> records, BlowDirection direction,
                       const MetricsConfig& config) {
  BlowResult result;
  result.threshold_db =
      direction == BlowDirection::in ? config.blow_in_threshold_db : config.blow_out_threshold_db;
  result.peak_db = -std::numeric_limits<double>::infinity();

  bool in_run = false;
  std::int64_t run_start = 0;
  for (const TraceRecord& r : records) {
    const auto* frame = std::get_if<AudioFrame>(&r.payload);
    if (frame == nullptr) continue;
    const double level = audio_level_db(frame->rms, config.db_offset);
    result.peak_db = std::max(result.peak_db, level);
    if (level >= result.threshold_db) {
      if (!in_run) {
        in_run = true;
        run_start = r.t_ms;
      }
      if (static_cast<double>(r.t_ms - run_start) >= config.blow_sustain_ms) result.detected = true;
    } else {
      in_run = false;
    }
  }
  result.marginal = result.detected && result.peak_db < result.threshold_db + config.blow_marginal_db;
  return result;
}

}  // namespace assess

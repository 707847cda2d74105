#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace assess {

// Tunable detector and classifier constants. Defaults reproduce the documented
// behaviour; every field is reachable from a metrics.toml key.
struct MetricsConfig {
  // orientation
  double complementary_alpha = 0.98;
  // audio
  double db_offset = 94.0;
  double blow_in_threshold_db = 50.0;
  double blow_out_threshold_db = 45.0;
  double blow_sustain_ms = 300.0;
  double blow_marginal_db = 3.0;
  // steps
  double step_window_ms = 40000.0;
  double step_peak_ms2 = 11.8;
  double step_refractory_ms = 300.0;
  // face
  double blink_closed_prob = 0.3;
  double blink_open_prob = 0.7;
  double blink_recovery_ms = 700.0;
  int blink_requested = 2;
  double smile_prob = 0.7;
  double smile_sustain_ms = 500.0;
  // touch
  double tap_max_ms = 300.0;
  double tap_max_displacement = 0.05;
  double swipe_min_displacement = 0.15;
  // speech
  double speech_easy_similarity = 0.8;
  double speech_marginal_similarity = 0.5;
  // motion
  double significant_motion_deg = 30.0;
  // classification
  double difficult_fraction = 0.5;

  bool operator==(const MetricsConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keys are "section.name" (e.g. "blow.in_threshold_db").
std::vector<std::string> config_keys();

// Applies one "key=value" or (key, value) override. Throws ConfigError.
void apply_override(MetricsConfig& config, std::string_view key, std::string_view value);
void apply_override(MetricsConfig& config, std::string_view assignment);

// TOML-style document: [section] headers, `name = number` lines, '#' comments.
MetricsConfig parse_config(std::string_view document, MetricsConfig base = {});
MetricsConfig load_config_file(const std::filesystem::path& path, MetricsConfig base = {});

// Flat {"section.name": value} object in key order.
nlohmann::json to_json(const MetricsConfig& config);
std::string to_toml(const MetricsConfig& config);

}  // namespace assess

#include "assess/metrics_config.hpp"

#include <cerrno>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

namespace assess {
namespace {

struct Field {
  std::string_view key;
  std::variant<double MetricsConfig::*, int MetricsConfig::*> member;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = {
      {"orientation.complementary_alpha", &MetricsConfig::complementary_alpha},
      {"audio.db_offset", &MetricsConfig::db_offset},
      {"blow.in_threshold_db", &MetricsConfig::blow_in_threshold_db},
      {"blow.out_threshold_db", &MetricsConfig::blow_out_threshold_db},
      {"blow.sustain_ms", &MetricsConfig::blow_sustain_ms},
      {"blow.marginal_db", &MetricsConfig::blow_marginal_db},
      {"steps.window_ms", &MetricsConfig::step_window_ms},
      {"steps.peak_ms2", &MetricsConfig::step_peak_ms2},
      {"steps.refractory_ms", &MetricsConfig::step_refractory_ms},
      {"blink.closed_prob", &MetricsConfig::blink_closed_prob},
      {"blink.open_prob", &MetricsConfig::blink_open_prob},
      {"blink.recovery_ms", &MetricsConfig::blink_recovery_ms},
      {"blink.requested", &MetricsConfig::blink_requested},
      {"smile.prob", &MetricsConfig::smile_prob},
      {"smile.sustain_ms", &MetricsConfig::smile_sustain_ms},
      {"touch.tap_max_ms", &MetricsConfig::tap_max_ms},
      {"touch.tap_max_displacement", &MetricsConfig::tap_max_displacement},
      {"touch.swipe_min_displacement", &MetricsConfig::swipe_min_displacement},
      {"speech.easy_similarity", &MetricsConfig::speech_easy_similarity},
      {"speech.marginal_similarity", &MetricsConfig::speech_marginal_similarity},
      {"motion.significant_deg", &MetricsConfig::significant_motion_deg},
      {"classify.difficult_fraction", &MetricsConfig::difficult_fraction},
  };
  return kFields;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || errno == ERANGE ||
      !std::isfinite(value)) {
    throw ConfigError("invalid number '" + owned + "' for key '" + std::string(key) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Field& f : fields()) keys.emplace_back(f.key);
  return keys;
}

void apply_override(MetricsConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  for (const Field& f : fields()) {
    if (f.key != key) continue;
    const double number = parse_number(key, value);
    if (auto* d = std::get_if<double MetricsConfig::*>(&f.member)) {
      config.*(*d) = number;
    } else {
      const auto* i = std::get_if<int MetricsConfig::*>(&f.member);
      if (number != std::floor(number)) {
        throw ConfigError("key '" + std::string(key) + "' expects an integer");
      }
      config.*(*i) = static_cast<int>(number);
    }
    return;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_override(MetricsConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  apply_override(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

MetricsConfig parse_config(std::string_view document, MetricsConfig base) {
  std::string section;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    auto next = document.find('\n', pos);
    if (next == std::string_view::npos) next = document.size();
    std::string_view line = document.substr(pos, next - pos);
    pos = next + 1;
    ++line_number;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected 'name = value'");
      std::string key(trim(line.substr(0, eq)));
      if (!section.empty()) key = section + "." + key;
      apply_override(base, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return base;
}

MetricsConfig load_config_file(const std::filesystem::path& path, MetricsConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), base);
}

nlohmann::json to_json(const MetricsConfig& config) {
  nlohmann::json out = nlohmann::json::object();
  for (const Field& f : fields()) {
    if (auto* d = std::get_if<double MetricsConfig::*>(&f.member)) {
      out[std::string(f.key)] = config.*(*d);
    } else {
      out[std::string(f.key)] = config.*(*std::get_if<int MetricsConfig::*>(&f.member));
    }
  }
  return out;
}

std::string to_toml(const MetricsConfig& config) {
  std::ostringstream out;
  std::string_view section;
  const nlohmann::json values = to_json(config);
  for (const Field& f : fields()) {
    const auto dot = f.key.find('.');
    const std::string_view s = f.key.substr(0, dot);
    if (s != section) {
      if (!section.empty()) out << "\n";
      out << "[" << s << "]\n";
      section = s;
    }
    out << f.key.substr(dot + 1) << " = " << values[std::string(f.key)].dump() << "\n";
  }
  return out.str();
}

}  // namespace assess

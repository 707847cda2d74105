#include "assess/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace assess {

std::string_view to_string(EntrySource source) {
  switch (source) {
    case EntrySource::sensor: return "sensor";
    case EntrySource::manual: return "manual";
    case EntrySource::unassessed: return "unassessed";
  }
  return "unassessed";
}

std::optional<EntrySource> parse_entry_source(std::string_view token) {
  for (EntrySource s : {EntrySource::sensor, EntrySource::manual, EntrySource::unassessed}) {
    if (to_string(s) == token) return s;
  }
  return std::nullopt;
}

AbilityProfile AbilityProfile::unassessed() {
  AbilityProfile profile;
  for (AbilityId id : kAllAbilities) profile.entries.emplace(id, ProfileEntry{});
  return profile;
}

const ProfileEntry* AbilityProfile::find(AbilityId id) const {
  auto it = entries.find(id);
  return it == entries.end() ? nullptr : &it->second;
}

EaseOfAction AbilityProfile::ease(AbilityId id) const {
  const ProfileEntry* entry = find(id);
  if (entry == nullptr || entry->source == EntrySource::unassessed) return EaseOfAction::impossible;
  return entry->ease;
}

void AbilityProfile::set_ease(AbilityId id, EaseOfAction ease, EntrySource source) {
  ProfileEntry& entry = entries[id];
  entry.ease = source == EntrySource::unassessed ? EaseOfAction::impossible : ease;
  entry.source = source;
}

EaseOfAction classify_ranged(double measured, const TargetRange& target, double difficult_fraction) {
  if (target.kind != TargetKind::ranged || !target.target_value) {
    throw std::invalid_argument("classify_ranged: target for '" +
                                std::string(to_string(target.ability)) + "' is not ranged");
  }
  if (!(measured >= 0.0)) throw std::invalid_argument("classify_ranged: negative measurement");
  const double goal = *target.target_value;
  if (measured >= goal) return EaseOfAction::easy;
  if (measured >= difficult_fraction * goal) return EaseOfAction::difficult;
  return EaseOfAction::impossible;
}

EaseOfAction classify_binary(bool detected, bool marginal) {
  if (marginal && !detected) throw std::invalid_argument("classify_binary: marginal requires detected");
  if (!detected) return EaseOfAction::impossible;
  return marginal ? EaseOfAction::difficult : EaseOfAction::easy;
}

namespace {

enum class Detector { head, motion, steps, blow, blink, smile, speech, touch, none };

Detector detector_for(AbilityId id) {
  switch (id) {
    case AbilityId::head_tilt_up:
    case AbilityId::head_tilt_down:
    case AbilityId::head_turn_left:
    case AbilityId::head_turn_right:
      return Detector::head;
    case AbilityId::shoulder_move:
    case AbilityId::elbow_move:
    case AbilityId::wrist_rotate:
    case AbilityId::ankle_move:
      return Detector::motion;
    case AbilityId::walk: return Detector::steps;
    case AbilityId::blow_in:
    case AbilityId::blow_out:
      return Detector::blow;
    case AbilityId::blink: return Detector::blink;
    case AbilityId::smile: return Detector::smile;
    case AbilityId::speak: return Detector::speech;
    case AbilityId::finger_bend: return Detector::touch;
    default: return Detector::none;
  }
}

bool is_ranged_detector(Detector d) {
  return d == Detector::head || d == Detector::motion || d == Detector::steps;
}

double head_component(const HeadRom& rom, AbilityId id) {
  switch (id) {
    case AbilityId::head_tilt_up: return rom.max_up_deg;
    case AbilityId::head_tilt_down: return rom.max_down_deg;
    case AbilityId::head_turn_left: return rom.max_left_deg;
    default: return rom.max_right_deg;
  }
}

struct Measurement {
  double value = 0.0;
  MetricUnit unit = MetricUnit::boolean;
  bool detected = false;
  bool marginal = false;
};

std::optional<Measurement> measure(const AssessmentTrace& trace, const TaskWindow& window,
                                   Detector detector, const MetricsConfig& config,
                                   std::vector<std::string>& warnings) {
  const std::string where = std::string(to_string(window.ability)) + " window [" +
                            std::to_string(window.start_ms) + "," + std::to_string(window.end_ms) + ")";
  switch (detector) {
    case Detector::head: {
      const auto records = slice_window(trace, window, {RecordKind::imu, RecordKind::face});
      std::vector<OrientationEstimate> series;
      const auto imu = imu_samples(records);
      if (!imu.empty()) {
        series = estimate_orientation(imu, config.complementary_alpha);
      } else {
        series = face_orientation(records);
      }
      if (series.empty()) {
        warnings.push_back(where + ": no IMU or face orientation data");
        return std::nullopt;
      }
      return Measurement{head_component(head_rom(series), window.ability), MetricUnit::degrees};
    }
    case Detector::motion: {
      const auto records = slice_window(trace, window, {RecordKind::imu});
      if (records.empty()) {
        warnings.push_back(where + ": no IMU data");
        return std::nullopt;
      }
      return Measurement{motion_rom(records, std::nullopt, config).degrees, MetricUnit::degrees};
    }
    case Detector::steps:
      return Measurement{static_cast<double>(count_steps(trace, window, config)), MetricUnit::steps};
    case Detector::blow: {
      const auto records = slice_window(trace, window, {RecordKind::audio});
      const auto direction =
          window.ability == AbilityId::blow_in ? BlowDirection::in : BlowDirection::out;
      const BlowResult blow = detect_blow(records, direction, config);
      return Measurement{blow.peak_db, MetricUnit::db, blow.detected, blow.marginal};
    }
    case Detector::blink: {
      const auto records = slice_window(trace, window, {RecordKind::face});
      const int blinks = detect_blink(records, config);
      const bool marginal = blinks >= 1 && config.blink_requested >= 2 && blinks < config.blink_requested;
      return Measurement{static_cast<double>(blinks), MetricUnit::count, blinks >= 1, marginal};
    }
    case Detector::smile: {
      const auto records = slice_window(trace, window, {RecordKind::face});
      const SmileResult smile = detect_smile(records, config);
      return Measurement{smile.peak_prob, MetricUnit::probability, smile.detected, false};
    }
    case Detector::speech: {
      const auto records = slice_window(trace, window, {RecordKind::transcript});
      std::optional<double> best;
      for (const TraceRecord& r : records) {
        const auto& t = std::get<Transcript>(r.payload);
        try {
          best = std::max(best.value_or(0.0), score_speech(t.expected, t.recognized));
        } catch (const std::invalid_argument& e) {
          warnings.push_back(where + ": " + e.what());
        }
      }
      if (!best) {
        warnings.push_back(where + ": no scorable transcript");
        return std::nullopt;
      }
      const bool detected = *best >= config.speech_marginal_similarity;
      const bool marginal = detected && *best < config.speech_easy_similarity;
      return Measurement{*best, MetricUnit::similarity, detected, marginal};
    }
    case Detector::touch: {
      const auto records = slice_window(trace, window, {RecordKind::touch});
      TouchSummary touch = classify_touch(records, config);
      for (const std::string& w : touch.warnings) warnings.push_back(where + ": " + w);
      const bool detected = touch.gestures() >= 1;
      const bool marginal = detected && (touch.tap_count == 0 || touch.swipe_count == 0);
      return Measurement{static_cast<double>(touch.gestures()), MetricUnit::count, detected, marginal};
    }
    case Detector::none:
      break;
  }
  warnings.push_back(where + ": no sensor detector for this ability, use a manual entry");
  return std::nullopt;
}

// Better attempt first: higher ease, then larger measurement, then earlier window.
bool better(const WindowAssessment& a, const TaskWindow& wa, const WindowAssessment& b,
            const TaskWindow& wb) {
  if (a.ease != b.ease) return a.ease > b.ease;
  const double va = std::isnan(a.metric.value) ? -INFINITY : a.metric.value;
  const double vb = std::isnan(b.metric.value) ? -INFINITY : b.metric.value;
  if (va != vb) return va > vb;
  return wa.start_ms < wb.start_ms;
}

}  // namespace

std::optional<WindowAssessment> assess_window(const AssessmentTrace& trace, const TaskWindow& window,
                                              const KnowledgeBase& kb, const MetricsConfig& config,
                                              std::vector<std::string>& warnings) {
  const TargetRange* target = kb.target(window.ability);
  const std::string name(to_string(window.ability));
  if (target == nullptr) {
    warnings.push_back(name + ": knowledge base has no target range");
    return std::nullopt;
  }
  const Detector detector = detector_for(window.ability);
  if (detector != Detector::none &&
      is_ranged_detector(detector) != (target->kind == TargetKind::ranged)) {
    warnings.push_back(name + ": target kind '" + std::string(to_string(target->kind)) +
                       "' does not match the detector output");
    return std::nullopt;
  }

  std::optional<Measurement> m;
  try {
    m = measure(trace, window, detector, config, warnings);
  } catch (const std::exception& e) {
    warnings.push_back(name + ": detector failed: " + e.what());
    return std::nullopt;
  }
  if (!m) return std::nullopt;

  WindowAssessment out;
  out.metric = MetricValue{window.ability, m->value, m->unit, 1.0, MetricMethod::sensor};
  out.ease = is_ranged_detector(detector)
                 ? classify_ranged(m->value, *target, config.difficult_fraction)
                 : classify_binary(m->detected, m->marginal);
  return out;
}

AbilityProfile build_profile(const AssessmentTrace& trace, const KnowledgeBase& kb,
                             const MetricsConfig& config) {
  AbilityProfile profile = AbilityProfile::unassessed();

  std::map<AbilityId, std::pair<WindowAssessment, TaskWindow>> best;
  for (const TaskWindow& window : trace.windows) {
    auto result = assess_window(trace, window, kb, config, profile.warnings);
    if (!result) continue;
    auto it = best.find(window.ability);
    if (it == best.end()) {
      best.emplace(window.ability, std::make_pair(*result, window));
    } else if (better(*result, window, it->second.first, it->second.second)) {
      it->second = {*result, window};
    }
  }
  for (const auto& [id, chosen] : best) {
    profile.entries[id] = ProfileEntry{chosen.first.ease, chosen.first.metric, EntrySource::sensor};
  }

  for (const auto& [id, detected] : trace.manual_entries) {
    if (best.count(id)) continue;
    MetricValue metric{id, detected ? 1.0 : 0.0, MetricUnit::boolean, 1.0, MetricMethod::manual};
    profile.entries[id] = ProfileEntry{detected ? EaseOfAction::easy : EaseOfAction::impossible,
                                       metric, EntrySource::manual};
  }
  // Warnings depend on window order in the file; sort so the profile does not.
  std::sort(profile.warnings.begin(), profile.warnings.end());
  return profile;
}

}  // namespace assess

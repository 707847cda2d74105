#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assess/ability.hpp"
#include "assess/knowledge_base.hpp"
#include "assess/metrics.hpp"
#include "assess/metrics_config.hpp"
#include "assess/trace.hpp"

namespace assess {

enum class EntrySource { sensor, manual, unassessed };

std::string_view to_string(EntrySource source);
std::optional<EntrySource> parse_entry_source(std::string_view token);

struct ProfileEntry {
  EaseOfAction ease = EaseOfAction::impossible;
  std::optional<MetricValue> metric;
  EntrySource source = EntrySource::unassessed;

  bool operator==(const ProfileEntry&) const = default;
};

// One entry per ability. Unassessed abilities carry ease Impossible so the
// recommender treats them conservatively; `source` keeps them distinguishable.
struct AbilityProfile {
  std::map<AbilityId, ProfileEntry> entries;
  std::vector<std::string> warnings;

  // Every ability present and unassessed.
  static AbilityProfile unassessed();

  const ProfileEntry* find(AbilityId id) const;
  // Missing and unassessed abilities read as Impossible.
  EaseOfAction ease(AbilityId id) const;
  void set_ease(AbilityId id, EaseOfAction ease, EntrySource source = EntrySource::manual);

  bool operator==(const AbilityProfile&) const = default;
};

// Easy iff measured >= target; Difficult iff difficult_fraction*target <=
// measured < target; Impossible otherwise. Throws std::invalid_argument for a
// negative (or NaN) measurement or a non-ranged target.
EaseOfAction classify_ranged(double measured, const TargetRange& target,
                             double difficult_fraction = 0.5);

// Throws std::invalid_argument when marginal is set without detected.
EaseOfAction classify_binary(bool detected, bool marginal);

struct WindowAssessment {
  MetricValue metric;
  EaseOfAction ease = EaseOfAction::impossible;
};

// Runs the detector mapped to window.ability. Returns nullopt (with a warning
// appended) when the ability has no sensor detector or the detector cannot run.
std::optional<WindowAssessment> assess_window(const AssessmentTrace& trace, const TaskWindow& window,
                                              const KnowledgeBase& kb, const MetricsConfig& config,
                                              std::vector<std::string>& warnings);

// Sensor windows first (best attempt per ability wins), then manual entries for
// abilities without a sensor result; everything else stays unassessed.
AbilityProfile build_profile(const AssessmentTrace& trace, const KnowledgeBase& kb,
                             const MetricsConfig& config = {});

}  // namespace assess

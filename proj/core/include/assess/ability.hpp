#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace assess {

// Closed set of abilities the assessment knows about. Enumerator names are the
// wire tokens used in KB files, traces and reports.
enum class AbilityId : std::uint8_t {
  head_tilt_up,
  head_tilt_down,
  head_turn_left,
  head_turn_right,
  gaze_up,
  gaze_down,
  gaze_left,
  gaze_right,
  blink,
  see,
  suck,
  blow_in,
  blow_out,
  bite_tongue,
  tongue_left,
  tongue_right,
  smile,
  speak,
  shoulder_move,
  elbow_move,
  wrist_rotate,
  finger_bend,
  ankle_move,
  walk,
};

inline constexpr std::size_t kAbilityCount = 24;

inline constexpr std::array<AbilityId, kAbilityCount> kAllAbilities = [] {
  std::array<AbilityId, kAbilityCount> all{};
  for (std::size_t i = 0; i < kAbilityCount; ++i) all[i] = static_cast<AbilityId>(i);
  return all;
}();

constexpr std::size_t index_of(AbilityId id) { return static_cast<std::size_t>(id); }

std::string_view to_string(AbilityId id);
std::optional<AbilityId> parse_ability(std::string_view token);

// Ease of Action, ordered Impossible < Difficult < Easy.
enum class EaseOfAction : std::uint8_t { impossible = 0, difficult = 1, easy = 2 };

std::string_view to_string(EaseOfAction ease);
std::optional<EaseOfAction> parse_ease(std::string_view token);

}  // namespace assess

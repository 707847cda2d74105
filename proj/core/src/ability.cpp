#include "assess/ability.hpp"

namespace assess {
namespace {

constexpr std::array<std::string_view, kAbilityCount> kAbilityNames = {
    "head_tilt_up",  "head_tilt_down", "head_turn_left", "head_turn_right",
    "gaze_up",       "gaze_down",      "gaze_left",      "gaze_right",
    "blink",         "see",            "suck",           "blow_in",
    "blow_out",      "bite_tongue",    "tongue_left",    "tongue_right",
    "smile",         "speak",          "shoulder_move",  "elbow_move",
    "wrist_rotate",  "finger_bend",    "ankle_move",     "walk",
};

constexpr std::array<std::string_view, 3> kEaseNames = {"Impossible", "Difficult", "Easy"};

}  // namespace

std::string_view to_string(AbilityId id) { return kAbilityNames[index_of(id)]; }

std::optional<AbilityId> parse_ability(std::string_view token) {
  for (std::size_t i = 0; i < kAbilityCount; ++i) {
    if (kAbilityNames[i] == token) return static_cast<AbilityId>(i);
  }
  return std::nullopt;
}

std::string_view to_string(EaseOfAction ease) {
  return kEaseNames[static_cast<std::size_t>(ease)];
}

std::optional<EaseOfAction> parse_ease(std::string_view token) {
  for (std::size_t i = 0; i < kEaseNames.size(); ++i) {
    if (kEaseNames[i] == token) return static_cast<EaseOfAction>(i);
  }
  return std::nullopt;
}

}  // namespace assess

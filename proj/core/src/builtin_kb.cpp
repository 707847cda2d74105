#include "assess/knowledge_base.hpp"

namespace assess {
namespace {

constexpr const char* kFrameworkTarget = "ability framework target range";
constexpr const char* kFrameworkBinary = "ability framework Y/N target";
constexpr const char* kImplementerDefault = "implementer default";

TargetRange ranged(AbilityId id, double value, const char* provenance) {
  return {id, TargetKind::ranged, value, provenance};
}

TargetRange binary(AbilityId id, const char* provenance = kFrameworkBinary) {
  return {id, TargetKind::binary, std::nullopt, provenance};
}

}  // namespace

KnowledgeBase builtin_kb() {
  using A = AbilityId;
  KnowledgeBase kb;
  kb.version = "builtin-1.0.0";

  const TargetRange targets[] = {
      ranged(A::head_tilt_up, 20.0, kFrameworkTarget),
      ranged(A::head_tilt_down, 20.0, kFrameworkTarget),
      ranged(A::head_turn_left, 80.0, kFrameworkTarget),
      ranged(A::head_turn_right, 80.0, kFrameworkTarget),
      binary(A::gaze_up),
      binary(A::gaze_down),
      binary(A::gaze_left),
      binary(A::gaze_right),
      binary(A::blink),
      binary(A::see, "ability framework 6:6 acuity, recorded Y/N"),
      binary(A::suck),
      binary(A::blow_in),
      binary(A::blow_out),
      binary(A::bite_tongue),
      binary(A::tongue_left),
      binary(A::tongue_right),
      binary(A::smile),
      binary(A::speak),
      ranged(A::shoulder_move, 118.0, "Khadilkar et al. 2014, minimum shoulder ROM for daily living"),
      ranged(A::elbow_move, 90.0, kImplementerDefault),
      ranged(A::wrist_rotate, 90.0, kImplementerDefault),
      binary(A::finger_bend, "touch gestures, recorded Y/N"),
      ranged(A::ankle_move, 20.0, kImplementerDefault),
      ranged(A::walk, 20.0, "implementer default, steps per 40 s window"),
  };
  for (const TargetRange& t : targets) kb.targets.emplace(t.ability, t);

  kb.mediums = {
      {"brain", "Brain", {A::see}},
      {"chin", "Chin", {A::head_tilt_up, A::head_tilt_down}},
      {"eye", "Eye", {A::gaze_left, A::gaze_right, A::see}},
      {"foot", "Foot", {A::ankle_move}},
      {"head", "Head",
       {A::head_tilt_up, A::head_tilt_down, A::head_turn_left, A::head_turn_right}},
      {"sip_n_puff", "Sip 'n Puff", {A::suck, A::blow_in, A::blow_out}},
      {"tongue", "Tongue", {A::tongue_left, A::tongue_right}},
      {"touch", "Touch", {A::finger_bend}},
      {"voice", "Voice", {A::speak}},
  };

  kb.technologies = {
      {"eeg", "Electroencephalogram", {"brain"}},
      {"eye_tracker", "Eye tracker", {"eye"}},
      {"head_mounted_display", "Head mounted display", {"head", "voice"}},
      {"head_tracker", "Head tracker", {"chin", "head"}},
      {"smartphone", "Smartphone", {"chin", "head", "touch", "voice"}},
      {"switch", "Switch", {"chin", "foot", "head", "sip_n_puff", "tongue"}},
      {"tablet", "Tablet", {"chin", "eye", "head", "touch", "voice"}},
  };
  return kb;
}

}  // namespace assess

#include "assess/recommender.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace assess {
namespace {

// Ease per ability, read once from the profile's map.
using EaseTable = std::array<EaseOfAction, kAbilityCount>;

EaseTable ease_table(const AbilityProfile& profile) {
  EaseTable table;
  table.fill(EaseOfAction::impossible);
  for (const auto& [id, entry] : profile.entries) {
    if (entry.source != EntrySource::unassessed) table[static_cast<std::size_t>(id)] = entry.ease;
  }
  return table;
}

double easy_fraction(const InteractionMedium& medium, const EaseTable& ease) {
  if (medium.required_abilities.empty()) return 1.0;
  std::size_t easy = 0;
  for (AbilityId a : medium.required_abilities) {
    if (ease[static_cast<std::size_t>(a)] == EaseOfAction::easy) ++easy;
  }
  return static_cast<double>(easy) / static_cast<double>(medium.required_abilities.size());
}

bool operable(const InteractionMedium& medium, const EaseTable& ease) {
  return std::none_of(medium.required_abilities.begin(), medium.required_abilities.end(),
                      [&](AbilityId a) { return ease[static_cast<std::size_t>(a)] == EaseOfAction::impossible; });
}

}  // namespace

Recommendation recommend(const AbilityProfile& profile, const KnowledgeBase& kb) {
  for (const auto& [id, entry] : profile.entries) {
    if (kb.target(id) == nullptr) {
      throw RecommendError("profile ability '" + std::string(to_string(id)) +
                           "' has no target in knowledge base " + kb.version);
    }
  }

  const EaseTable ease = ease_table(profile);
  Recommendation out;
  out.mediums.reserve(kb.mediums.size());
  for (const InteractionMedium& medium : kb.mediums) {
    if (!operable(medium, ease)) continue;
    MediumRecommendation rec;
    rec.medium = medium.id;
    rec.score = easy_fraction(medium, ease);
    rec.gating.reserve(medium.required_abilities.size());
    for (AbilityId a : medium.required_abilities) rec.gating.emplace_back(a, ease[static_cast<std::size_t>(a)]);
    out.mediums.push_back(std::move(rec));
  }
  std::sort(out.mediums.begin(), out.mediums.end(), [](const auto& a, const auto& b) {
    return a.score != b.score ? a.score > b.score : a.medium < b.medium;
  });

  for (const Technology& technology : kb.technologies) {
    // Mediums are already in rank order, so the first controller found is the best.
    for (const MediumRecommendation& m : out.mediums) {
      const auto& controls = technology.controllable_by;
      if (std::find(controls.begin(), controls.end(), m.medium) != controls.end()) {
        out.technologies.push_back({technology.id, m.medium, m.score});
        break;
      }
    }
  }
  std::sort(out.technologies.begin(), out.technologies.end(), [](const auto& a, const auto& b) {
    return a.score != b.score ? a.score > b.score : a.technology < b.technology;
  });
  return out;
}

std::vector<MediumExplanation> explain(const Recommendation& recommendation,
                                       const AbilityProfile& profile, const KnowledgeBase& kb) {
  const EaseTable ease = ease_table(profile);
  std::vector<MediumExplanation> out;
  for (const InteractionMedium& medium : kb.mediums) {
    MediumExplanation e;
    e.medium = medium.id;
    e.display_name = medium.display_name;
    auto found = std::find_if(recommendation.mediums.begin(), recommendation.mediums.end(),
                              [&](const MediumRecommendation& m) { return m.medium == medium.id; });
    e.recommended = found != recommendation.mediums.end();
    e.score = easy_fraction(medium, ease);
    for (AbilityId a : medium.required_abilities) {
      const ProfileEntry* entry = profile.find(a);
      const EaseOfAction ease = profile.ease(a);
      e.abilities.push_back({a, ease, entry ? entry->source : EntrySource::unassessed});
      if (ease == EaseOfAction::easy) ++e.easy_count;
      if (!e.recommended && ease == EaseOfAction::impossible) e.blocking.push_back(a);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace assess

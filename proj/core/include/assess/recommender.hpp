#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "assess/ability.hpp"
#include "assess/knowledge_base.hpp"
#include "assess/profile.hpp"

namespace assess {

struct MediumRecommendation {
  std::string medium;
  double score = 0.0;  // fraction of required abilities classed Easy
  std::vector<std::pair<AbilityId, EaseOfAction>> gating;

  bool operator==(const MediumRecommendation&) const = default;
};

struct TechnologyRecommendation {
  std::string technology;
  std::string via;  // highest-scoring recommended medium that controls it
  double score = 0.0;

  bool operator==(const TechnologyRecommendation&) const = default;
};

// Mediums and technologies sorted by score descending, then id ascending.
struct Recommendation {
  std::vector<MediumRecommendation> mediums;
  std::vector<TechnologyRecommendation> technologies;

  bool operator==(const Recommendation&) const = default;
};

class RecommendError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A medium is recommended iff none of its required abilities is Impossible.
// Throws RecommendError when the profile holds an ability the KB has no target for.
Recommendation recommend(const AbilityProfile& profile, const KnowledgeBase& kb);

struct AbilityStatus {
  AbilityId ability{};
  EaseOfAction ease = EaseOfAction::impossible;
  EntrySource source = EntrySource::unassessed;
};

struct MediumExplanation {
  std::string medium;
  std::string display_name;
  bool recommended = false;
  double score = 0.0;
  std::size_t easy_count = 0;
  std::vector<AbilityStatus> abilities;
  std::vector<AbilityId> blocking;
};

// One entry per KB medium, in KB order.
std::vector<MediumExplanation> explain(const Recommendation& recommendation,
                                       const AbilityProfile& profile, const KnowledgeBase& kb);

}  // namespace assess

#include "naive_oracle.hpp"

namespace oracle {

using assess::AbilityId;
using assess::EaseOfAction;

namespace {

EaseOfAction lookup(const Eases& ease, AbilityId id) { return ease[static_cast<std::size_t>(id)]; }

// Selection sort keeps this obviously correct rather than fast.
template <class T, class Less>
void naive_sort(std::vector<T>& v, Less less) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (less(v[j], v[best])) best = j;
    }
    std::swap(v[i], v[best]);
  }
}

}  // namespace

Result recommend(const Eases& ease, const assess::KnowledgeBase& kb) {
  Result out;
  out.mediums.reserve(kb.mediums.size());
  out.technologies.reserve(kb.technologies.size());
  for (const auto& medium : kb.mediums) {
    int easy = 0;
    bool blocked = false;
    for (AbilityId a : medium.required_abilities) {
      const EaseOfAction e = lookup(ease, a);
      if (e == EaseOfAction::impossible) blocked = true;
      if (e == EaseOfAction::easy) ++easy;
    }
    if (blocked) continue;
    const int n = static_cast<int>(medium.required_abilities.size());
    out.mediums.push_back({medium.id, n == 0 ? 1.0 : static_cast<double>(easy) / n});
  }
  naive_sort(out.mediums, [](const Medium& a, const Medium& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });

  for (const auto& tech : kb.technologies) {
    const Medium* best = nullptr;
    for (const std::string& m : tech.controllable_by) {
      for (const Medium& candidate : out.mediums) {
        if (candidate.id != m) continue;
        if (best == nullptr || candidate.score > best->score ||
            (candidate.score == best->score && candidate.id < best->id)) {
          best = &candidate;
        }
      }
    }
    if (best != nullptr) out.technologies.push_back({tech.id, best->id, best->score});
  }
  naive_sort(out.technologies, [](const Tech& a, const Tech& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  return out;
}

}  // namespace oracle

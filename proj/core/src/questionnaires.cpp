#include "assess/questionnaires.hpp"

#include <cmath>
#include <numeric>

namespace assess {

SusResponse make_sus_response(std::span<const int> items) {
  if (items.size() != 10) {
    throw QuestionnaireError("SUS response needs exactly 10 items, got " + std::to_string(items.size()));
  }
  SusResponse response;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] < 1 || items[i] > 5) {
      throw QuestionnaireError("SUS item " + std::to_string(i + 1) + " must be in [1,5]");
    }
    response.items[i] = items[i];
  }
  return response;
}

double sus_score(const SusResponse& response) {
  int total = 0;
  for (std::size_t i = 0; i < response.items.size(); ++i) {
    const int item = response.items[i];
    if (item < 1 || item > 5) {
      throw QuestionnaireError("SUS item " + std::to_string(i + 1) + " must be in [1,5]");
    }
    // Item numbers are 1-based: index 0 is item 1 (odd, positively worded).
    total += (i % 2 == 0) ? item - 1 : 5 - item;
  }
  return 2.5 * total;
}

const std::vector<AdjectiveAnchor>& default_adjective_anchors() {
  static const std::vector<AdjectiveAnchor> kAnchors = {
      {"Worst Imaginable", 12.5}, {"Awful", 20.3},     {"Poor", 35.7},
      {"OK", 50.9},               {"Good", 71.4},      {"Excellent", 85.5},
      {"Best Imaginable", 90.9},
  };
  return kAnchors;
}

std::string sus_adjective(double score, const std::vector<AdjectiveAnchor>& anchors) {
  if (!(score >= 0.0 && score <= 100.0)) throw QuestionnaireError("SUS score must lie in [0,100]");
  if (anchors.empty()) throw QuestionnaireError("adjective scale has no anchors");
  std::size_t best = 0;
  double best_distance = std::abs(score - anchors[0].mean_score);
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    const double d = std::abs(score - anchors[i].mean_score);
    if (d <= best_distance) {
      best = i;
      best_distance = d;
    }
  }
  return anchors[best].adjective;
}

namespace {

constexpr std::array<std::string_view, kTlxDimensionCount> kDimensionNames = {
    "mental", "physical", "temporal", "performance", "effort", "frustration"};

}  // namespace

std::string_view to_string(TlxDimension dimension) {
  return kDimensionNames[static_cast<std::size_t>(dimension)];
}

std::optional<TlxDimension> parse_tlx_dimension(std::string_view token) {
  for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
    if (kDimensionNames[i] == token) return static_cast<TlxDimension>(i);
  }
  return std::nullopt;
}

std::string_view to_string(TlxBand band) {
  switch (band) {
    case TlxBand::low: return "Low";
    case TlxBand::medium: return "Medium";
    case TlxBand::high: return "High";
  }
  return "Low";
}

TlxBand tlx_band(double rating) {
  if (rating < 33.3) return TlxBand::low;
  if (rating < 66.7) return TlxBand::medium;
  return TlxBand::high;
}

void validate_tlx_ratings(const TlxResponse& response) {
  for (std::size_t i = 0; i < kTlxDimensionCount; ++i) {
    const double r = response.ratings[i];
    if (!(r >= 0.0 && r <= 100.0)) {
      throw QuestionnaireError("TLX rating for " + std::string(kDimensionNames[i]) +
                               " must lie in [0,100]");
    }
  }
}

std::array<int, kTlxDimensionCount> tlx_weights(std::span<const PairwiseChoice> choices) {
  std::array<std::array<bool, kTlxDimensionCount>, kTlxDimensionCount> seen{};
  std::array<int, kTlxDimensionCount> wins{};
  for (const PairwiseChoice& c : choices) {
    const auto a = static_cast<std::size_t>(c.first);
    const auto b = static_cast<std::size_t>(c.second);
    const std::string pair = std::string(kDimensionNames[a]) + "/" + std::string(kDimensionNames[b]);
    if (a == b) throw QuestionnaireError("TLX comparison " + pair + " pairs a dimension with itself");
    if (c.winner != c.first && c.winner != c.second) {
      throw QuestionnaireError("TLX comparison " + pair + " names a winner outside the pair");
    }
    if (seen[a][b]) throw QuestionnaireError("TLX comparison " + pair + " appears twice");
    seen[a][b] = seen[b][a] = true;
    ++wins[static_cast<std::size_t>(c.winner)];
  }
  if (choices.size() != kTlxPairCount) {
    throw QuestionnaireError("TLX weighting needs 15 pairwise comparisons, got " +
                             std::to_string(choices.size()));
  }
  return wins;
}

TlxRawResult tlx_raw(const TlxResponse& response) {
  validate_tlx_ratings(response);
  TlxRawResult result;
  double sum = 0.0;
  for (std::size_t i = 0; i < kTlxDimensionCount; ++i) {
    sum += response.ratings[i];
    result.bands[i] = tlx_band(response.ratings[i]);
  }
  result.workload = sum / static_cast<double>(kTlxDimensionCount);
  return result;
}

double tlx_weighted(const TlxResponse& response) {
  validate_tlx_ratings(response);
  if (!response.weights) throw QuestionnaireError("TLX weighted score requires pairwise weights");
  const auto wins = tlx_weights(*response.weights);
  double sum = 0.0;
  for (std::size_t i = 0; i < kTlxDimensionCount; ++i) sum += response.ratings[i] * wins[i];
  return sum / static_cast<double>(kTlxPairCount);
}

SusResult evaluate_sus(const SusResponse& response) {
  SusResult result{response, sus_score(response), {}};
  result.adjective = sus_adjective(result.score);
  return result;
}

TlxResult evaluate_tlx(const TlxResponse& response) {
  TlxResult result{response, tlx_raw(response), std::nullopt};
  if (response.weights) result.weighted = tlx_weighted(response);
  return result;
}

}  // namespace assess

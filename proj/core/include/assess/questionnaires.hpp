#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assess {

class QuestionnaireError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// System Usability Scale
// ---------------------------------------------------------------------------

// Ten Likert items, 1 = Strongly Disagree ... 5 = Strongly Agree.
struct SusResponse {
  std::array<int, 10> items{};
};

// Validates size and range. Throws QuestionnaireError.
SusResponse make_sus_response(std::span<const int> items);

// 2.5 * (sum over odd items of (item - 1) + sum over even items of (5 - item)).
double sus_score(const SusResponse& response);

struct AdjectiveAnchor {
  std::string adjective;
  double mean_score = 0.0;
};

// Anchors ordered by ascending mean score.
const std::vector<AdjectiveAnchor>& default_adjective_anchors();

// Nearest-anchor mapping; a score equidistant between two anchors takes the
// higher adjective. Throws QuestionnaireError outside [0,100].
std::string sus_adjective(double score,
                          const std::vector<AdjectiveAnchor>& anchors = default_adjective_anchors());

// ---------------------------------------------------------------------------
// NASA Task Load Index
// ---------------------------------------------------------------------------

enum class TlxDimension { mental, physical, temporal, performance, effort, frustration };
inline constexpr std::size_t kTlxDimensionCount = 6;
inline constexpr std::size_t kTlxPairCount = 15;

std::string_view to_string(TlxDimension dimension);
std::optional<TlxDimension> parse_tlx_dimension(std::string_view token);

// One pairwise comparison: which of two dimensions contributed more to workload.
struct PairwiseChoice {
  TlxDimension first{};
  TlxDimension second{};
  TlxDimension winner{};
};

struct TlxResponse {
  std::array<double, kTlxDimensionCount> ratings{};  // indexed by TlxDimension, each in [0,100]
  std::optional<std::vector<PairwiseChoice>> weights;

  double rating(TlxDimension d) const { return ratings[static_cast<std::size_t>(d)]; }
};

enum class TlxBand { low, medium, high };

std::string_view to_string(TlxBand band);
// Low < 33.3 <= Medium < 66.7 <= High.
TlxBand tlx_band(double rating);

struct TlxRawResult {
  double workload = 0.0;
  std::array<TlxBand, kTlxDimensionCount> bands{};
};

// Throws QuestionnaireError for ratings outside [0,100].
void validate_tlx_ratings(const TlxResponse& response);
// Throws QuestionnaireError unless the choices cover each unordered pair once.
std::array<int, kTlxDimensionCount> tlx_weights(std::span<const PairwiseChoice> choices);

TlxRawResult tlx_raw(const TlxResponse& response);
// Sum of rating * wins / 15. Throws QuestionnaireError when weights are absent or invalid.
double tlx_weighted(const TlxResponse& response);

// Scored instruments as stored on a session and embedded in reports.
struct SusResult {
  SusResponse response;
  double score = 0.0;
  std::string adjective;
};

struct TlxResult {
  TlxResponse response;
  TlxRawResult raw;
  std::optional<double> weighted;
};

SusResult evaluate_sus(const SusResponse& response);
TlxResult evaluate_tlx(const TlxResponse& response);

}  // namespace assess

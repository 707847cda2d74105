#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "assess/knowledge_base.hpp"
#include "assess/metrics_config.hpp"
#include "assess/profile.hpp"
#include "assess/questionnaires.hpp"
#include "assess/recommender.hpp"

namespace assess {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "assess.report/1";

// Non-finite metric values (silence, -inf dB) serialize as null.
ordered_json to_json(const MetricValue& metric);
ordered_json to_json(const AbilityProfile& profile);
ordered_json to_json(const Recommendation& recommendation);
ordered_json to_json(const std::vector<MediumExplanation>& explanations);
ordered_json to_json(const SusResult& result);
ordered_json to_json(const TlxResult& result);

// Inverse of to_json(AbilityProfile). Throws std::invalid_argument.
AbilityProfile profile_from_json(const nlohmann::json& document);

// Request bodies: {"items": [10 ints]} and
// {"ratings": {"mental": n, ...}, "weights": [{"first","second","winner"}, ...]}.
// Throw QuestionnaireError.
SusResponse sus_from_json(const nlohmann::json& body);
TlxResponse tlx_from_json(const nlohmann::json& body);

struct QuestionnaireScores {
  std::optional<SusResult> sus;
  std::optional<TlxResult> tlx;
};

// The consolidated report: profile, recommendation with explanations,
// questionnaire scores, KB version and the constants used. Contains nothing
// time- or host-dependent, so equal inputs give byte-equal dumps.
ordered_json build_report(const AbilityProfile& profile, const Recommendation& recommendation,
                          const KnowledgeBase& kb, const MetricsConfig& config,
                          const QuestionnaireScores& questionnaires = {});

// Canonical text form: two-space indent, trailing newline.
std::string dump_report(const ordered_json& report);

// Structural check of a report document; empty when it conforms.
std::vector<std::string> report_schema_violations(const nlohmann::json& report);

}  // namespace assess

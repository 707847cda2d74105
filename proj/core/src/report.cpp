#include "assess/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace assess {

using nlohmann::json;

namespace {

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }

}  // namespace

ordered_json to_json(const MetricValue& m) {
  ordered_json out;
  out["value"] = number_or_null(m.value);
  out["unit"] = to_string(m.unit);
  out["confidence"] = m.confidence;
  out["method"] = to_string(m.method);
  return out;
}

ordered_json to_json(const AbilityProfile& profile) {
  ordered_json entries = ordered_json::array();
  for (const auto& [id, entry] : profile.entries) {
    ordered_json e;
    e["ability"] = to_string(id);
    e["ease"] = to_string(entry.ease);
    e["source"] = to_string(entry.source);
    e["metric"] = entry.metric ? to_json(*entry.metric) : ordered_json();
    entries.push_back(std::move(e));
  }
  ordered_json out;
  out["entries"] = std::move(entries);
  out["warnings"] = profile.warnings;
  return out;
}

ordered_json to_json(const Recommendation& recommendation) {
  ordered_json mediums = ordered_json::array();
  for (const MediumRecommendation& m : recommendation.mediums) {
    ordered_json gating = ordered_json::array();
    for (const auto& [ability, ease] : m.gating) {
      gating.push_back({{"ability", to_string(ability)}, {"ease", to_string(ease)}});
    }
    ordered_json e;
    e["medium"] = m.medium;
    e["score"] = m.score;
    e["gating"] = std::move(gating);
    mediums.push_back(std::move(e));
  }
  ordered_json technologies = ordered_json::array();
  for (const TechnologyRecommendation& t : recommendation.technologies) {
    ordered_json e;
    e["technology"] = t.technology;
    e["via"] = t.via;
    e["score"] = t.score;
    technologies.push_back(std::move(e));
  }
  ordered_json out;
  out["mediums"] = std::move(mediums);
  out["technologies"] = std::move(technologies);
  return out;
}

ordered_json to_json(const std::vector<MediumExplanation>& explanations) {
  ordered_json out = ordered_json::array();
  for (const MediumExplanation& x : explanations) {
    ordered_json abilities = ordered_json::array();
    for (const AbilityStatus& s : x.abilities) {
      ordered_json a;
      a["ability"] = to_string(s.ability);
      a["ease"] = to_string(s.ease);
      a["source"] = to_string(s.source);
      abilities.push_back(std::move(a));
    }
    ordered_json blocking = ordered_json::array();
    for (AbilityId b : x.blocking) blocking.push_back(to_string(b));
    ordered_json e;
    e["medium"] = x.medium;
    e["display_name"] = x.display_name;
    e["recommended"] = x.recommended;
    e["score"] = x.score;
    e["easy_count"] = x.easy_count;
    e["required_count"] = x.abilities.size();
    e["abilities"] = std::move(abilities);
    e["blocking"] = std::move(blocking);
    out.push_back(std::move(e));
  }
  return out;
}

ordered_json to_json(const SusResult& result) {
  ordered_json out;
  out["items"] = result.response.items;
  out["score"] = result.score;
  out["adjective"] = result.adjective;
  return out;
}

ordered_json to_json(const TlxResult& result) {
  ordered_json ratings, bands;
  for (std::size_t i = 0; i < kTlxDimensionCount; ++i) {
    const auto d = static_cast<TlxDimension>(i);
    ratings[std::string(to_string(d))] = result.response.ratings[i];
    bands[std::string(to_string(d))] = to_string(result.raw.bands[i]);
  }
  ordered_json out;
  out["ratings"] = std::move(ratings);
  out["workload"] = result.raw.workload;
  out["bands"] = std::move(bands);
  out["weighted_workload"] = result.weighted ? ordered_json(*result.weighted) : ordered_json();
  if (result.response.weights) {
    ordered_json weights = ordered_json::array();
    for (const PairwiseChoice& c : *result.response.weights) {
      weights.push_back({{"first", to_string(c.first)},
                         {"second", to_string(c.second)},
                         {"winner", to_string(c.winner)}});
    }
    out["weights"] = std::move(weights);
  }
  return out;
}

AbilityProfile profile_from_json(const json& document) {
  auto fail = [](const std::string& m) -> void { throw std::invalid_argument("profile: " + m); };
  if (!document.is_object() || !document.contains("entries") || !document["entries"].is_array()) {
    fail("expected object with an 'entries' array");
  }
  AbilityProfile profile;
  for (const json& e : document["entries"]) {
    if (!e.is_object()) fail("entry must be an object");
    auto id = parse_ability(e.value("ability", ""));
    auto ease = parse_ease(e.value("ease", ""));
    auto source = parse_entry_source(e.value("source", ""));
    if (!id || !ease || !source) fail("entry has an invalid ability, ease or source");
    ProfileEntry entry{*ease, std::nullopt, *source};
    if (e.contains("metric") && !e["metric"].is_null()) {
      const json& m = e["metric"];
      auto unit = parse_metric_unit(m.value("unit", ""));
      auto method = parse_metric_method(m.value("method", ""));
      if (!unit || !method) fail("metric has an invalid unit or method");
      MetricValue metric{*id, 0.0, *unit, m.value("confidence", 1.0), *method};
      metric.value = m["value"].is_null() ? -std::numeric_limits<double>::infinity()
                                          : m["value"].get<double>();
      entry.metric = metric;
    }
    if (!profile.entries.emplace(*id, entry).second) fail("duplicate entry");
  }
  if (document.contains("warnings")) {
    profile.warnings = document["warnings"].get<std::vector<std::string>>();
  }
  return profile;
}

SusResponse sus_from_json(const json& body) {
  if (!body.is_object() || !body.contains("items") || !body["items"].is_array()) {
    throw QuestionnaireError("SUS body must be {\"items\": [10 integers]}");
  }
  std::vector<int> items;
  for (const json& v : body["items"]) {
    if (!v.is_number_integer()) throw QuestionnaireError("SUS items must be integers");
    items.push_back(v.get<int>());
  }
  return make_sus_response(items);
}

TlxResponse tlx_from_json(const json& body) {
  if (!body.is_object() || !body.contains("ratings") || !body["ratings"].is_object()) {
    throw QuestionnaireError("TLX body must contain a 'ratings' object");
  }
  TlxResponse response;
  const json& ratings = body["ratings"];
  for (std::size_t i = 0; i < kTlxDimensionCount; ++i) {
    const std::string name(to_string(static_cast<TlxDimension>(i)));
    if (!ratings.contains(name) || !ratings[name].is_number()) {
      throw QuestionnaireError("TLX rating '" + name + "' missing or not a number");
    }
    response.ratings[i] = ratings[name].get<double>();
  }
  if (ratings.size() != kTlxDimensionCount) throw QuestionnaireError("TLX ratings has unknown dimensions");
  validate_tlx_ratings(response);

  if (body.contains("weights") && !body["weights"].is_null()) {
    if (!body["weights"].is_array()) throw QuestionnaireError("TLX weights must be an array");
    std::vector<PairwiseChoice> choices;
    for (const json& c : body["weights"]) {
      auto dim = [&](const char* key) {
        auto d = c.is_object() && c.contains(key) && c[key].is_string()
                     ? parse_tlx_dimension(c[key].get<std::string>())
                     : std::nullopt;
        if (!d) throw QuestionnaireError(std::string("TLX weight field '") + key + "' invalid");
        return *d;
      };
      choices.push_back({dim("first"), dim("second"), dim("winner")});
    }
    tlx_weights(choices);
    response.weights = std::move(choices);
  }
  return response;
}

ordered_json build_report(const AbilityProfile& profile, const Recommendation& recommendation,
                          const KnowledgeBase& kb, const MetricsConfig& config,
                          const QuestionnaireScores& questionnaires) {
  ordered_json report;
  report["schema"] = kReportSchema;
  report["kb_version"] = kb.version;
  ordered_json constants;
  const auto config_json = to_json(config);
  for (const auto& [key, value] : config_json.items()) constants[key] = value;
  report["config"] = std::move(constants);
  report["profile"] = to_json(profile);
  report["recommendation"] = to_json(recommendation);
  report["explanations"] = to_json(explain(recommendation, profile, kb));
  ordered_json q = ordered_json::object();
  if (questionnaires.sus) q["sus"] = to_json(*questionnaires.sus);
  if (questionnaires.tlx) q["tlx"] = to_json(*questionnaires.tlx);
  report["questionnaires"] = std::move(q);
  return report;
}

std::string dump_report(const ordered_json& report) { return report.dump(2) + "\n"; }

namespace {

class SchemaChecker {
 public:
  std::vector<std::string> violations;

  bool expect(bool ok, const std::string& path, const std::string& what) {
    if (!ok) violations.push_back(path + ": expected " + what);
    return ok;
  }

  bool has(const json& obj, const char* key, const std::string& path) {
    return expect(obj.is_object() && obj.contains(key), path + "." + key, "field present");
  }

  void token(const json& obj, const char* key, const std::string& path, bool (*valid)(const std::string&)) {
    if (!has(obj, key, path)) return;
    const json& v = obj[key];
    expect(v.is_string() && valid(v.get<std::string>()), path + "." + key, "valid token");
  }

  void string_field(const json& obj, const char* key, const std::string& path) {
    if (has(obj, key, path)) expect(obj[key].is_string(), path + "." + key, "string");
  }

  void number_field(const json& obj, const char* key, const std::string& path, bool nullable = false) {
    if (!has(obj, key, path)) return;
    expect(obj[key].is_number() || (nullable && obj[key].is_null()), path + "." + key, "number");
  }

  void unit_score(const json& obj, const char* key, const std::string& path) {
    if (!has(obj, key, path)) return;
    const json& v = obj[key];
    expect(v.is_number() && v.get<double>() >= 0.0 && v.get<double>() <= 1.0, path + "." + key,
           "number in [0,1]");
  }

  const json* array_field(const json& obj, const char* key, const std::string& path) {
    if (!has(obj, key, path)) return nullptr;
    return expect(obj[key].is_array(), path + "." + key, "array") ? &obj[key] : nullptr;
  }
};

bool valid_ability(const std::string& s) { return parse_ability(s).has_value(); }
bool valid_ease(const std::string& s) { return parse_ease(s).has_value(); }
bool valid_source(const std::string& s) { return parse_entry_source(s).has_value(); }
bool valid_unit(const std::string& s) { return parse_metric_unit(s).has_value(); }
bool valid_method(const std::string& s) { return parse_metric_method(s).has_value(); }

}  // namespace

std::vector<std::string> report_schema_violations(const json& report) {
  SchemaChecker c;
  if (!c.expect(report.is_object(), "$", "object")) return c.violations;
  if (c.has(report, "schema", "$")) {
    c.expect(report["schema"] == kReportSchema, "$.schema", std::string("'") + kReportSchema + "'");
  }
  c.string_field(report, "kb_version", "$");
  if (c.has(report, "config", "$") && c.expect(report["config"].is_object(), "$.config", "object")) {
    for (const auto& item : report["config"].items()) {
      c.expect(item.value().is_number(), "$.config." + item.key(), "number");
    }
  }

  if (c.has(report, "profile", "$")) {
    const json& profile = report["profile"];
    if (const json* entries = c.array_field(profile, "entries", "$.profile")) {
      for (std::size_t i = 0; i < entries->size(); ++i) {
        const std::string p = "$.profile.entries[" + std::to_string(i) + "]";
        const json& e = (*entries)[i];
        c.token(e, "ability", p, valid_ability);
        c.token(e, "ease", p, valid_ease);
        c.token(e, "source", p, valid_source);
        if (c.has(e, "metric", p) && !e["metric"].is_null()) {
          const json& m = e["metric"];
          c.number_field(m, "value", p + ".metric", true);
          c.token(m, "unit", p + ".metric", valid_unit);
          c.unit_score(m, "confidence", p + ".metric");
          c.token(m, "method", p + ".metric", valid_method);
        }
      }
    }
    c.array_field(profile, "warnings", "$.profile");
  }

  if (c.has(report, "recommendation", "$")) {
    const json& rec = report["recommendation"];
    if (const json* mediums = c.array_field(rec, "mediums", "$.recommendation")) {
      for (std::size_t i = 0; i < mediums->size(); ++i) {
        const std::string p = "$.recommendation.mediums[" + std::to_string(i) + "]";
        c.string_field((*mediums)[i], "medium", p);
        c.unit_score((*mediums)[i], "score", p);
        if (const json* gating = c.array_field((*mediums)[i], "gating", p)) {
          for (const json& g : *gating) {
            c.token(g, "ability", p + ".gating", valid_ability);
            c.token(g, "ease", p + ".gating", valid_ease);
          }
        }
      }
    }
    if (const json* techs = c.array_field(rec, "technologies", "$.recommendation")) {
      for (std::size_t i = 0; i < techs->size(); ++i) {
        const std::string p = "$.recommendation.technologies[" + std::to_string(i) + "]";
        c.string_field((*techs)[i], "technology", p);
        c.string_field((*techs)[i], "via", p);
        c.unit_score((*techs)[i], "score", p);
      }
    }
  }

  if (const json* explanations = c.array_field(report, "explanations", "$")) {
    for (std::size_t i = 0; i < explanations->size(); ++i) {
      const std::string p = "$.explanations[" + std::to_string(i) + "]";
      const json& e = (*explanations)[i];
      c.string_field(e, "medium", p);
      c.string_field(e, "display_name", p);
      if (c.has(e, "recommended", p)) c.expect(e["recommended"].is_boolean(), p + ".recommended", "boolean");
      c.unit_score(e, "score", p);
      c.number_field(e, "easy_count", p);
      c.number_field(e, "required_count", p);
      c.array_field(e, "abilities", p);
      if (const json* blocking = c.array_field(e, "blocking", p)) {
        for (const json& b : *blocking) {
          c.expect(b.is_string() && valid_ability(b.get<std::string>()), p + ".blocking", "ability token");
        }
      }
    }
  }

  if (c.has(report, "questionnaires", "$") &&
      c.expect(report["questionnaires"].is_object(), "$.questionnaires", "object")) {
    const json& q = report["questionnaires"];
    if (q.contains("sus")) {
      c.array_field(q["sus"], "items", "$.questionnaires.sus");
      c.number_field(q["sus"], "score", "$.questionnaires.sus");
      c.string_field(q["sus"], "adjective", "$.questionnaires.sus");
    }
    if (q.contains("tlx")) {
      c.number_field(q["tlx"], "workload", "$.questionnaires.tlx");
      c.number_field(q["tlx"], "weighted_workload", "$.questionnaires.tlx", true);
      if (c.has(q["tlx"], "bands", "$.questionnaires.tlx")) {
        c.expect(q["tlx"]["bands"].is_object(), "$.questionnaires.tlx.bands", "object");
      }
    }
  }
  return c.violations;
}

}  // namespace assess

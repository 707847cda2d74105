#include "assess/knowledge_base.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace assess {

using nlohmann::json;

std::string_view to_string(TargetKind kind) {
  return kind == TargetKind::ranged ? "ranged" : "binary";
}

const TargetRange* KnowledgeBase::target(AbilityId id) const {
  auto it = targets.find(id);
  return it == targets.end() ? nullptr : &it->second;
}

const InteractionMedium* KnowledgeBase::medium(std::string_view id) const {
  auto it = std::find_if(mediums.begin(), mediums.end(),
                         [&](const InteractionMedium& m) { return m.id == id; });
  return it == mediums.end() ? nullptr : &*it;
}

const Technology* KnowledgeBase::technology(std::string_view id) const {
  auto it = std::find_if(technologies.begin(), technologies.end(),
                         [&](const Technology& t) { return t.id == id; });
  return it == technologies.end() ? nullptr : &*it;
}

ValidationReport validate_kb(const KnowledgeBase& kb) {
  ValidationReport report;
  auto add = [&](std::string path, std::string message) {
    report.push_back({std::move(path), std::move(message)});
  };

  if (kb.version.empty()) add("version", "must be non-empty");

  for (AbilityId id : kAllAbilities) {
    const std::string path = "targets." + std::string(to_string(id));
    const TargetRange* target = kb.target(id);
    if (target == nullptr) {
      add(path, "missing target range");
      continue;
    }
    if (target->ability != id) add(path, "ability field does not match key");
    if (target->kind == TargetKind::ranged) {
      if (!target->target_value) {
        add(path, "ranged target requires target_value");
      } else if (!std::isfinite(*target->target_value) || *target->target_value <= 0.0) {
        add(path, "ranged target_value must be strictly positive");
      }
    } else if (target->target_value) {
      add(path, "binary target must not carry target_value");
    }
  }

  std::set<std::string> medium_ids;
  for (std::size_t i = 0; i < kb.mediums.size(); ++i) {
    const InteractionMedium& m = kb.mediums[i];
    const std::string path = "mediums[" + std::to_string(i) + "]";
    if (m.id.empty()) add(path + ".id", "must be non-empty");
    if (!medium_ids.insert(m.id).second) add(path + ".id", "duplicate medium id '" + m.id + "'");
    std::set<AbilityId> seen;
    for (AbilityId a : m.required_abilities) {
      if (!seen.insert(a).second) {
        add(path + ".required_abilities",
            "duplicate ability '" + std::string(to_string(a)) + "'");
      }
      if (kb.target(a) == nullptr) {
        add(path + ".required_abilities",
            "ability '" + std::string(to_string(a)) + "' has no target range");
      }
    }
  }

  std::set<std::string> technology_ids;
  for (std::size_t i = 0; i < kb.technologies.size(); ++i) {
    const Technology& t = kb.technologies[i];
    const std::string path = "technologies[" + std::to_string(i) + "]";
    if (t.id.empty()) add(path + ".id", "must be non-empty");
    if (!technology_ids.insert(t.id).second) {
      add(path + ".id", "duplicate technology id '" + t.id + "'");
    }
    std::set<std::string> seen;
    for (const std::string& medium : t.controllable_by) {
      if (!seen.insert(medium).second) {
        add(path + ".controllable_by", "duplicate medium '" + medium + "'");
      }
      if (medium_ids.count(medium) == 0) {
        add(path + ".controllable_by", "unknown medium '" + medium + "'");
      }
    }
  }
  return report;
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw KbError(KbError::Kind::schema, path + ": " + message);
}

[[noreturn]] void integrity_error(const std::string& path, const std::string& message) {
  throw KbError(KbError::Kind::integrity, path + ": " + message);
}

const json& require(const json& object, const char* key, const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& object, const char* key, const std::string& path) {
  const json& value = require(object, key, path);
  if (!value.is_string()) schema_error(path + "." + key, "expected string");
  return value.get<std::string>();
}

const json& require_array(const json& object, const char* key, const std::string& path) {
  const json& value = require(object, key, path);
  if (!value.is_array()) schema_error(path + "." + key, "expected array");
  return value;
}

AbilityId require_ability(const json& value, const std::string& path) {
  if (!value.is_string()) schema_error(path, "expected ability token");
  auto id = parse_ability(value.get<std::string>());
  if (!id) integrity_error(path, "unknown ability '" + value.get<std::string>() + "'");
  return *id;
}

void check_object(const json& value, const std::string& path) {
  if (!value.is_object()) schema_error(path, "expected object");
}

}  // namespace

KnowledgeBase load_kb(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw KbError(KbError::Kind::syntax, e.what());
  }
  check_object(root, "$");

  KnowledgeBase kb;
  kb.version = require_string(root, "version", "$");

  const json& targets = require_array(root, "targets", "$");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string path = "targets[" + std::to_string(i) + "]";
    const json& entry = targets[i];
    check_object(entry, path);
    TargetRange target;
    target.ability = require_ability(require(entry, "ability", path), path + ".ability");
    const std::string kind = require_string(entry, "kind", path);
    if (kind == "ranged") {
      target.kind = TargetKind::ranged;
    } else if (kind == "binary") {
      target.kind = TargetKind::binary;
    } else {
      schema_error(path + ".kind", "expected 'ranged' or 'binary'");
    }
    if (auto it = entry.find("target_value"); it != entry.end() && !it->is_null()) {
      if (!it->is_number()) schema_error(path + ".target_value", "expected number");
      target.target_value = it->get<double>();
    }
    target.provenance = require_string(entry, "provenance", path);
    if (!kb.targets.emplace(target.ability, target).second) {
      integrity_error(path, "duplicate target for '" + std::string(to_string(target.ability)) + "'");
    }
  }

  const json& mediums = require_array(root, "mediums", "$");
  for (std::size_t i = 0; i < mediums.size(); ++i) {
    const std::string path = "mediums[" + std::to_string(i) + "]";
    const json& entry = mediums[i];
    check_object(entry, path);
    InteractionMedium medium;
    medium.id = require_string(entry, "id", path);
    medium.display_name = require_string(entry, "display_name", path);
    const json& required = require_array(entry, "required_abilities", path);
    for (std::size_t j = 0; j < required.size(); ++j) {
      medium.required_abilities.push_back(
          require_ability(required[j], path + ".required_abilities[" + std::to_string(j) + "]"));
    }
    kb.mediums.push_back(std::move(medium));
  }

  const json& technologies = require_array(root, "technologies", "$");
  for (std::size_t i = 0; i < technologies.size(); ++i) {
    const std::string path = "technologies[" + std::to_string(i) + "]";
    const json& entry = technologies[i];
    check_object(entry, path);
    Technology technology;
    technology.id = require_string(entry, "id", path);
    technology.display_name = require_string(entry, "display_name", path);
    const json& controls = require_array(entry, "controllable_by", path);
    for (std::size_t j = 0; j < controls.size(); ++j) {
      if (!controls[j].is_string()) {
        schema_error(path + ".controllable_by[" + std::to_string(j) + "]", "expected medium id");
      }
      technology.controllable_by.push_back(controls[j].get<std::string>());
    }
    kb.technologies.push_back(std::move(technology));
  }

  ValidationReport report = validate_kb(kb);
  if (!report.empty()) {
    std::ostringstream message;
    for (std::size_t i = 0; i < report.size(); ++i) {
      if (i) message << "; ";
      message << report[i].path << ": " << report[i].message;
    }
    throw KbError(KbError::Kind::integrity, message.str());
  }
  return kb;
}

KnowledgeBase load_kb_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KbError(KbError::Kind::syntax, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_kb(buffer.str());
}

json to_json(const KnowledgeBase& kb) {
  json targets = json::array();
  for (const auto& [id, target] : kb.targets) {
    json entry = {{"ability", to_string(id)}, {"kind", to_string(target.kind)}};
    if (target.target_value) entry["target_value"] = *target.target_value;
    entry["provenance"] = target.provenance;
    targets.push_back(std::move(entry));
  }
  json mediums = json::array();
  for (const InteractionMedium& m : kb.mediums) {
    json required = json::array();
    for (AbilityId a : m.required_abilities) required.push_back(to_string(a));
    mediums.push_back(
        {{"id", m.id}, {"display_name", m.display_name}, {"required_abilities", required}});
  }
  json technologies = json::array();
  for (const Technology& t : kb.technologies) {
    technologies.push_back(
        {{"id", t.id}, {"display_name", t.display_name}, {"controllable_by", t.controllable_by}});
  }
  return {{"version", kb.version},
          {"targets", targets},
          {"mediums", mediums},
          {"technologies", technologies}};
}

std::string serialize(const KnowledgeBase& kb) { return to_json(kb).dump(2) + "\n"; }

}  // namespace assess

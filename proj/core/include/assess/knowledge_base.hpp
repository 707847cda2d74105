#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "assess/ability.hpp"

namespace assess {

enum class TargetKind { ranged, binary };

std::string_view to_string(TargetKind kind);

// Target range for one ability. Ranged targets carry a strictly positive value
// (degrees, or steps per window for walk); binary targets carry none.
struct TargetRange {
  AbilityId ability{};
  TargetKind kind = TargetKind::binary;
  std::optional<double> target_value;
  std::string provenance;

  bool operator==(const TargetRange&) const = default;
};

struct InteractionMedium {
  std::string id;
  std::string display_name;
  std::vector<AbilityId> required_abilities;

  bool operator==(const InteractionMedium&) const = default;
};

struct Technology {
  std::string id;
  std::string display_name;
  std::vector<std::string> controllable_by;  // medium ids

  bool operator==(const Technology&) const = default;
};

// Abilities -> interaction mediums -> technologies. Immutable once loaded.
struct KnowledgeBase {
  std::string version;
  std::map<AbilityId, TargetRange> targets;
  std::vector<InteractionMedium> mediums;
  std::vector<Technology> technologies;

  const TargetRange* target(AbilityId id) const;
  const InteractionMedium* medium(std::string_view id) const;
  const Technology* technology(std::string_view id) const;

  bool operator==(const KnowledgeBase&) const = default;
};

struct Violation {
  std::string path;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

class KbError : public std::runtime_error {
 public:
  enum class Kind { syntax, schema, integrity };

  KbError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Bundled knowledge base; kb/builtin.json is its serialized form.
KnowledgeBase builtin_kb();

ValidationReport validate_kb(const KnowledgeBase& kb);

// Throws KbError. The result always passes validate_kb.
KnowledgeBase load_kb(std::string_view document);
KnowledgeBase load_kb_file(const std::filesystem::path& path);

nlohmann::json to_json(const KnowledgeBase& kb);
std::string serialize(const KnowledgeBase& kb);

}  // namespace assess

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "nwfs/arrow.hpp"

namespace nwfs::io {

using nlohmann::json;

/// Malformed or inconsistent input. `pointer` is a JSON pointer into the
/// offending document, prefixed by the document's origin (file or flag).
class InputError : public std::runtime_error {
 public:
  InputError(std::string pointer, const std::string& message)
      : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Parses a file; parse errors carry the byte offset.
json load_json_file(const std::filesystem::path& path);

/// "KEY|FILE" flag value: an existing file is read, anything else is passed
/// through as a JSON string (a catalog key).
json load_ref_or_file(const std::string& value, const std::string& flag);

/// Per object, the user's element id -> dense id.
using ElementLabels = std::vector<std::unordered_map<std::string, Element>>;

struct LabeledPresheaf {
  Presheaf presheaf;
  ElementLabels labels;
};

/// Dense labels "0" .. "n-1".
ElementLabels dense_labels(const Presheaf& p);

/// Category document, or a catalog key naming a category.
FinCategory parse_category(const json& doc, const std::string& at);

/// Presheaf document or catalog key. A "category" field, when present, must
/// describe `base`; elements are numbered in listing order. Actions of
/// identities may be omitted.
LabeledPresheaf parse_presheaf(const json& doc, const FinCategory& base, const std::string& at);

/// {obj: {elt: elt}} or {obj: [elt, ..]} with dense indices.
PresheafMap parse_components(const json& doc, const LabeledPresheaf& source,
                             const LabeledPresheaf& target, const std::string& at);

/// Map document {source, target, components} or a catalog key naming an arrow.
ArrowObj parse_arrow(const json& doc, const FinCategory& base, const std::string& at);

/// Gens document {category?, arrows: [..]} or a catalog key. Every arrow must
/// live over `base`.
GeneratingSet parse_gens(const json& doc, const FinCategory& base, const std::string& at);

json to_json(const FinCategory& c);
/// Without the category; identity actions omitted.
json to_json(const Presheaf& p);
/// Components only, {obj: {elt: elt}}.
json components_json(const PresheafMap& m);
/// {source, target, components}.
json to_json(const ArrowObj& a);
json to_json(const GeneratingSet& g);

/// Lowercase hex SHA-256 of the compact dump.
std::string digest(const json& doc);

}  // namespace nwfs::io

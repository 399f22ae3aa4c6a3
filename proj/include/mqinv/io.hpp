#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mqinv/derived.hpp"
#include "mqinv/generators.hpp"
#include "mqinv/tableau.hpp"

namespace mqinv {

using Json = nlohmann::ordered_json;

/// Malformed input: bad JSON, missing keys, wrong types, unparsable text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ParseError on unreadable files or invalid JSON.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

// Setting:
// {"dim": [..], "group": ["GL", ..], "involution": [..],
//  "arrows": [{"id": "a", "tail": 1, "head": 2, "kind": "M"}, ..]}
Json to_json(const MixedQuiverSetting& s);
MixedQuiverSetting setting_from_json(const Json& j);

// Derived setting: {"construction", "setting", "base", "substitution": [..], "new_vertices": [[v, w], ..]}
Json to_json(const DerivedSetting& d);
DerivedSetting derived_from_json(const Json& j);

// Tableau: {"columns": [..], "arrows": [{"tail": [c, r], "head": [c, r], "label": j}, ..]}
Json to_json(const Tableau& t);
Tableau tableau_from_json(const Json& j);

Json to_json(const Path& p);
Path path_from_json(const Json& j);

Json to_json(const GeneratorBounds& b);
GeneratorBounds bounds_from_json(const Json& j);

Json to_json(const GeneratorDescriptor& g, std::size_t index);
GeneratorDescriptor descriptor_from_json(const Json& j);

/// Substitution of a tableau file. Each entry of "substitution" has a label
/// and one of
///   "path":    arrow ids, multiplied over the file's "setting" (Q^D arrows allowed)
///   "generic": a name, giving the generic matrix of the label's shape
///   "matrix":  rows of polynomial texts
std::vector<PolyMatrix> tableau_substitution(const Json& j, const Tableau& t, Field field);

}  // namespace mqinv

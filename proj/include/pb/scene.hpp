#pragma once
// Scene ingestion: JSON documents describing pencils, multibilliards and
// billiards, with exact rationals as "p/q" strings; canonical serialization
// and the preset gallery.

#include <string>

#include "json.hpp"
#include "pb/projbill.hpp"

namespace pb {

using Json = nlohmann::json;

Json parse_scene(const std::string& text);       // throws ParseError with location
std::string canonical_scene(const Json& scene);  // sorted keys, 2-space indent
Json preset_scene(const std::string& name);      // throws ParseError if unknown
std::vector<std::string> preset_names();

Rat json_rat(const Json& v);
double json_double(const Json& v);

Pencil<Rat> build_pencil(const Json& scene);
Pencil<double> build_pencil_double(const Json& pencil_spec);
DualMultibilliard<Rat> build_multibilliard(const Json& scene);
Billiard<double> build_billiard(const Json& scene);

} // namespace pb

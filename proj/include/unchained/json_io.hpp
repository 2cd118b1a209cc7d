#pragma once

#include <string>

#include "json.hpp"

#include "unchained/coalgebra.hpp"
#include "unchained/colimit.hpp"

namespace unchained::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatTag = "unchained/1";

json signature_to_json(const Signature& sig);
Signature signature_from_json(const json& j);

json coalgebra_to_json(const Coalgebra& c);
Coalgebra coalgebra_from_json(const json& j);

json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const json& j, std::uint64_t cap = default_cap());

json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);

json finfn_to_json(const FinFn& f);

/// Parses a document, dispatching on shape; throws ParseError on malformed input.
json parse_document(const std::string& text);
json load_json_file(const std::string& path);

/// DOT rendering of the successor graph of a coalgebra.
std::string coalgebra_to_dot(const Coalgebra& c);

/// DOT rendering of a colimit: one cluster per quotient class.
std::string colimit_to_dot(const Diagram& d, const ColimitData& cd);

} // namespace unchained::io

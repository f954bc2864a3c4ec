#pragma once

#include <string>

#include <json.hpp>

#include "arithcoh/adelic.hpp"
#include "arithcoh/numberfield.hpp"

namespace arithcoh {

// Input that does not match the bundle schema. The message names the JSON
// path (and line/column for syntax errors).
class SchemaError : public ArithcohError {
public:
    using ArithcohError::ArithcohError;
};

// {"kind": "rational"} or {"kind": "quadratic", "d": -5}
NumberField field_from_json(const nlohmann::json& j, const std::string& path = "field");

// Command-line field syntax: "q" or "d=<int>".
NumberField parse_field_flag(const std::string& text);

/// Bundle document:
///   {"field": {...}, "rank": r,
///    "components": [{"ideal": {"primes": [[p, e], ...]}, "scalars": [s_1, ..., s_places]}, ...],
///    "mixing": null | [M_place, ...]}
/// Every prime ideal above p gets exponent e. The infinite part at place k is
/// M_k * diag(exp(s_{i,k})); matrices are row-major, complex entries as [re, im].
AdelicBundle bundle_from_json(const nlohmann::json& j);

nlohmann::json parse_json_text(const std::string& text);
nlohmann::json read_json_file(const std::string& path);

} // namespace arithcoh

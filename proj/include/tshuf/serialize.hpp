#pragma once

// Canonical JSON documents for exact-arithmetic values:
//
//   {"arity": n,
//    "terms": [{"z": [e_1, ..., e_n],
//               "coeff": [{"q": [a, b], "int": "<decimal>"}, ...]}, ...]}
//
// Terms are sorted lexicographically by z-exponent and coefficient monomials
// by (a, b). Reading a document and writing it back is bit-exact.

#include <string>

#include <json.hpp>

#include "tshuf/laurent.hpp"

namespace tshuf {

using Json = nlohmann::json;

Json to_json(const Laurent& p);
Laurent laurent_from_json(const Json& doc);

// Pretty-printed canonical text (two-space indent, trailing newline).
std::string dump_document(const Json& doc);
Json parse_document(const std::string& text);

}  // namespace tshuf

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncdomain/kernel.hpp"
#include "ncdomain/symbol.hpp"
#include "ncdomain/tuples.hpp"

namespace ncdomain {

using Json = nlohmann::json;

// Reads and parses a JSON file; malformed content raises ValidationError
// with the parser's position information.
Json load_json_file(const std::string& path);

// {"n": 2, "coeffs": [{"word": [0], "a": 1.0}, ...]}
FreeSymbol parse_symbol(const Json& j);
Json symbol_to_json(const FreeSymbol& f);

// [{"word": [0,1], "re": 1.0, "im": 0.0}, ...]
CoeffMap parse_coeff_map(const Json& j);
Json coeff_map_to_json(const CoeffMap& c);

// {"d": 2, "mats": [[[{"re":0,"im":0}, ...], ...], ...]} row-major per matrix
OperatorTuple parse_tuple(const Json& j);

// [{"re": .., "im": ..}, ...]
std::vector<Complex> parse_point(const Json& j);

// {"nodes": [[{"re":..,"im":..}, ...], ...], "targets": [...]}; each target is
// a matrix of complex entries, or a bare number for a 1x1 target
PickProblem parse_pick(const Json& j);

Json matrix_to_json(const Matrix& m);

// FNV-1a hash of the canonical symbol serialization, as a hex string;
// identifies the symbol in every report.
std::string symbol_hash(const FreeSymbol& f);

} // namespace ncdomain

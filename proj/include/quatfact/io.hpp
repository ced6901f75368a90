#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "quatfact/bi_factor.hpp"
#include "quatfact/dual_lift.hpp"

namespace quatfact {

using json = nlohmann::json;

json to_json(const Quaternion& q);
json to_json(const DualQuaternion& q);
json to_json(const RealUniPoly& p);
json to_json(const QuatBiPoly& p);
json to_json(const Factorization& f);
/// One NDJSON record of an enumeration report.
json to_json(const EnumerationEntry& e);
json to_json(const LiftSolution& s);

Quaternion quaternion_from_json(const json& j);
RealUniPoly real_poly_from_json(const json& j);
QuatBiPoly quat_poly_from_json(const json& j);
/// Reads "unit" (optional), "K" (optional) and "factors".
Factorization factorization_from_json(const json& j);

/// Expression syntax: + - * /, juxtaposition, ^n, parentheses, the symbols
/// i j k t s, decimal literals, sqrt(c) for real constants and quaternion
/// literals [w, x, y, z] with real constant components. Division is
/// only by nonzero real constants. Products are taken left to right as
/// written.
QuatBiPoly parse_poly_text(std::string_view text);

/// A product of parenthesized monic linear factors, e.g.
/// "(t+i+j+2k)(s+k)(t-i-j)". A leading constant group is taken as the unit.
Factorization parse_factorization_text(std::string_view text);

/// JSON if the first non-blank character is '{', otherwise expression text.
QuatBiPoly load_poly(std::string_view content);
Factorization load_factorization(std::string_view content);

/// Shortest round-trip decimal for x (same digits as the JSON writer).
std::string format_number(double x);
std::string format_quaternion(const Quaternion& q);
/// "([unit])(t - [w, x, y, z])(s - ...)" with format_number digits; the unit
/// group is omitted when it is 1. Parses back with parse_factorization_text.
std::string format_factorization(const Factorization& f);

}  // namespace quatfact

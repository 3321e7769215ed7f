#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "wavetail/bound_algebra.hpp"
#include "wavetail/iteration_engine.hpp"

// Canonical JSON forms. ExtRational serializes as the pair [q0, q1], each
// component a plain number when integral and a "p/q" string otherwise, e.g.
// {"sum":[{"min":[{"m":0,"alpha":[1,0],"beta":[1,0],"eta":["3/2","-1"]}]}]}.

namespace wavetail {

nlohmann::json to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExtRational& x);
ExtRational ext_rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundExpr& e);
BoundExpr bound_expr_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PredictionReport& r);

/// FNV-1a 64-bit over a string; stable across platforms and runs.
std::uint64_t fnv1a64(const std::string& data);
std::string hash_hex(std::uint64_t h);

}  // namespace wavetail

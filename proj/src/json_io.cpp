#include "wavetail/json_io.hpp"

#include <nlohmann/json.hpp>

namespace wavetail {

using nlohmann::json;

json to_json(const Rational& q) {
  if (q.is_integer()) return json(q.num());
  return json(q.str());
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", j.get<double>());
    return Rational::parse(buf);
  }
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("rational_from_json: expected number or string");
}

json to_json(const ExtRational& x) {
  if (x.q0.is_integer() && x.q1.is_integer()) return json::array({x.q0.num(), x.q1.num()});
  return json::array({x.q0.str(), x.q1.str()});
}

ExtRational ext_rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("ext_rational_from_json: expected [q0, q1]");
  return ExtRational(rational_from_json(j[0]), rational_from_json(j[1]));
}

json to_json(const BoundExpr& e) {
  json groups = json::array();
  for (const auto& g : e.groups) {
    json terms = json::array();
    for (const auto& t : g.terms) {
      terms.push_back(json{{"m", t.m},
                           {"alpha", to_json(t.alpha)},
                           {"beta", to_json(t.beta)},
                           {"eta", to_json(t.eta)}});
    }
    groups.push_back(json{{"min", terms}});
  }
  return json{{"sum", groups}};
}

BoundExpr bound_expr_from_json(const json& j) {
  BoundExpr e;
  for (const auto& gj : j.at("sum")) {
    MinGroup g;
    for (const auto& tj : gj.at("min")) {
      DecayTerm t;
      t.m = tj.at("m").get<int>();
      t.alpha = ext_rational_from_json(tj.at("alpha"));
      t.beta = ext_rational_from_json(tj.at("beta"));
      t.eta = ext_rational_from_json(tj.at("eta"));
      g.terms.push_back(t);
    }
    if (g.terms.empty()) throw std::invalid_argument("bound_expr_from_json: empty min-group");
    e.groups.push_back(std::move(g));
  }
  if (e.groups.empty()) throw std::invalid_argument("bound_expr_from_json: empty sum");
  return e;
}

json to_json(const PredictionReport& r) {
  json channels = json::object();
  for (const auto& [name, bound] : r.channel_bounds) channels[name] = to_json(bound);
  json trace = json::array();
  for (const auto& s : r.trace) {
    json row{{"channel", s.channel},
             {"step", s.step},
             {"source",
              json{{"m", s.source.m},
                   {"alpha", to_json(s.source.alpha)},
                   {"beta", to_json(s.source.beta)},
                   {"eta", to_json(s.source.eta)}}},
             {"bound", to_json(s.bound)},
             {"note", s.note},
             {"replayable", s.replayable}};
    if (s.ext_state) row["exterior_state"] = s.ext_state->str();
    trace.push_back(std::move(row));
  }
  json j{{"part", r.profile.part},
         {"theorem_exponent", r.theorem_exponent.str()},
         {"final", to_json(r.final)},
         {"channel_bounds", channels},
         {"trace", trace},
         {"discrepancies", r.discrepancies},
         {"notes", r.notes}};
  if (r.profile.sigma) j["sigma"] = r.profile.sigma->str();
  if (r.profile.delta) j["delta"] = r.profile.delta->str();
  return j;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wavetail

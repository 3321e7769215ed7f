#include <doctest.h>

#include <nlohmann/json.hpp>

#include "wavetail/json_io.hpp"

using namespace wavetail;
using nlohmann::json;

TEST_CASE("BoundExpr canonical JSON round-trip") {
  // Canonical form: integral pairs as numbers, others as rational strings.
  const std::string canonical =
      R"({"sum":[{"min":[{"alpha":[1,0],"beta":[1,0],"eta":["3/2","-1"],"m":0}]}]})";
  BoundExpr e = bound_expr_from_json(json::parse(canonical));
  REQUIRE(e.groups.size() == 1);
  REQUIRE(e.groups[0].terms.size() == 1);
  const DecayTerm& t = e.groups[0].terms[0];
  CHECK(t.m == 0);
  CHECK(t.alpha == ExtRational(Rational(1)));
  CHECK(t.beta == ExtRational(Rational(1)));
  CHECK(t.eta == ExtRational(Rational(3, 2), Rational(-1)));
  CHECK(to_json(e).dump() == canonical);
}

TEST_CASE("ExtRational pair encoding") {
  CHECK(to_json(ExtRational(Rational(2), Rational(0))).dump() == "[2,0]");
  CHECK(to_json(ExtRational(Rational(5, 4), Rational(-2))).dump() == R"(["5/4","-2"])");
  // parsing accepts numbers, fraction strings and both mixed
  CHECK(ext_rational_from_json(json::parse(R"([1,"-1/2"])")) ==
        ExtRational(Rational(1), Rational(-1, 2)));
  CHECK_THROWS_AS(ext_rational_from_json(json::parse("[1]")), std::invalid_argument);
}

TEST_CASE("rational parsing forms") {
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("-1") == Rational(-1));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("1/100") == Rational(1, 100));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
}

TEST_CASE("config hash is stable") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(hash_hex(fnv1a64("wavetail")) == hash_hex(fnv1a64("wavetail")));
  CHECK(hash_hex(fnv1a64("a")) != hash_hex(fnv1a64("b")));
}

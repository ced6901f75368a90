#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quatfact/io.hpp"
#include "support.hpp"

using namespace quatfact;
using namespace fixtures;

TEST_CASE("expression text") {
  CHECK(approx_equal(parse_poly_text("(t^2 - i)*s^2 + (2*j*t)*s + (i*t^2 - 1)"), beauregard(), 0.0));
  CHECK(approx_equal(parse_poly_text("(t-i)(t+i)"), T(2, 0, 1.0) + T(0, 0, 1.0), 0.0));
  CHECK(approx_equal(parse_poly_text("i j"), QuatBiPoly(K), 0.0));
  CHECK(approx_equal(parse_poly_text("j i"), QuatBiPoly(-K), 0.0));
  CHECK(approx_equal(parse_poly_text("t/2 + sqrt(2) s"), T(1, 0, 0.5) + T(0, 1, R2), 0.0));
  CHECK(approx_equal(parse_poly_text("[1, -2, 0.5, 3] t"), T(1, 0, Quaternion(1, -2, 0.5, 3)), 0.0));
  CHECK(approx_equal(parse_poly_text("-2.5e-1"), QuatBiPoly(-0.25), 0.0));
}

TEST_CASE("malformed expressions") {
  for (const char* bad : {"t +", "(t - i", "t^-1", "t / s", "t / i", "sqrt(-1)", "x", "[1, 2, 3]", "[t, 0, 0, 0]", "1 / 0"}) {
    CAPTURE(bad);
    try {
      (void)parse_poly_text(bad);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
}

TEST_CASE("factorization text") {
  const Factorization f = parse_factorization_text("(t+i+j+2k)(s+k)(t-i-j)(s+i+j-k)");
  CHECK(f.factors.size() == 4);
  CHECK(relative_difference(expand(f.unit, f.factors), loop_G().product()) == 0.0);
  CHECK(max_diff(f.factors[0].h, -(I + J + 2.0 * K)) == 0.0);

  const Factorization u = parse_factorization_text("(2 i)(t - i)");
  CHECK(u.unit == 2.0 * I);
  CHECK_THROWS_AS((void)parse_factorization_text("(t - i)(2)"), Error);
  CHECK_THROWS_AS((void)parse_factorization_text("(2t - i)"), Error);
  CHECK_THROWS_AS((void)parse_factorization_text("(t s - i)"), Error);
  CHECK_THROWS_AS((void)parse_factorization_text(""), Error);
}

TEST_CASE("formatted factorizations parse back exactly") {
  std::mt19937_64 rng(61);
  for (int n = 0; n < 100; ++n) {
    Factorization f = random_factorization(rng, 1 + n % 3, 1 + n % 2);
    if (n % 2) f.unit = random_quat(rng);
    const Factorization g = parse_factorization_text(format_factorization(f));
    REQUIRE(g.factors.size() == f.factors.size());
    CHECK(g.unit == f.unit);
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
      CHECK(g.factors[k].var == f.factors[k].var);
      CHECK(g.factors[k].h == f.factors[k].h);
    }
  }
}

TEST_CASE("numbers agree between JSON and text") {
  std::mt19937_64 rng(62);
  for (int n = 0; n < 200; ++n) {
    const Quaternion q = random_quat(rng, 1e3);
    const json j = to_json(q);
    for (int c = 0; c < 4; ++c) {
      CHECK(format_number(q[c]) == j[static_cast<std::size_t>(c)].dump());
      CHECK(std::stod(format_number(q[c])) == q[c]);
    }
  }
}

TEST_CASE("JSON round trips") {
  std::mt19937_64 rng(63);
  const QuatBiPoly b = beauregard();
  CHECK(approx_equal(quat_poly_from_json(to_json(b)), b, 0.0));
  CHECK(approx_equal(load_poly(to_json(b).dump()), b, 0.0));

  const RealUniPoly r(Var::s, {1.5, -2, 0, 1});
  const RealUniPoly r2 = real_poly_from_json(to_json(r));
  CHECK(r2.var() == Var::s);
  CHECK(approx_equal(r2, r, 0.0));

  Factorization f = random_factorization(rng, 2, 2);
  f.unit = random_quat(rng);
  f.K = RealUniPoly(Var::t, {2, 1, 1});
  const Factorization g = factorization_from_json(to_json(f));
  CHECK(g.unit == f.unit);
  CHECK(approx_equal(g.K, f.K, 0.0));
  REQUIRE(g.factors.size() == f.factors.size());
  for (std::size_t k = 0; k < f.factors.size(); ++k) CHECK(g.factors[k].h == f.factors[k].h);

  const Factorization plain = load_factorization(R"({"factors": [{"var": "s", "h": [0, 1, 0, 0]}]})");
  CHECK(plain.unit == Quaternion(1.0));
  CHECK(plain.K.degree() == 0);
  CHECK(plain.factors[0].var == Var::s);
}

TEST_CASE("invalid JSON") {
  CHECK_THROWS_AS((void)load_poly("{\"terms\": ["), Error);
  CHECK_THROWS_AS((void)load_poly(R"({"terms": [{"t": 0, "s": 0, "c": [1, 2]}]})"), Error);
  CHECK_THROWS_AS((void)load_factorization(R"({"factors": [{"var": "x", "h": [0, 1, 0, 0]}]})"), Error);
}

TEST_CASE("lift solution JSON") {
  const LiftSolution sol = solve_lift(build_lift_system(loop_G(), loop_H()));
  const json j = to_json(sol);
  CHECK(j["dimension"] == 4);
  CHECK(j["basis"].size() == 4);
  CHECK(j["basis"][0].size() == 32);
  CHECK(j["layout"].size() == 8);
  CHECK(j["layout"][0]["side"] == "G");
  CHECK(j["layout"][7]["side"] == "H");
}

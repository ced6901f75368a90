#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace quatfact;
using namespace fixtures;

namespace {

// Evaluation from the term map; real points commute with every coefficient.
Quaternion eval(const QuatBiPoly& p, double t, double s) {
  Quaternion acc;
  for (const auto& [m, c] : p.terms()) acc = acc + std::pow(t, m.t) * std::pow(s, m.s) * c;
  return acc;
}

QuatBiPoly random_poly(std::mt19937_64& rng, int dt, int ds) {
  QuatBiPoly p;
  for (int i = 0; i <= dt; ++i)
    for (int j = 0; j <= ds; ++j) p = p + T(i, j, random_quat(rng));
  return p;
}

RealUniPoly rt(std::vector<double> c) { return RealUniPoly(Var::t, std::move(c)); }
RealUniPoly rs(std::vector<double> c) { return RealUniPoly(Var::s, std::move(c)); }

const QuatBiPoly t_ = QuatBiPoly::variable(Var::t);
const QuatBiPoly s_ = QuatBiPoly::variable(Var::s);

}  // namespace

TEST_CASE("products of linear polynomials") {
  CHECK(approx_equal(qp_mul(t_ - QuatBiPoly(I), t_ + QuatBiPoly(I)), T(2, 0, 1.0) + T(0, 0, 1.0), 1e-15));
  const QuatBiPoly lhs = (t_ + QuatBiPoly(I + J)) * (t_ - QuatBiPoly(I));
  const QuatBiPoly rhs = (t_ + QuatBiPoly(I)) * (t_ - QuatBiPoly(I) + QuatBiPoly(J));
  CHECK(approx_equal(lhs, rhs, 1e-15));
  CHECK(approx_equal((s_ - QuatBiPoly(J)) * (t_ - QuatBiPoly(J)), (t_ - QuatBiPoly(J)) * (s_ - QuatBiPoly(J)), 1e-15));
}

TEST_CASE("product agrees with pointwise Hamilton products") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n = 0; n < 50; ++n) {
    const QuatBiPoly a = random_poly(rng, n % 3, (n / 3) % 3), b = random_poly(rng, (n + 1) % 3, n % 2);
    const QuatBiPoly ab = a * b;
    CHECK(ab.deg_t() == a.deg_t() + b.deg_t());
    CHECK(ab.deg_s() == a.deg_s() + b.deg_s());
    for (int k = 0; k < 5; ++k) {
      const double t = u(rng), s = u(rng);
      const Quaternion want = ham(eval(a, t, s), eval(b, t, s));
      CHECK(max_diff(eval(ab, t, s), want) <= 1e-12 * std::max(1.0, want.max_abs()));
    }
  }
}

TEST_CASE("norm polynomials") {
  const RealBiPoly nb = norm_poly(beauregard());
  CHECK(approx_equal(nb, RealBiPoly::outer(rt({1, 0, 0, 0, 1}), rs({1, 0, 0, 0, 1})), 1e-14));
  const RealBiPoly nl = norm_poly(QuatBiPoly::linear(Var::t, 1.0 + I));
  CHECK(approx_equal(nl, RealBiPoly::from_uni(rt({2, -2, 1})), 1e-15));
  const RealBiPoly nc = norm_poly(QuatBiPoly(Quaternion(1, 2, 3, 4)));
  CHECK(nc.at(0, 0) == doctest::Approx(30.0));
}

TEST_CASE("norm is multiplicative") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const QuatBiPoly a = random_poly(rng, n % 4, (n / 4) % 4), b = random_poly(rng, (n / 2) % 4, (n + 3) % 4);
    const RealBiPoly lhs = norm_poly(a * b), rhs = norm_poly(a) * norm_poly(b);
    double d = 0.0;
    for (int i = 0; i < std::max(lhs.rows(), rhs.rows()); ++i)
      for (int j = 0; j < std::max(lhs.cols(), rhs.cols()); ++j) d = std::max(d, std::abs(lhs.at(i, j) - rhs.at(i, j)));
    CHECK(d <= 1e-8 * rhs.max_abs());
    // Pointwise oracle: N(q)(t, s) = |q(t, s)|^2.
    const double t = u(rng), s = u(rng);
    CHECK(std::abs(norm_poly(a)(t, s) - eval(a, t, s).norm()) <= 1e-10 * std::max(1.0, eval(a, t, s).norm()));
  }
}

TEST_CASE("division of the Beauregard polynomial by s^2 + sqrt2 s + 1") {
  const DivRem dr = divrem_real(beauregard(), rs({1, R2, 1}));
  // (sqrt2 i + 2 j t - sqrt2 t^2) s + i (t^2 + 1) - 1 - t^2
  const QuatBiPoly want = T(0, 1, R2 * I) + T(1, 1, 2.0 * J) + T(2, 1, -R2) + T(2, 0, I - 1.0) + T(0, 0, I - 1.0);
  CHECK(relative_difference(dr.remainder, want) < 1e-14);
  CHECK(relative_difference(dr.quotient * QuatBiPoly::from_real(rs({1, R2, 1})) + dr.remainder, beauregard()) < 1e-14);
}

TEST_CASE("division edge cases") {
  const QuatBiPoly q = (t_ - QuatBiPoly(I)) * (s_ - QuatBiPoly(J));
  const DivRem dr = divrem_real(q, rs({1, 0, 1}));
  CHECK(dr.quotient.is_zero());
  CHECK(approx_equal(dr.remainder, q, 0.0));
  CHECK_THROWS_AS((void)divrem_real(q, rs({1, 0, 2})), Error);
}

TEST_CASE("division reconstruction and exact multiples") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 100; ++n) {
    const Var v = n % 2 ? Var::t : Var::s;
    const RealUniPoly m(v, {u(rng), u(rng), 1.0});
    const QuatBiPoly q = random_poly(rng, 1 + n % 4, 1 + (n / 4) % 4);
    const DivRem dr = divrem_real(q, m);
    CHECK(dr.remainder.degree(v) < 2);
    CHECK(relative_difference(dr.quotient * QuatBiPoly::from_real(m) + dr.remainder, q) <= 1e-9);

    const QuatBiPoly multiple = q * QuatBiPoly::from_real(m);
    CHECK(divrem_real(multiple, m).remainder.max_abs() <= 1e-12 * multiple.max_abs());
    CHECK(divides_real(multiple, m));
  }
}

TEST_CASE("divisibility") {
  CHECK(divides_real(QuatBiPoly::from_real(rt({1, 0, 1})) * (s_ - QuatBiPoly(J)), rt({1, 0, 1})));
  CHECK_FALSE(divides_real(beauregard(), rt({1, 0, 1})));
  CHECK(divides_real(QuatBiPoly(), rt({1, 0, 1})));
}

TEST_CASE("mrpf extraction") {
  const QuatBiPoly sj = s_ - QuatBiPoly(J);
  const QuadraticFactorTuple cand{Var::t, 1.0, {rt({1, 0, 1})}};

  const MrpfResult one = mrpf_extract(QuatBiPoly::from_real(rt({1, 0, 1})) * sj, cand);
  CHECK(approx_equal(one.factor, rt({1, 0, 1})));
  CHECK(approx_equal(one.rest, sj, 1e-14));

  const MrpfResult none = mrpf_extract(beauregard(), QuadraticFactorTuple{Var::t, 1.0, {rt({1, -R2, 1}), rt({1, R2, 1})}});
  CHECK(none.factor.degree() == 0);
  CHECK(approx_equal(none.rest, beauregard(), 0.0));

  const QuatBiPoly sq = QuatBiPoly::from_real(rt({1, 0, 1}) * rt({1, 0, 1})) * sj;
  const MrpfResult two = mrpf_extract(sq, cand);
  CHECK(approx_equal(two.factor, rt({1, 0, 2, 0, 1})));
  CHECK(approx_equal(two.rest, sj, 1e-14));
  // Reconstruction oracle and maximality.
  CHECK(relative_difference(QuatBiPoly::from_real(two.factor) * two.rest, sq) < 1e-14);
  CHECK_FALSE(divides_real(two.rest, rt({1, 0, 1})));
}

TEST_CASE("strip_mrpf reads candidates off the norm") {
  const QuatBiPoly q = QuatBiPoly::from_real(rt({2, -2, 1})) * QuatBiPoly::from_real(rs({3, 0, 1})) * beauregard();
  const FullMrpf f = strip_mrpf(q);
  CHECK(approx_equal(f.t_factor, rt({2, -2, 1})));
  CHECK(approx_equal(f.s_factor, rs({3, 0, 1})));
  CHECK(relative_difference(f.rest, beauregard()) < 1e-12);
}

TEST_CASE("remainder norm splits off the divisor") {
  // q with mrpf 1 satisfying the rank-one condition: a product of linear
  // factors. The remainder by a norm quadratic M is nonzero and N(S) = H M.
  std::mt19937_64 rng(24);
  for (int n = 0; n < 40; ++n) {
    const Factorization f = random_factorization(rng, 1 + n % 3, 1 + (n / 3) % 3);
    const QuatBiPoly q = f.product();
    const auto st = rp_quadratic_factors(nfc_decompose(norm_poly(q)).second);
    for (const auto& M : st.factors) {
      const DivRem dr = divrem_real(q, M);
      REQUIRE(dr.remainder.max_abs() > 1e-6 * q.max_abs());
      const auto [H, R] = nfc_decompose(norm_poly(dr.remainder), Tolerance{1e-7});
      CHECK(R.degree() == 2);
      CHECK(approx_equal(R, M, 1e-6));
    }
  }
}

TEST_CASE("exact linear division") {
  const QuatBiPoly q = (t_ - QuatBiPoly(I)) * (t_ - QuatBiPoly(J));
  CHECK(relative_difference(divide_right_linear(q, Var::t, J), t_ - QuatBiPoly(I)) < 1e-15);
  CHECK(relative_difference(divide_left_linear(q, Var::t, I), t_ - QuatBiPoly(J)) < 1e-15);
  CHECK_THROWS_AS((void)divide_right_linear(q, Var::t, K), Error);
}

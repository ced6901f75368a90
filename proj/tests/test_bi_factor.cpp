#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace quatfact;
using namespace fixtures;

namespace {

RealUniPoly rt(std::vector<double> c) { return RealUniPoly(Var::t, std::move(c)); }
RealUniPoly rs(std::vector<double> c) { return RealUniPoly(Var::s, std::move(c)); }

// Oracle for K q = unit * prod(factors) through the independent expansion.
double residual(const QuatBiPoly& q, const Factorization& f) {
  return relative_difference(expand(f.unit, f.factors), QuatBiPoly::from_real(f.K) * q);
}

bool same_factors(const std::vector<LinearFactor>& a, const std::vector<LinearFactor>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t n = 0; n < a.size(); ++n)
    if (a[n].var != b[n].var || max_diff(a[n].h, b[n].h) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("splitting remainder intermediates") {
  // S = (t - i)(s - j): S11 = 1, S10 = -j, S01 = -i, S00 = i j = k.
  const SplitRemainder r = SplitRemainder::from(LinearFactor{Var::t, I}.poly() * LinearFactor{Var::s, J}.poly());
  CHECK(max_diff(r.q, J) < 1e-15);
  CHECK(max_diff(r.p, K - ham(-J, -I)) < 1e-15);
  CHECK(max_diff(r.p, 2.0 * K) < 1e-15);
}

TEST_CASE("algorithm1 consumes t-quadratics in the given order") {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 60; ++n) {
    std::vector<RealUniPoly> used;
    std::vector<LinearFactor> fs;
    const int nt = 1 + n % 3;
    for (int k = 0; k < nt; ++k) fs.push_back(random_factor(rng, Var::t, used));
    fs.insert(fs.begin() + n % (nt + 1), LinearFactor{Var::s, random_quat(rng, 2.0)});
    const QuatBiPoly q = expand(Quaternion(1.0), fs);
    const QuadraticFactorTuple order = inner_t_order(q);
    const StarOneFactorization r = algorithm1(q, order);
    CHECK(relative_difference(r.product(), q) <= 1e-8);
    CHECK(r.left.size() + r.right.size() == static_cast<std::size_t>(nt));
    CHECK(r.middle.deg_s() == 1);
    CHECK(r.middle.deg_t() == 0);
    // The step for order[k] yields the k-th factor taken from the outside in;
    // as a multiset the norms match the order.
    std::vector<RealUniPoly> got;
    for (const auto& f : r.left) got.push_back(f.norm());
    for (const auto& f : r.right) got.push_back(f.norm());
    for (const auto& m : order.factors) {
      const auto it = std::find_if(got.begin(), got.end(), [&](const RealUniPoly& g) { return approx_equal(g, m, 1e-6); });
      CHECK(it != got.end());
      if (it != got.end()) got.erase(it);
    }
  }
}

TEST_CASE("algorithm1 on univariate input uses only right factors") {
  const std::vector<LinearFactor> fs = {{Var::t, I}, {Var::t, 1.0 + J}, {Var::t, 2.0 * K}};
  const QuatBiPoly q = expand(Quaternion(1.0), fs);
  const QuadraticFactorTuple order = norm_quadratics(q, Var::t);
  const StarOneFactorization r = algorithm1(q, order);
  CHECK(r.left.empty());
  CHECK(r.right.size() == 3);
  CHECK(r.middle.deg_t() == 0);
  CHECK(r.middle.deg_s() == 0);
  CHECK(relative_difference(r.product(), q) <= 1e-12);
  const Factorization u = factor_univariate(q, order);
  Factorization v;
  v.unit = r.middle.coeff(0, 0);
  v.factors = r.left;
  v.factors.insert(v.factors.end(), r.right.begin(), r.right.end());
  CHECK(same_factors(u.factors, v.factors, 1e-10));
}

TEST_CASE("multiplication technique on the Beauregard polynomial") {
  const QuatBiPoly b = beauregard();
  const Factorization f = algorithm2(b, QuadraticFactorTuple{Var::s, 1.0, {rs({1, R2, 1}), rs({1, -R2, 1})}});
  CHECK(approx_equal(f.K, rt({1, 0, 1}), 1e-9));
  CHECK(residual(b, f) <= 1e-12);
  CHECK(verify(b, f) <= 1e-12);
  CHECK(same_factors(f.factors, beauregard_kt_a(), 1e-9));
}

TEST_CASE("mirror technique on the Beauregard polynomial") {
  const QuatBiPoly b = beauregard();
  const Factorization f = algorithm2_t(b, QuadraticFactorTuple{Var::t, 1.0, {rt({1, R2, 1}), rt({1, -R2, 1})}});
  CHECK(f.K.var() == Var::s);
  CHECK(approx_equal(f.K, rs({1, 0, 1}), 1e-9));
  CHECK(residual(b, f) <= 1e-12);
}

TEST_CASE("order changes the cofactor") {
  const QuatBiPoly q = bidegree22();
  const Factorization a = algorithm2(q, QuadraticFactorTuple{Var::s, 1.0, {rs({3, 0, 1}), rs({2, 0, 1})}});
  CHECK(approx_equal(a.K, rt({1.8, 1.2, 1}), 1e-9));
  CHECK(same_factors(a.factors, bidegree22_scaled(), 1e-8));
  const Factorization b = algorithm2(q, QuadraticFactorTuple{Var::s, 1.0, {rs({2, 0, 1}), rs({3, 0, 1})}});
  CHECK(b.k_is_one());
  CHECK(same_factors(b.factors, bidegree22_factors(), 1e-8));
  CHECK(residual(q, a) <= 1e-10);
  CHECK(residual(q, b) <= 1e-10);
}

TEST_CASE("univariate input in s gives K = 1") {
  const QuatBiPoly q = expand(Quaternion(1.0), {{Var::s, J}, {Var::s, I - J}, {Var::s, 2.0 * K}});
  const QuadraticFactorTuple order = norm_quadratics(q, Var::s);
  const Factorization f = algorithm2(q, order);
  CHECK(f.k_is_one());
  // algorithm2 places order[0] leftmost, factor_univariate rightmost.
  CHECK(same_factors(f.factors, factor_univariate(q, order.permuted({2, 1, 0})).factors, 1e-9));
}

TEST_CASE("non-monic input keeps its leading unit") {
  const Quaternion a = Quaternion(1, 2, -1, 0.5);
  const QuatBiPoly q = QuatBiPoly(a) * bidegree22();
  const Factorization f = algorithm2(q, QuadraticFactorTuple{Var::s, 1.0, {rs({2, 0, 1}), rs({3, 0, 1})}});
  CHECK(max_diff(f.unit, a) < 1e-9);
  CHECK(residual(q, f) <= 1e-10);
}

TEST_CASE("verify detects perturbations") {
  const QuatBiPoly q = bidegree22();
  Factorization f = make(bidegree22_factors());
  CHECK(verify(q, f) < 1e-15);
  f.factors[1].h = f.factors[1].h + Quaternion(0, 0, 0.01, 0);
  CHECK(verify(q, f) >= 1e-3);
  CHECK(verify(QuatBiPoly(Quaternion(1.0)), make({})) == 0.0);
}

TEST_CASE("every permutation passes verification") {
  std::mt19937_64 rng(42);
  for (int n = 0; n < 20; ++n) {
    const QuatBiPoly q = random_factorization(rng, 1 + n % 3, 1 + (n / 3) % 3).product();
    const EnumerationReport rep = enumerate(q, Role::both);
    for (const auto& e : rep.entries) {
      CHECK(e.residual <= kVerifyBound);
      CHECK(residual(q, e.factorization) <= 1e-8);
    }
  }
}

TEST_CASE("a K = 1 factorization exists") {
  // For every input with mrpf 1 satisfying the rank-one condition, some order
  // of the s-quadratics produces K = 1.
  std::mt19937_64 rng(43);
  for (int n = 0; n < 40; ++n) {
    const QuatBiPoly q = random_factorization(rng, 1 + n % 3, 1 + (n / 3) % 3).product();
    CHECK(enumerate(q, Role::s).k_one_count >= 1);
  }
}

TEST_CASE("t-equivalence") {
  const Factorization g = loop_G(), h = loop_H();
  CHECK(t_equivalent(g, g));
  CHECK(s_equivalent(h, h));
  CHECK_FALSE(t_equivalent(g, h));
  CHECK(t_equivalent(equiv_a(), equiv_b()));
}

TEST_CASE("equivalence") {
  CHECK(equivalent(loop_G(), loop_G()));
  CHECK_FALSE(equivalent(loop_G(), loop_H()));
  CHECK(equivalent(equiv_a(), equiv_b()));
  // Related by one Bennett flip.
  const Factorization a = make({{Var::t, -I - J}, {Var::t, I}, {Var::s, K}});
  const Factorization c = make({{Var::t, -I}, {Var::t, I - J}, {Var::s, K}});
  CHECK(equivalent(a, c));
  // Related by one commuting swap: t - 2 and s - k commute.
  const Factorization d = make({{Var::t, I}, {Var::t, 2.0}, {Var::s, K}});
  const Factorization e = make({{Var::t, I}, {Var::s, K}, {Var::t, 2.0}});
  CHECK(equivalent(d, e));
}

TEST_CASE("different polynomials are rejected") {
  try {
    (void)t_equivalent(loop_G(), make(bidegree22_factors()));
    FAIL("expected DifferentPolynomials");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DifferentPolynomials);
  }
  CHECK_THROWS_AS((void)equivalent(loop_G(), make(bidegree22_factors())), Error);
}

TEST_CASE("enumeration counts") {
  const EnumerationReport loop = enumerate(loop_G().product(), Role::s);
  CHECK(loop.entries.size() == 2);
  CHECK(loop.class_count == 2);

  const EnumerationReport rep = enumerate(repeated_norms().product(), Role::s);
  CHECK(rep.entries.size() == 6);
  CHECK(rep.k_one_count >= 2);
  CHECK(rep.class_count == 1);

  for (Role role : {Role::s, Role::t}) {
    const EnumerationReport b = enumerate(beauregard(), role);
    CHECK(b.entries.size() == 2);
    CHECK(b.k_one_count == 0);
  }
  const EnumerationReport both = enumerate(beauregard(), Role::both);
  CHECK(both.entries.size() == 4);
}

TEST_CASE("enumeration is deterministic across thread counts") {
  const QuatBiPoly q = repeated_norms().product();
  const EnumerationReport one = enumerate(q, Role::both, {}, {}, 1);
  const EnumerationReport many = enumerate(q, Role::both, {}, {}, 4);
  REQUIRE(one.entries.size() == many.entries.size());
  for (std::size_t n = 0; n < one.entries.size(); ++n) {
    CHECK(one.entries[n].order == many.entries[n].order);
    CHECK(one.entries[n].equivalence_class == many.entries[n].equivalence_class);
    CHECK(same_factors(one.entries[n].factorization.factors, many.entries[n].factorization.factors, 0.0));
  }
}

TEST_CASE("rank-one violation is reported") {
  const QuatBiPoly q = T(1, 0, 1.0) + T(0, 1, I);  // norm t^2 + s^2
  try {
    (void)algorithm2(q, QuadraticFactorTuple{Var::s, 1.0, {}});
    FAIL("expected NFCViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NFCViolated);
  }
}

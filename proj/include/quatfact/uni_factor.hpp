#pragma once

#include <utility>
#include <vector>

#include "quatfact/quat_poly.hpp"

namespace quatfact {

/// The monic linear polynomial var - h.
struct LinearFactor {
  Var var = Var::t;
  Quaternion h;

  QuatBiPoly poly() const { return QuatBiPoly::linear(var, h); }
  /// var^2 - 2 Re(h) var + |h|^2.
  RealUniPoly norm() const { return RealUniPoly(var, {h.norm(), -2.0 * h.real(), 1.0}); }
};

/// unit * factors[0] * ... * factors[n-1] == K * q for the polynomial q it
/// was computed from.
struct Factorization {
  Quaternion unit{1.0};
  RealUniPoly K = RealUniPoly::one(Var::t);
  std::vector<LinearFactor> factors;

  /// unit * prod(factors).
  QuatBiPoly product() const;
  bool k_is_one(double eps = 1e-9) const;
};

/// Right factor v - h of q with norm M (monic irreducible quadratic in v),
/// read off the remainder S = a(v - h) of q by M as h = -a^{-1} S_0.
/// q may be bivariate; the remainder then has to be linear in v with a
/// constant leading coefficient.
Quaternion right_factor(const QuatBiPoly& q, const RealUniPoly& M, const Tolerance& tol = {});

/// Left factor via the conjugate polynomial: conj(q) = conj(q')conj(v - h).
Quaternion left_factor(const QuatBiPoly& q, const RealUniPoly& M, const Tolerance& tol = {});

/// Linear factors of a real polynomial over H: v - r per real root and a
/// conjugate pair (v - h)(v - conj h) per irreducible quadratic.
std::vector<LinearFactor> real_to_H(const RealUniPoly& F, const Tolerance& tol = {});

/// Factorization of a univariate polynomial q in H[v]. The real part
/// mrpf(q) is split off with real_to_H and placed first; `order` lists the
/// quadratics of N(q / mrpf(q)) in extraction order (order[0] yields the
/// rightmost factor).
Factorization factor_univariate(const QuatBiPoly& q, const QuadraticFactorTuple& order, const Tolerance& tol = {});
/// Same, using the canonical order of the norm's quadratic factors.
Factorization factor_univariate(const QuatBiPoly& q, const Tolerance& tol = {});

/// Quadratic factors of N(q) for univariate q (after removing the leading
/// scalar), in canonical order.
QuadraticFactorTuple norm_quadratics(const QuatBiPoly& q, Var v, const Tolerance& tol = {});

struct FlipResult {
  Quaternion k1;
  Quaternion k2;
};

/// Bennett flip: (u - h1)(u - h2) = (u - k1)(u - k2) with the two norms
/// swapped. Throws ConjugatePair when conj(h1) == h2 (real quadratic).
FlipResult bennett_flip(const Quaternion& h1, const Quaternion& h2, const Tolerance& tol = {});

}  // namespace quatfact

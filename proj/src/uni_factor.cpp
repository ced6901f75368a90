#include "quatfact/uni_factor.hpp"

#include <algorithm>
#include <cmath>

namespace quatfact {

QuatBiPoly Factorization::product() const {
  QuatBiPoly p(unit);
  for (const auto& f : factors) p = p * f.poly();
  return p;
}

bool Factorization::k_is_one(double eps) const {
  return K.degree() == 0 && std::abs(K.leading() - 1.0) <= eps;
}

Quaternion right_factor(const QuatBiPoly& q, const RealUniPoly& M, const Tolerance& tol) {
  const Var v = M.var();
  const DivRem dr = divrem_real(q, M, tol);
  const QuatBiPoly& S = dr.remainder;
  if (S.max_abs() <= tol.eps * q.max_abs())
    throw Error(ErrorCode::DivisibleByM, "polynomial is divisible by " + M.to_string());
  const QuatBiPoly lead = S.coeff_in(v, 1);
  const QuatBiPoly tail = S.coeff_in(v, 0);
  if (lead.max_abs() <= tol.eps * S.max_abs())
    throw Error(ErrorCode::ZeroRemainder, "remainder has no " + std::string(var_name(v)) + "-linear part");

  // S = A (v - h) with A free of v: every coefficient of the tail is -A_m h.
  auto best = lead.terms().begin();
  for (auto it = lead.terms().begin(); it != lead.terms().end(); ++it)
    if (it->second.max_abs() > best->second.max_abs()) best = it;
  const Quaternion a = best->second;
  const Quaternion h = -(a.inverse(0.0) * tail.coeff(best->first.t, best->first.s));

  const QuatBiPoly check = tail + lead * QuatBiPoly(h);
  if (check.max_abs() > 1e2 * tol.eps * S.max_abs() * std::max(1.0, h.max_abs()))
    throw Error(ErrorCode::DegenerateRemainder, "remainder is not of the form A(v - h)");
  return h;
}

Quaternion left_factor(const QuatBiPoly& q, const RealUniPoly& M, const Tolerance& tol) {
  // q = (v - h) q'  <=>  conj(q) = conj(q') (v - conj h)
  return right_factor(q.conj(), M, tol).conj();
}

std::vector<LinearFactor> real_to_H(const RealUniPoly& F, const Tolerance& tol) {
  if (F.degree() < 1) throw Error(ErrorCode::InvalidArgument, "real_to_H needs a nonconstant polynomial");
  constexpr double kRealSnap = 1e-7;
  std::vector<LinearFactor> out;
  int upper = 0, lower = 0;
  auto roots = rp_roots(F, tol);
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() > b.imag();
  });
  for (const auto& z : roots) {
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= kRealSnap * scale) {
      out.push_back({F.var(), Quaternion(z.real())});
    } else if (z.imag() > 0) {
      ++upper;
      const Quaternion h(z.real(), z.imag(), 0.0, 0.0);
      out.push_back({F.var(), h});
      out.push_back({F.var(), h.conj()});
    } else {
      ++lower;
    }
  }
  if (upper != lower) throw Error(ErrorCode::DidNotConverge, "complex roots do not pair into conjugates");
  return out;
}

QuadraticFactorTuple norm_quadratics(const QuatBiPoly& q, Var v, const Tolerance& tol) {
  const RealBiPoly n = norm_poly(q, tol);
  std::vector<double> c;
  if (v == Var::t)
    for (int i = 0; i < n.rows(); ++i) c.push_back(n.at(i, 0));
  else
    for (int j = 0; j < n.cols(); ++j) c.push_back(n.at(0, j));
  return rp_quadratic_factors(RealUniPoly(v, std::move(c)).trimmed(tol.eps), tol);
}

namespace {

Var univariate_var(const QuatBiPoly& q) {
  if (q.deg_s() > 0 && q.deg_t() > 0) throw Error(ErrorCode::InvalidArgument, "polynomial is not univariate");
  return q.deg_s() > 0 ? Var::s : Var::t;
}

}  // namespace

Factorization factor_univariate(const QuatBiPoly& q, const QuadraticFactorTuple& order, const Tolerance& tol) {
  if (q.is_zero()) throw Error(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  const Var v = univariate_var(q);
  Factorization out;
  out.K = RealUniPoly::one(v);
  if (q.degree(v) <= 0) {
    out.unit = q.coeff(0, 0);
    return out;
  }

  const MrpfResult mrpf = mrpf_extract(q, norm_quadratics(q, v, tol), tol);
  const QuatBiPoly& rest = mrpf.rest;
  const int n = rest.degree(v);
  if (static_cast<int>(order.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "order has " + std::to_string(order.size()) + " quadratics, expected " +
                                                std::to_string(n));

  const Quaternion a = rest.leading_coefficient();
  QuatBiPoly cur = QuatBiPoly(a.inverse(0.0)) * rest;
  std::vector<LinearFactor> extracted;
  for (const auto& M : order.factors) {
    const Quaternion h = right_factor(cur, M.with_var(v), tol);
    cur = divide_right_linear(cur, v, h, tol);
    extracted.push_back({v, h});
  }

  out.unit = a * cur.coeff(0, 0);
  if (mrpf.factor.degree() > 0) out.factors = real_to_H(mrpf.factor, tol);
  out.factors.insert(out.factors.end(), extracted.rbegin(), extracted.rend());
  return out;
}

Factorization factor_univariate(const QuatBiPoly& q, const Tolerance& tol) {
  if (q.is_zero()) throw Error(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  const Var v = univariate_var(q);
  if (q.degree(v) <= 0) return factor_univariate(q, QuadraticFactorTuple{v, 1.0, {}}, tol);
  const MrpfResult mrpf = mrpf_extract(q, norm_quadratics(q, v, tol), tol);
  return factor_univariate(q, norm_quadratics(mrpf.rest, v, tol), tol);
}

FlipResult bennett_flip(const Quaternion& h1, const Quaternion& h2, const Tolerance& tol) {
  const Quaternion d = h1.conj() - h2;
  const double scale = std::max({1.0, h1.max_abs(), h2.max_abs()});
  if (d.max_abs() <= tol.eps * scale)
    throw Error(ErrorCode::ConjugatePair, "factors multiply to a real quadratic; no flip");
  const Quaternion k2 = -(d.inverse(0.0) * (h1 * h2 - h1 * h1.conj()));
  return {h1 + h2 - k2, k2};
}

}  // namespace quatfact

#include "quatfact/quat_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quatfact {

namespace {

void add_term(QuatBiPoly::Terms& terms, const Monomial& m, const Quaternion& c) {
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  } else if (c.is_zero()) {
    terms.erase(it);
  }
}

}  // namespace

QuatBiPoly::QuatBiPoly(const Quaternion& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{0, 0}, c);
}

QuatBiPoly::QuatBiPoly(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

QuatBiPoly QuatBiPoly::term(int t_deg, int s_deg, const Quaternion& c) {
  if (t_deg < 0 || s_deg < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  Terms terms;
  if (!c.is_zero()) terms.emplace(Monomial{t_deg, s_deg}, c);
  return QuatBiPoly(std::move(terms));
}

QuatBiPoly QuatBiPoly::from_real(const RealUniPoly& p) {
  Terms terms;
  for (int n = 0; n <= p.degree(); ++n) {
    const double c = p[static_cast<std::size_t>(n)];
    if (c == 0.0) continue;
    terms.emplace(p.var() == Var::t ? Monomial{n, 0} : Monomial{0, n}, Quaternion(c));
  }
  return QuatBiPoly(std::move(terms));
}

QuatBiPoly QuatBiPoly::from_real(const RealBiPoly& p) {
  Terms terms;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p.at(i, j) != 0.0) terms.emplace(Monomial{i, j}, Quaternion(p.at(i, j)));
  return QuatBiPoly(std::move(terms));
}

Quaternion QuatBiPoly::coeff(int t_deg, int s_deg) const {
  auto it = terms_.find(Monomial{t_deg, s_deg});
  return it == terms_.end() ? Quaternion() : it->second;
}

int QuatBiPoly::degree(Var v) const noexcept {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
  return d;
}

double QuatBiPoly::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& kv : terms_) m = std::max(m, kv.second.max_abs());
  return m;
}

Monomial QuatBiPoly::leading_monomial() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading term");
  Monomial best = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    const int tot = m.t + m.s;
    const int best_tot = best.t + best.s;
    if (tot > best_tot || (tot == best_tot && m.t > best.t)) best = m;
  }
  return best;
}

Quaternion QuatBiPoly::leading_coefficient() const { return terms_.at(leading_monomial()); }

QuatBiPoly QuatBiPoly::coeff_in(Var v, int k) const {
  Terms out;
  for (const auto& [m, c] : terms_) {
    if (m.degree(v) != k) continue;
    out.emplace(v == Var::t ? Monomial{0, m.s} : Monomial{m.t, 0}, c);
  }
  return QuatBiPoly(std::move(out));
}

RealBiPoly QuatBiPoly::component(int idx) const {
  RealBiPoly out(std::max(deg_t() + 1, 1), std::max(deg_s() + 1, 1));
  for (const auto& [m, c] : terms_) out.set(m.t, m.s, c[idx]);
  return out;
}

QuatBiPoly QuatBiPoly::conj() const {
  Terms out;
  for (const auto& [m, c] : terms_) out.emplace(m, c.conj());
  return QuatBiPoly(std::move(out));
}

QuatBiPoly QuatBiPoly::swapped() const {
  Terms out;
  for (const auto& [m, c] : terms_) out.emplace(Monomial{m.s, m.t}, c);
  return QuatBiPoly(std::move(out));
}

QuatBiPoly QuatBiPoly::pruned(double rel) const {
  const double cut = rel * max_abs();
  Terms out;
  for (const auto& [m, c] : terms_)
    if (c.max_abs() > cut) out.emplace(m, c);
  return QuatBiPoly(std::move(out));
}

Quaternion QuatBiPoly::operator()(double t, double s) const {
  Quaternion acc;
  for (const auto& [m, c] : terms_) acc = acc + std::pow(t, m.t) * std::pow(s, m.s) * c;
  return acc;
}

QuatBiPoly operator+(const QuatBiPoly& a, const QuatBiPoly& b) {
  QuatBiPoly::Terms out = a.terms_;
  for (const auto& [m, c] : b.terms_) add_term(out, m, c);
  return QuatBiPoly(std::move(out));
}

QuatBiPoly operator-(const QuatBiPoly& a) {
  QuatBiPoly::Terms out;
  for (const auto& [m, c] : a.terms_) out.emplace(m, -c);
  return QuatBiPoly(std::move(out));
}

QuatBiPoly operator-(const QuatBiPoly& a, const QuatBiPoly& b) { return a + (-b); }

QuatBiPoly operator*(const QuatBiPoly& a, const QuatBiPoly& b) {
  QuatBiPoly::Terms out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) add_term(out, Monomial{ma.t + mb.t, ma.s + mb.s}, ca * cb);
  return QuatBiPoly(std::move(out));
}

QuatBiPoly operator*(double k, const QuatBiPoly& a) {
  QuatBiPoly::Terms out;
  if (k == 0.0) return QuatBiPoly();
  for (const auto& [m, c] : a.terms_) out.emplace(m, k * c);
  return QuatBiPoly(std::move(out));
}

std::string QuatBiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << '(' << c.w();
    const char* units[] = {"i", "j", "k"};
    for (int n = 1; n < 4; ++n) {
      if (c[n] == 0.0) continue;
      os << (c[n] < 0 ? " - " : " + ") << std::abs(c[n]) << '*' << units[n - 1];
    }
    os << ')';
    if (m.t > 0) os << "*t" << (m.t > 1 ? "^" + std::to_string(m.t) : "");
    if (m.s > 0) os << "*s" << (m.s > 1 ? "^" + std::to_string(m.s) : "");
  }
  return os.str();
}

bool approx_equal(const QuatBiPoly& a, const QuatBiPoly& b, double eps) {
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  return (a - b).max_abs() <= eps * scale;
}

double relative_difference(const QuatBiPoly& a, const QuatBiPoly& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  if (scale == 0.0) return 0.0;
  return (a - b).max_abs() / scale;
}

RealBiPoly norm_poly(const QuatBiPoly& q, const Tolerance& tol) {
  if (q.is_zero()) return RealBiPoly(1, 1);
  const QuatBiPoly n = q.conj() * q;
  RealBiPoly out(2 * q.deg_t() + 1, 2 * q.deg_s() + 1);
  double real_scale = 0.0;
  double imag = 0.0;
  for (const auto& [m, c] : n.terms()) {
    out.set(m.t, m.s, c.w());
    real_scale = std::max(real_scale, std::abs(c.w()));
    imag = std::max({imag, std::abs(c.x()), std::abs(c.y()), std::abs(c.z())});
  }
  if (imag > tol.eps * real_scale)
    throw Error(ErrorCode::NonRealResidue, "conj(Q)Q has imaginary residue " + std::to_string(imag));
  return out;
}

DivRem divrem_real(const QuatBiPoly& q, const RealUniPoly& m, const Tolerance& tol) {
  if (m.is_zero() || std::abs(m.leading() - 1.0) > tol.eps)
    throw Error(ErrorCode::NonMonicDivisor, "divisor " + m.to_string() + " is not monic");
  const Var v = m.var();
  const int dm = m.degree();
  // Work on the coefficients of v^k, each a polynomial in the other variable.
  const int dq = q.degree(v);
  std::vector<QuatBiPoly> rem(static_cast<std::size_t>(std::max(dq + 1, 0)));
  for (int k = 0; k <= dq; ++k) rem[static_cast<std::size_t>(k)] = q.coeff_in(v, k);
  QuatBiPoly quotient;
  auto power = [&](int e) {
    return v == Var::t ? QuatBiPoly::term(e, 0, 1.0) : QuatBiPoly::term(0, e, 1.0);
  };
  for (int k = dq; k >= dm; --k) {
    const QuatBiPoly c = rem[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    quotient = quotient + c * power(k - dm);
    for (int j = 0; j <= dm; ++j) {
      const double mj = m[static_cast<std::size_t>(j)];
      if (mj == 0.0) continue;
      rem[static_cast<std::size_t>(k - dm + j)] = rem[static_cast<std::size_t>(k - dm + j)] - mj * c;
    }
    rem[static_cast<std::size_t>(k)] = QuatBiPoly();
  }
  QuatBiPoly remainder;
  for (int k = 0; k < std::min(dm, dq + 1); ++k) remainder = remainder + rem[static_cast<std::size_t>(k)] * power(k);
  return {quotient, remainder};
}

bool divides_real(const QuatBiPoly& q, const RealUniPoly& m, const Tolerance& tol) {
  if (q.is_zero()) return true;
  const DivRem dr = divrem_real(q, m, tol);
  return dr.remainder.max_abs() <= tol.eps * q.max_abs();
}

namespace {

// Candidate divisors derived from quadratic blocks: irreducible quadratics
// as they are, and v - r for every squared real block (v - r)^2.
std::vector<RealUniPoly> divisor_candidates(const QuadraticFactorTuple& tuple, double eps) {
  std::vector<RealUniPoly> out;
  for (const auto& f : tuple.factors) {
    RealUniPoly cand = f;
    if (f.degree() == 2) {
      const double b = f[1], c = f[0];
      const double disc = c - 0.25 * b * b;  // > 0 for irreducible
      if (disc <= 1e-7 * std::max(1.0, std::abs(c))) cand = RealUniPoly(f.var(), {0.5 * b, 1.0});
    }
    const bool dup = std::any_of(out.begin(), out.end(), [&](const RealUniPoly& o) { return approx_equal(o, cand, eps); });
    if (!dup) out.push_back(cand);
  }
  return out;
}

}  // namespace

MrpfResult mrpf_extract(const QuatBiPoly& q, const QuadraticFactorTuple& candidates, const Tolerance& tol) {
  MrpfResult res{RealUniPoly::one(candidates.var), q};
  if (q.is_zero()) return res;
  for (const auto& cand : divisor_candidates(candidates, tol.eps)) {
    while (res.rest.degree(cand.var()) >= cand.degree()) {
      const DivRem dr = divrem_real(res.rest, cand, tol);
      if (dr.remainder.max_abs() > tol.eps * res.rest.max_abs()) break;
      res.rest = dr.quotient;
      res.factor = res.factor * cand;
    }
  }
  return res;
}

FullMrpf strip_mrpf(const QuatBiPoly& q, const Tolerance& tol) {
  FullMrpf out{RealUniPoly::one(Var::t), RealUniPoly::one(Var::s), q};
  if (q.is_zero()) return out;
  // Callers pass remainders that satisfy the condition by construction, so
  // the rank test only has to absorb rounding: sqrt(eps) is enough.
  const auto [P, R] = nfc_decompose(norm_poly(q, tol), Tolerance{std::sqrt(tol.eps)});
  if (P.degree() > 0) {
    const auto r = mrpf_extract(out.rest, rp_quadratic_factors(P, tol), tol);
    out.t_factor = r.factor;
    out.rest = r.rest;
  }
  if (R.degree() > 0) {
    const auto r = mrpf_extract(out.rest, rp_quadratic_factors(R, tol), tol);
    out.s_factor = r.factor;
    out.rest = r.rest;
  }
  return out;
}

namespace {

QuatBiPoly divide_linear(const QuatBiPoly& q, Var v, const Quaternion& h, bool right, const Tolerance& tol) {
  const int n = q.degree(v);
  if (n < 1) throw Error(ErrorCode::DegenerateRemainder, "dividend has no positive degree in the division variable");
  // q = sum c_k v^k, quotient p = sum p_k v^k with
  // right: c_k = p_{k-1} - p_k h,   left: c_k = p_{k-1} - h p_k.
  std::vector<QuatBiPoly> p(static_cast<std::size_t>(n));
  const QuatBiPoly hp(h);
  p[static_cast<std::size_t>(n - 1)] = q.coeff_in(v, n);
  for (int k = n - 1; k >= 1; --k) {
    const QuatBiPoly& pk = p[static_cast<std::size_t>(k)];
    p[static_cast<std::size_t>(k - 1)] = q.coeff_in(v, k) + (right ? pk * hp : hp * pk);
  }
  const QuatBiPoly residue = q.coeff_in(v, 0) + (right ? p[0] * hp : hp * p[0]);
  if (residue.max_abs() > tol.eps * std::max(1.0, q.max_abs()) * std::max(1.0, h.max_abs()))
    throw Error(ErrorCode::DegenerateRemainder, std::string(var_name(v)) + " - h is not a " + (right ? "right" : "left") +
                                                    " factor (residue " + std::to_string(residue.max_abs()) + ")");
  QuatBiPoly out;
  for (int k = 0; k < n; ++k) {
    const QuatBiPoly mono = v == Var::t ? QuatBiPoly::term(k, 0, 1.0) : QuatBiPoly::term(0, k, 1.0);
    out = out + p[static_cast<std::size_t>(k)] * mono;
  }
  return out;
}

}  // namespace

QuatBiPoly divide_right_linear(const QuatBiPoly& q, Var v, const Quaternion& h, const Tolerance& tol) {
  return divide_linear(q, v, h, true, tol);
}

QuatBiPoly divide_left_linear(const QuatBiPoly& q, Var v, const Quaternion& h, const Tolerance& tol) {
  return divide_linear(q, v, h, false, tol);
}

QuatBiPoly divide_real_exact(const QuatBiPoly& q, const RealUniPoly& m, const Tolerance& tol) {
  if (m.degree() == 0) return (1.0 / m.leading()) * q;
  const double lc = m.leading();
  const DivRem dr = divrem_real(q, m.monic(), tol);
  if (dr.remainder.max_abs() > tol.eps * q.max_abs())
    throw Error(ErrorCode::DegenerateRemainder, "polynomial is not divisible by " + m.to_string());
  return (1.0 / lc) * dr.quotient;
}

}  // namespace quatfact

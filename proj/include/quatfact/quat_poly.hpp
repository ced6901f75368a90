#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>

#include "quatfact/quaternion.hpp"
#include "quatfact/real_poly.hpp"

namespace quatfact {

struct Monomial {
  int t = 0;
  int s = 0;
  friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;
  int degree(Var v) const noexcept { return v == Var::t ? t : s; }
};

/// Element of H[t,s] in sparse monomial form. Both indeterminates commute
/// with the coefficients and with each other; exact-zero terms are never
/// stored.
class QuatBiPoly {
 public:
  using Terms = std::map<Monomial, Quaternion>;

  QuatBiPoly() = default;
  QuatBiPoly(const Quaternion& c);  // constant
  QuatBiPoly(double c) : QuatBiPoly(Quaternion(c)) {}
  explicit QuatBiPoly(Terms terms);

  static QuatBiPoly term(int t_deg, int s_deg, const Quaternion& c);
  static QuatBiPoly variable(Var v) { return v == Var::t ? term(1, 0, 1.0) : term(0, 1, 1.0); }
  /// The monic linear polynomial v - h.
  static QuatBiPoly linear(Var v, const Quaternion& h) { return variable(v) - QuatBiPoly(h); }
  static QuatBiPoly from_real(const RealUniPoly& p);
  static QuatBiPoly from_real(const RealBiPoly& p);

  const Terms& terms() const noexcept { return terms_; }
  Quaternion coeff(int t_deg, int s_deg) const;
  bool is_zero() const noexcept { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree(Var v) const noexcept;
  int deg_t() const noexcept { return degree(Var::t); }
  int deg_s() const noexcept { return degree(Var::s); }
  double max_abs() const noexcept;

  /// Leading monomial/coefficient in graded lexicographic order (t > s).
  Monomial leading_monomial() const;
  Quaternion leading_coefficient() const;

  /// Coefficient of v^k, a polynomial in the other variable.
  QuatBiPoly coeff_in(Var v, int k) const;
  /// Component c (0..3 for 1, i, j, k) as a real polynomial.
  RealBiPoly component(int c) const;

  QuatBiPoly conj() const;
  /// Exchanges the roles of t and s.
  QuatBiPoly swapped() const;
  /// Drops terms with max-abs coefficient <= rel * max_abs().
  QuatBiPoly pruned(double rel) const;
  Quaternion operator()(double t, double s) const;

  friend QuatBiPoly operator+(const QuatBiPoly& a, const QuatBiPoly& b);
  friend QuatBiPoly operator-(const QuatBiPoly& a, const QuatBiPoly& b);
  friend QuatBiPoly operator-(const QuatBiPoly& a);
  friend QuatBiPoly operator*(const QuatBiPoly& a, const QuatBiPoly& b);
  friend QuatBiPoly operator*(double c, const QuatBiPoly& a);

  std::string to_string() const;

 private:
  Terms terms_;
};

inline QuatBiPoly qp_mul(const QuatBiPoly& a, const QuatBiPoly& b) { return a * b; }

/// max |a - b| <= eps * max(1, |a|, |b|), coefficientwise.
bool approx_equal(const QuatBiPoly& a, const QuatBiPoly& b, double eps = 1e-9);
/// max-coefficient norm of (a - b) divided by max(|a|, |b|); 0 when both vanish.
double relative_difference(const QuatBiPoly& a, const QuatBiPoly& b);

/// conj(q) * q. Throws NonRealResidue when the imaginary part is above
/// eps * max|N(q)|.
RealBiPoly norm_poly(const QuatBiPoly& q, const Tolerance& tol = {});

struct DivRem {
  QuatBiPoly quotient;
  QuatBiPoly remainder;
};

/// q = T m + S, dividing in (H[other])[v] where v = m.var(). m must be monic.
DivRem divrem_real(const QuatBiPoly& q, const RealUniPoly& m, const Tolerance& tol = {});

/// True iff the remainder of q by m is below eps * max|q|.
bool divides_real(const QuatBiPoly& q, const RealUniPoly& m, const Tolerance& tol = {});

struct MrpfResult {
  RealUniPoly factor;  // product of the candidates that divide q
  QuatBiPoly rest;     // q / factor
};

/// Strips every candidate (repeatedly, for multiplicity) that divides q.
MrpfResult mrpf_extract(const QuatBiPoly& q, const QuadraticFactorTuple& candidates, const Tolerance& tol = {});

/// Real factors of q that can be read off its norm: the result carries the
/// t-part and s-part separately together with q / (F_t F_s). Candidates are
/// the quadratic factors of the norm's univariate parts (and the linear
/// factor v - r of every squared real block).
struct FullMrpf {
  RealUniPoly t_factor;
  RealUniPoly s_factor;
  QuatBiPoly rest;
};
FullMrpf strip_mrpf(const QuatBiPoly& q, const Tolerance& tol = {});

/// Exact right division q = q' (v - h); throws DegenerateRemainder when v - h
/// is not a right factor within tolerance.
QuatBiPoly divide_right_linear(const QuatBiPoly& q, Var v, const Quaternion& h, const Tolerance& tol = {});
/// Exact left division q = (v - h) q'.
QuatBiPoly divide_left_linear(const QuatBiPoly& q, Var v, const Quaternion& h, const Tolerance& tol = {});
/// Exact division by a real polynomial (which commutes with everything).
QuatBiPoly divide_real_exact(const QuatBiPoly& q, const RealUniPoly& m, const Tolerance& tol = {});

}  // namespace quatfact

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "quatfact/error.hpp"

namespace quatfact {

/// The two central indeterminates. They commute with each other and with
/// every coefficient.
enum class Var { t, s };

inline Var other(Var v) noexcept { return v == Var::t ? Var::s : Var::t; }
inline const char* var_name(Var v) noexcept { return v == Var::t ? "t" : "s"; }

/// Real polynomial in a single variable, coefficients in ascending degree.
/// Exact trailing zeros are dropped on construction; the zero polynomial has
/// an empty coefficient vector.
class RealUniPoly {
 public:
  RealUniPoly() = default;
  explicit RealUniPoly(Var var, std::vector<double> coeffs = {});

  static RealUniPoly constant(double c, Var var = Var::t) { return RealUniPoly(var, {c}); }
  static RealUniPoly one(Var var = Var::t) { return constant(1.0, var); }

  Var var() const noexcept { return var_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t n) const noexcept { return n < coeffs_.size() ? coeffs_[n] : 0.0; }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs() const noexcept;

  RealUniPoly monic() const;
  /// Drops trailing coefficients with |c| <= rel * max_abs().
  RealUniPoly trimmed(double rel) const;
  RealUniPoly with_var(Var v) const { return RealUniPoly(v, coeffs_); }

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> z) const noexcept;
  RealUniPoly derivative() const;

  friend RealUniPoly operator+(const RealUniPoly& a, const RealUniPoly& b);
  friend RealUniPoly operator-(const RealUniPoly& a, const RealUniPoly& b);
  friend RealUniPoly operator*(const RealUniPoly& a, const RealUniPoly& b);
  friend RealUniPoly operator*(double c, const RealUniPoly& a);

  std::string to_string() const;

 private:
  Var var_ = Var::t;
  std::vector<double> coeffs_;
};

/// Coefficient-wise comparison: max |a_n - b_n| <= eps * max(1, |a|, |b|).
bool approx_equal(const RealUniPoly& a, const RealUniPoly& b, double eps = 1e-9);

/// Dense bivariate real polynomial; at(i, j) is the coefficient of t^i s^j.
class RealBiPoly {
 public:
  RealBiPoly() = default;
  RealBiPoly(int rows, int cols) : rows_(rows), cols_(cols), c_(static_cast<std::size_t>(rows * cols), 0.0) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  double at(int i, int j) const noexcept {
    return (i < rows_ && j < cols_ && i >= 0 && j >= 0) ? c_[static_cast<std::size_t>(i * cols_ + j)] : 0.0;
  }
  void set(int i, int j, double v) { c_.at(static_cast<std::size_t>(i * cols_ + j)) = v; }
  double max_abs() const noexcept;
  double operator()(double t, double s) const noexcept;

  /// Outer product P(t) * R(s).
  static RealBiPoly outer(const RealUniPoly& p, const RealUniPoly& r);
  /// Lifts a univariate polynomial into the bivariate ring.
  static RealBiPoly from_uni(const RealUniPoly& p);

  friend RealBiPoly operator*(const RealBiPoly& a, const RealBiPoly& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> c_;
};

bool approx_equal(const RealBiPoly& a, const RealBiPoly& b, double eps = 1e-9);

/// Monic degree-two factors of a nonnegative real polynomial, either
/// irreducible (complex conjugate root pair) or a squared linear block.
struct QuadraticFactorTuple {
  Var var = Var::t;
  double leading = 1.0;
  std::vector<RealUniPoly> factors;

  std::size_t size() const noexcept { return factors.size(); }
  /// leading * prod(factors).
  RealUniPoly product() const;
  /// Reorders by `order`, which must be a permutation of 0..size()-1.
  QuadraticFactorTuple permuted(const std::vector<std::size_t>& order) const;
};

/// Roots with multiplicity via Aberth-Ehrlich simultaneous iteration.
/// Each root satisfies |p(z)| <= eps * ||p|| * max(1,|z|)^deg, otherwise
/// DidNotConverge is thrown.
std::vector<std::complex<double>> rp_roots(const RealUniPoly& p, const Tolerance& tol = {});

/// Splits a polynomial without real roots of odd multiplicity into monic
/// quadratics, sorted by (linear coefficient, constant coefficient).
QuadraticFactorTuple rp_quadratic_factors(const RealUniPoly& p, const Tolerance& tol = {});

/// p = q * d + r with deg r < deg d. d must be monic.
std::pair<RealUniPoly, RealUniPoly> rp_divrem(const RealUniPoly& p, const RealUniPoly& d,
                                              const Tolerance& tol = {});

struct NfcResult {
  bool satisfied = false;
  RealUniPoly P;  // in t, carries the leading scalar
  RealUniPoly R;  // in s, monic
  /// Largest 2x2 minor magnitude relative to max|n|^2, and where it sits.
  double worst_minor = 0.0;
  int minor_rows[2] = {0, 0};
  int minor_cols[2] = {0, 0};
};

/// Rank-one test of the coefficient matrix: n(t,s) = P(t) R(s).
NfcResult nfc_rank1(const RealBiPoly& n, const Tolerance& tol = {});

/// As nfc_rank1 but throws NotRankOne on failure.
std::pair<RealUniPoly, RealUniPoly> nfc_decompose(const RealBiPoly& n, const Tolerance& tol = {});

}  // namespace quatfact

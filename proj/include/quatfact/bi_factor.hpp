#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "quatfact/uni_factor.hpp"

namespace quatfact {

/// Coefficients of S in H_11 (S = S00 + S10 t + S01 s + S11 ts) and the two
/// quaternions deciding which way the quadratic t-factor splits off.
struct SplitRemainder {
  Quaternion S00, S10, S01, S11;
  Quaternion q;  // -S10 S11^{-1}
  Quaternion p;  // S00 - S10 S11^{-1} S01

  static SplitRemainder from(const QuatBiPoly& S);
};

/// q = left[0] ... left[k-1] * middle * right[0] ... right[p-1], where
/// middle is linear (or constant) in s and free of t.
struct StarOneFactorization {
  std::vector<LinearFactor> left;
  QuatBiPoly middle;
  std::vector<LinearFactor> right;

  QuatBiPoly product() const;
};

/// Factorization of q in H_{*1} with mrpf(q) = 1, consuming the quadratic
/// t-factors of N(q) in the given order. Each step divides by the next
/// quadratic and either peels off a right t-factor (remainder free of s, or
/// p = 0) or a left t-factor.
StarOneFactorization algorithm1(const QuatBiPoly& q, const QuadraticFactorTuple& t_order, const Tolerance& tol = {});

/// Quadratic factors of the t-part (v = t) or s-part of N(q) in canonical
/// order. Throws NFCViolated when the norm does not split.
QuadraticFactorTuple norm_part_quadratics(const QuatBiPoly& q, Var v, const Tolerance& tol = {});

/// t-quadratics of N(q) in the order the multiplication technique hands them
/// to algorithm1: constant term ascending, then linear coefficient descending.
QuadraticFactorTuple inner_t_order(const QuatBiPoly& q, const Tolerance& tol = {});

/// Multiplication technique. Returns K in R[t] and monic linear factors with
/// K q = unit * prod(factors). `s_order` lists the irreducible quadratic
/// s-factors of N(q) in the order they are consumed. q may carry a leading
/// unit but must have mrpf(q) = 1.
Factorization algorithm2(const QuatBiPoly& q, const QuadraticFactorTuple& s_order, const Tolerance& tol = {});

/// Mirror image: consumes t-quadratics and returns K in R[s].
Factorization algorithm2_t(const QuatBiPoly& q, const QuadraticFactorTuple& t_order, const Tolerance& tol = {});

/// max-coefficient norm of unit * prod(factors) - K q, relative to max|K q|.
double verify(const QuatBiPoly& q, const Factorization& f);

/// Residual bound every factorization returned by this module satisfies.
inline constexpr double kVerifyBound = 1e-8;

struct EquivalenceOptions {
  std::size_t max_states = 10000;
  double hash_resolution = 1e-6;
};

/// Ordered norms of the factors in `var` agree pairwise (t-equivalence uses
/// the s-factors). Throws DifferentPolynomials if f1, f2 describe different
/// polynomials.
bool t_equivalent(const Factorization& f1, const Factorization& f2, const Tolerance& tol = {});
bool s_equivalent(const Factorization& f1, const Factorization& f2, const Tolerance& tol = {});

/// Breadth-first search over adjacent commuting swaps and Bennett flips of
/// adjacent factors in the same variable. Throws StateBudgetExceeded when
/// the search is cut off before a decision.
bool equivalent(const Factorization& f1, const Factorization& f2, const Tolerance& tol = {},
                const EquivalenceOptions& opts = {});

enum class Role { s, t, both };

struct EnumerationEntry {
  Var role = Var::s;              // which variable's quadratics were permuted
  std::vector<std::size_t> order; // indices into the canonical tuple
  Factorization factorization;
  double residual = 0.0;
  bool k_is_one = false;
  int equivalence_class = -1;     // -1 unless k_is_one
};

struct EnumerationReport {
  QuadraticFactorTuple s_tuple;
  QuadraticFactorTuple t_tuple;
  std::vector<EnumerationEntry> entries;
  std::size_t k_one_count = 0;
  int class_count = 0;
  /// Pairs where the equivalence search hit its budget; treated as distinct.
  std::size_t undecided = 0;
};

/// Runs the multiplication technique for every distinct permutation of the
/// quadratic factor tuple(s), flags K = 1 results and groups them into
/// equivalence classes. Permutations run on up to `threads` workers (0 picks
/// the hardware concurrency); the report order is deterministic.
EnumerationReport enumerate(const QuatBiPoly& q, Role role = Role::s, const Tolerance& tol = {},
                            const EquivalenceOptions& opts = {}, unsigned threads = 0);

}  // namespace quatfact

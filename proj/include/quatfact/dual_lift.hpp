#pragma once

#include <string>
#include <vector>

#include "quatfact/uni_factor.hpp"

namespace quatfact {

/// Which unknown a block of four columns belongs to: the dual part of
/// factor `index` (0-based) of the first ('G') or second ('H') factorization.
struct LiftColumn {
  char side = 'G';
  int index = 0;
};

/// Homogeneous linear system A x = 0 for the dual parts of two
/// factorizations C = G_1...G_n = H_1...H_m with G_l = v - g_l + eps d_l.
/// x stacks d_1, ..., d_n, f_1, ..., f_m, four reals each (1, i, j, k).
struct LiftSystem {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_tags;
  std::vector<LiftColumn> layout;

  std::size_t unknowns() const { return 4 * layout.size(); }
  std::size_t equations() const { return rows.size(); }
};

struct LiftSolution {
  std::vector<std::vector<double>> basis;
  std::vector<LiftColumn> layout;
  std::vector<std::string> parameters;  // one name per basis vector
  std::size_t dimension = 0;
};

/// Study rows (Re(p conj d) = 0 and Re(d) = 0 per factor, p = -h the
/// primal constant) followed by four rows per monomial equating the dual
/// parts of both products. Identically zero rows are dropped. Throws
/// MismatchedPolynomials when the primal products differ.
LiftSystem build_lift_system(const Factorization& f1, const Factorization& f2, const Tolerance& tol = {});

/// Nullspace of the system through a full SVD; singular values at or below
/// rank_tol * sigma_max count as zero.
LiftSolution solve_lift(const LiftSystem& sys, double rank_tol = 1e-10);

/// Dual parts (as quaternions) of every factor for the point x.
std::vector<Quaternion> unpack_lift_point(const std::vector<double>& x);

/// Substitutes x into both dual products and the Study conditions. Returns
/// the largest violation, relative to max(1, size of the dual products).
double verify_lift(const Factorization& f1, const Factorization& f2, const std::vector<double>& x);

}  // namespace quatfact

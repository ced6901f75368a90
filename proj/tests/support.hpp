// Shared fixtures for the test binaries: reference polynomials built term
// by term, an independent Hamilton product and random generators.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "quatfact/bi_factor.hpp"
#include "quatfact/dual_lift.hpp"

namespace fixtures {

using quatfact::Factorization;
using quatfact::LinearFactor;
using quatfact::QuatBiPoly;
using quatfact::Quaternion;
using quatfact::Var;

inline const Quaternion I = Quaternion::i();
inline const Quaternion J = Quaternion::j();
inline const Quaternion K = Quaternion::k();
inline const double R2 = std::sqrt(2.0);

// Hamilton product written out componentwise; shares no code with the library.
inline Quaternion ham(const Quaternion& a, const Quaternion& b) {
  const double a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3];
  const double b0 = b[0], b1 = b[1], b2 = b[2], b3 = b[3];
  return Quaternion(a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3, a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                    a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1, a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0);
}

inline double max_diff(const Quaternion& a, const Quaternion& b) {
  double d = 0.0;
  for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(a[c] - b[c]));
  return d;
}

inline QuatBiPoly T(int t, int s, const Quaternion& c) { return QuatBiPoly::term(t, s, c); }

// (t^2 - i) s^2 + 2 j t s + (i t^2 - 1)
inline QuatBiPoly beauregard() {
  return T(2, 2, 1.0) + T(0, 2, -I) + T(1, 1, 2.0 * J) + T(2, 0, I) + T(0, 0, -1.0);
}

// Bidegree (2,2) polynomial that factors with K = 1, expanded by hand.
inline QuatBiPoly bidegree22() {
  return T(2, 2, 1.0) + T(1, 2, Quaternion(-1, -3, 0, 0)) + T(0, 2, Quaternion(-2, 1, 0, 0)) +
         T(2, 1, Quaternion(0, -1, -2, 0)) + T(1, 1, Quaternion(-3, 1, -2, 2)) + T(0, 1, Quaternion(1, 2, 0, 2)) +
         T(2, 0, Quaternion(0, 2, -1, -1)) + T(1, 0, Quaternion(-2, -2, 2, 0)) + T(0, 0, Quaternion(-2, 4, -1, -3));
}

// Product of monic linear factors by repeated componentwise expansion.
inline QuatBiPoly expand(const Quaternion& unit, const std::vector<LinearFactor>& fs) {
  QuatBiPoly acc(unit);
  for (const auto& f : fs) {
    QuatBiPoly next;
    for (const auto& [m, c] : acc.terms()) {
      next = next + T(m.t + (f.var == Var::t), m.s + (f.var == Var::s), c);
      next = next + T(m.t, m.s, -ham(c, f.h));
    }
    acc = next;
  }
  return acc;
}

inline Factorization make(std::vector<LinearFactor> fs, Quaternion unit = Quaternion(1.0)) {
  Factorization f;
  f.unit = unit;
  f.factors = std::move(fs);
  return f;
}

// Reference factors are written v + p; LinearFactor stores v - h.
inline LinearFactor tp(const Quaternion& p) { return {Var::t, -p}; }
inline LinearFactor sp(const Quaternion& p) { return {Var::s, -p}; }

// The four factorizations of (t^2 + 1) times the Beauregard polynomial
// (kt_*) and of (s^2 + 1) times it (ks_*).
inline std::vector<LinearFactor> beauregard_kt_a() {
  return {tp((-K - J) / R2), sp((1.0 - I) / R2), tp((1.0 + K) / R2),
          tp((-1.0 + K) / R2), sp((-1.0 + I) / R2), tp((J - K) / R2)};
}
inline std::vector<LinearFactor> beauregard_kt_b() {
  return {tp((J + K) / R2), sp((-1.0 + I) / R2), tp((1.0 - K) / R2),
          tp((-1.0 - K) / R2), sp((1.0 - I) / R2), tp((K - J) / R2)};
}
inline std::vector<LinearFactor> beauregard_ks_a() {
  return {sp((J - K) / R2), tp((-1.0 - I) / R2), sp((1.0 + K) / R2),
          sp((-1.0 + K) / R2), tp((1.0 + I) / R2), sp((-J - K) / R2)};
}
inline std::vector<LinearFactor> beauregard_ks_b() {
  return {sp((K - J) / R2), tp((1.0 + I) / R2), sp((1.0 - K) / R2),
          sp((-1.0 - K) / R2), tp((-1.0 - I) / R2), sp((J + K) / R2)};
}

// (t^2 + 6/5 t + 9/5) bidegree22().
inline std::vector<LinearFactor> bidegree22_scaled() {
  return {{Var::t, I},
          {Var::t, Quaternion(-0.6, 0.4, 0.8, -0.8)},
          {Var::s, Quaternion(0, 0.2, 1.4, -1)},
          {Var::t, Quaternion(1, 1.2, -1.6, 0)},
          {Var::s, Quaternion(0, 0.8, 0.6, 1)},
          {Var::t, Quaternion(-0.6, 0.4, 0.8, 0.8)}};
}
// bidegree22() itself.
inline std::vector<LinearFactor> bidegree22_factors() {
  return {{Var::t, I}, {Var::s, J - K}, {Var::t, 1.0 + 2.0 * I}, {Var::s, I + J + K}};
}

// Two factorizations of the same bidegree (2,2) polynomial (closed loop).
inline Factorization loop_G() { return make({tp(I + J + 2.0 * K), sp(K), tp(-I - J), sp(I + J - K)}); }
inline Factorization loop_H() { return make({sp(I + J + K), tp(I + J), sp(-K), tp(-I - J + 2.0 * K)}); }

// Three s-factors with pairwise distinct norms between t-factors whose
// norms repeat.
inline Factorization repeated_norms() {
  return make({{Var::t, I}, {Var::t, J}, {Var::s, J}, {Var::s, I - J}, {Var::s, 2.0 * K}, {Var::t, 1.0 + J}});
}

// Two equivalent factorizations of one polynomial.
inline Factorization equiv_a() {
  return make({{Var::t, Quaternion(0, 1.4, 0, -0.2)}, {Var::t, Quaternion(0, 0.6, 0, -0.8)}, sp(2.0 * I - 2.0 * K),
               tp(2.0 * J), {Var::s, I + 4.0 * J - K}, tp(J - 2.0 * K)});
}
inline Factorization equiv_b() {
  return make({{Var::t, I}, sp(2.0 * I - 2.0 * K), {Var::t, Quaternion(0, 4.0 / 3, -2.0 / 3, -4.0 / 3)},
               {Var::s, I + 4.0 * J - K}, {Var::t, Quaternion(0, -14.0 / 33, -65.0 / 33, 32.0 / 33)},
               {Var::t, Quaternion(0, 1.0 / 11, -4.0 / 11, 15.0 / 11)}});
}

// Dual parts of the known 4-parameter lift family of loop_G/loop_H, laid out as
// d1..d4 (G side) then f1..f4 (H side).
inline std::vector<double> lift_family(double a, double b, double g, double d) {
  const std::vector<Quaternion> q = {
      Quaternion(0, b - a + d - 2 * g, a - b - d, g),
      Quaternion(0, d - g, a, 0),
      Quaternion(0, -b, b, -(a + g + d)),
      Quaternion(0, 0.5 * (a + 2 * b - d + 2 * g), -0.5 * (a + 2 * b - d), g),
      Quaternion(0, 0.5 * (-a + 2 * b + d - 2 * g), 0.5 * (a - 2 * b - d), g),
      Quaternion(0, b, -b, -(a - g + d)),
      Quaternion(0, a + g, d, 0),
      Quaternion(0, -b - a + d - 2 * g, a + b - d, -g),
  };
  std::vector<double> x;
  for (const auto& e : q)
    for (int c = 0; c < 4; ++c) x.push_back(e[c]);
  return x;
}

inline Quaternion random_quat(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Quaternion(u(rng), u(rng), u(rng), u(rng));
}

// Factor whose norm differs from every norm already used for that variable.
inline LinearFactor random_factor(std::mt19937_64& rng, Var v, std::vector<quatfact::RealUniPoly>& used) {
  for (;;) {
    const LinearFactor f{v, random_quat(rng, 2.0)};
    const auto n = f.norm();
    bool clash = false;
    for (const auto& u : used)
      if (std::abs(u[0] - n[0]) < 0.05 && std::abs(u[1] - n[1]) < 0.05) clash = true;
    if (clash) continue;
    used.push_back(n);
    return f;
  }
}

// Random interleaving of nt t-factors and ns s-factors.
inline Factorization random_factorization(std::mt19937_64& rng, int nt, int ns) {
  std::vector<quatfact::RealUniPoly> used_t, used_s;
  std::vector<Var> vars;
  for (int n = 0; n < nt; ++n) vars.push_back(Var::t);
  for (int n = 0; n < ns; ++n) vars.push_back(Var::s);
  std::shuffle(vars.begin(), vars.end(), rng);
  Factorization f;
  for (Var v : vars) f.factors.push_back(random_factor(rng, v, v == Var::t ? used_t : used_s));
  return f;
}

}  // namespace fixtures

#include "quatfact/bi_factor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

namespace quatfact {

namespace {

QuatBiPoly product_of(const std::vector<LinearFactor>& fs) {
  QuatBiPoly p(1.0);
  for (const auto& f : fs) p = p * f.poly();
  return p;
}

void require_nfc(const QuatBiPoly& q, const Tolerance& tol) {
  const NfcResult r = nfc_rank1(norm_poly(q, tol), tol);
  if (!r.satisfied) {
    std::ostringstream os;
    os << "N(Q) is not a product P(t)R(s); worst 2x2 minor (rows " << r.minor_rows[0] << ',' << r.minor_rows[1]
       << ", cols " << r.minor_cols[0] << ',' << r.minor_cols[1] << ") has relative magnitude " << r.worst_minor;
    throw Error(ErrorCode::NFCViolated, os.str());
  }
}

void sort_inner(QuadraticFactorTuple& order) {
  const auto near = [](double x, double y) { return std::abs(x - y) <= 1e-7 * std::max({1.0, std::abs(x), std::abs(y)}); };
  std::stable_sort(order.factors.begin(), order.factors.end(), [&](const RealUniPoly& a, const RealUniPoly& b) {
    if (!near(a[0], b[0])) return a[0] < b[0];
    return !near(a[1], b[1]) && a[1] > b[1];
  });
}

// Replaces each quadratic by the nearest known one when they agree to
// kSnap. Clustered roots of a high-degree norm lose digits; the known
// quadratics come straight from factor norms.
void snap_to_known(QuadraticFactorTuple& order, const std::vector<RealUniPoly>& known) {
  constexpr double kSnap = 1e-5;
  for (auto& f : order.factors) {
    const double scale = std::max({1.0, std::abs(f[0]), std::abs(f[1])});
    const RealUniPoly* best = nullptr;
    double best_d = kSnap * scale;
    for (const auto& k : known) {
      const double d = std::max(std::abs(k[0] - f[0]), std::abs(k[1] - f[1]));
      if (d <= best_d) {
        best = &k;
        best_d = d;
      }
    }
    if (best) f = best->with_var(f.var());
  }
  sort_inner(order);
}

}  // namespace

QuadraticFactorTuple inner_t_order(const QuatBiPoly& q, const Tolerance& tol) {
  // Intermediate polynomials satisfy the condition by construction; their
  // minors only carry rounding, so the rank test is loosened to sqrt(eps).
  const NfcResult r = nfc_rank1(norm_poly(q, tol), Tolerance{std::sqrt(tol.eps)});
  if (!r.satisfied) {
    std::ostringstream os;
    os << "intermediate norm is not a product P(t)R(s); worst 2x2 minor has relative magnitude " << r.worst_minor;
    throw Error(ErrorCode::NFCViolated, os.str());
  }
  QuadraticFactorTuple order =
      r.P.degree() <= 0 ? QuadraticFactorTuple{Var::t, r.P.leading(), {}} : rp_quadratic_factors(r.P, tol);
  sort_inner(order);
  return order;
}

SplitRemainder SplitRemainder::from(const QuatBiPoly& S) {
  SplitRemainder r;
  r.S00 = S.coeff(0, 0);
  r.S10 = S.coeff(1, 0);
  r.S01 = S.coeff(0, 1);
  r.S11 = S.coeff(1, 1);
  if (r.S11.norm() > 0.0) {
    const Quaternion inv = r.S11.inverse(0.0);
    r.q = -(r.S10 * inv);
    r.p = r.S00 - r.S10 * inv * r.S01;
  }
  return r;
}

QuatBiPoly StarOneFactorization::product() const { return product_of(left) * middle * product_of(right); }

QuadraticFactorTuple norm_part_quadratics(const QuatBiPoly& q, Var v, const Tolerance& tol) {
  const NfcResult r = nfc_rank1(norm_poly(q, tol), tol);
  if (!r.satisfied) {
    std::ostringstream os;
    os << "N(Q) is not a product P(t)R(s); worst 2x2 minor has relative magnitude " << r.worst_minor;
    throw Error(ErrorCode::NFCViolated, os.str());
  }
  const RealUniPoly& part = v == Var::t ? r.P : r.R;
  if (part.degree() <= 0) return QuadraticFactorTuple{v, part.leading(), {}};
  return rp_quadratic_factors(part, tol);
}

namespace {

// Forks allowed when p sits between eps and sqrt(eps), where rounding can
// make a true zero look nonzero and vice versa.
constexpr int kMaxForks = 6;

struct Alg1State {
  QuatBiPoly U;
  std::vector<LinearFactor> left, right;  // right in reverse order
};

void alg1_from(Alg1State st, std::size_t step, const QuadraticFactorTuple& t_order, const Tolerance& tol,
               int forks_left, const QuatBiPoly& q, std::optional<StarOneFactorization>& best, double& best_res) {
  const QuatBiPoly s_var = QuatBiPoly::variable(Var::s);
  for (; step < t_order.factors.size(); ++step) {
    const RealUniPoly M = t_order.factors[step].with_var(Var::t);
    const DivRem dr = divrem_real(st.U, M, tol);
    const QuatBiPoly& T = dr.quotient;
    const QuatBiPoly& S = dr.remainder;
    const double scale = S.max_abs();
    if (scale <= tol.eps * st.U.max_abs())
      throw Error(ErrorCode::DegenerateRemainder, "remainder by " + M.to_string() + " vanishes (mrpf is not 1)");
    const SplitRemainder sr = SplitRemainder::from(S);

    if (S.coeff_in(Var::s, 1).max_abs() <= tol.eps * scale) {
      // S = S10 (t + S10^{-1} S00): right factor.
      if (sr.S10.max_abs() <= tol.eps * scale)
        throw Error(ErrorCode::DegenerateRemainder, "remainder is constant");
      const LinearFactor x{Var::t, -(sr.S10.inverse(0.0) * sr.S00)};
      st.right.push_back(x);
      st.U = T * x.poly().conj() + QuatBiPoly(sr.S10);
      continue;
    }

    if (sr.S11.max_abs() <= tol.eps * scale)
      throw Error(ErrorCode::NFCViolated, "remainder has an s-term but no ts-term");
    const Quaternion inv11 = sr.S11.inverse(0.0);
    const double bound = sr.S00.abs() + sr.S10.abs() * inv11.abs() * sr.S01.abs();
    const double prel = sr.p.abs() / bound;

    // S = (s - q) S11 (t + S11^{-1} S01)
    const auto split_right = [&](Alg1State& x) {
      const LinearFactor f{Var::t, -(inv11 * sr.S01)};
      x.right.push_back(f);
      x.U = T * f.poly().conj() + (s_var - QuatBiPoly(sr.q)) * QuatBiPoly(sr.S11);
    };
    // S = (t + S01 S11^{-1}) S11 (s - conj(p^{-1} q p))
    const auto split_left = [&](Alg1State& x) {
      const LinearFactor f{Var::t, -(sr.S01 * inv11)};
      x.left.push_back(f);
      const Quaternion r = (sr.p.inverse(0.0) * sr.q * sr.p).conj();
      x.U = f.poly().conj() * T + QuatBiPoly(sr.S11) * (s_var - QuatBiPoly(r));
    };

    if (prel <= tol.eps) {
      split_right(st);
    } else if (prel > std::sqrt(tol.eps) || forks_left <= 0) {
      split_left(st);
    } else {
      std::optional<Error> first_error;
      for (const bool right : {true, false}) {
        Alg1State branch = st;
        try {
          if (right) split_right(branch);
          else split_left(branch);
          alg1_from(std::move(branch), step + 1, t_order, tol, forks_left - 1, q, best, best_res);
        } catch (const Error& e) {
          if (!first_error) first_error = e;
        }
      }
      if (!best && first_error) throw *first_error;
      return;
    }
  }
  if (st.U.deg_t() > 0) throw Error(ErrorCode::InvalidArgument, "t-order does not cover the t-degree of the input");
  StarOneFactorization out;
  out.left = std::move(st.left);
  out.right.assign(st.right.rbegin(), st.right.rend());
  out.middle = st.U;
  const double res = relative_difference(out.product(), q);
  if (!best || res < best_res) {
    best = std::move(out);
    best_res = res;
  }
}

}  // namespace

StarOneFactorization algorithm1(const QuatBiPoly& q, const QuadraticFactorTuple& t_order, const Tolerance& tol) {
  if (q.deg_s() > 1) throw Error(ErrorCode::InvalidArgument, "algorithm1 expects s-degree at most one");
  std::optional<StarOneFactorization> best;
  double best_res = 0.0;
  alg1_from(Alg1State{q, {}, {}}, 0, t_order, tol, kMaxForks, q, best, best_res);
  return std::move(*best);
}

double verify(const QuatBiPoly& q, const Factorization& f) {
  const QuatBiPoly target = QuatBiPoly::from_real(f.K) * q;
  const double scale = target.max_abs();
  const double diff = (f.product() - target).max_abs();
  return scale > 0.0 ? diff / scale : diff;
}

namespace {

// Gauss-Newton on (unit, factor roots, lower coefficients of K) against
// unit * prod(factors) - K q = 0. Keeps the iterate only while the
// residual drops.
void polish(const QuatBiPoly& q, Factorization& f) {
  constexpr int kMaxSteps = 6;
  constexpr double kGoal = 1e-14;
  const std::size_t nf = f.factors.size();
  const int kdeg = f.K.degree();
  const Var kv = f.K.var();
  const QuatBiPoly target0 = QuatBiPoly::from_real(f.K) * q;
  const int dt = target0.deg_t() + 1, ds = target0.deg_s() + 1;
  const auto row = [&](const Monomial& m) { return 4 * (static_cast<Eigen::Index>(m.t) * ds + m.s); };
  const Eigen::Index rows = 4 * static_cast<Eigen::Index>(dt) * ds;
  const Eigen::Index cols = 4 * static_cast<Eigen::Index>(nf + 1) + kdeg;

  const auto residual = [&](const Factorization& g, Eigen::VectorXd& r) {
    const QuatBiPoly target = QuatBiPoly::from_real(g.K) * q;
    const QuatBiPoly d = g.product() - target;
    r.setZero(rows);
    for (const auto& [m, c] : d.terms()) {
      if (m.t >= dt || m.s >= ds) return false;
      for (int k = 0; k < 4; ++k) r(row(m) + k) = c[k];
    }
    return true;
  };
  const auto put = [&](Eigen::MatrixXd& J, Eigen::Index col, const QuatBiPoly& p) {
    for (const auto& [m, c] : p.terms())
      if (m.t < dt && m.s < ds)
        for (int k = 0; k < 4; ++k) J(row(m) + k, col) = c[k];
  };
  const Quaternion basis[4] = {Quaternion(1, 0, 0, 0), Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0),
                               Quaternion(0, 0, 0, 1)};

  Eigen::VectorXd r;
  if (!residual(f, r)) return;
  double best = r.lpNorm<Eigen::Infinity>();
  const double scale = target0.max_abs();
  for (int step = 0; step < kMaxSteps && best > kGoal * scale; ++step) {
    std::vector<QuatBiPoly> prefix{QuatBiPoly(f.unit)}, suffix(nf + 1, QuatBiPoly(1.0));
    for (const auto& x : f.factors) prefix.push_back(prefix.back() * x.poly());
    for (std::size_t i = nf; i-- > 0;) suffix[i] = f.factors[i].poly() * suffix[i + 1];
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, cols);
    for (int e = 0; e < 4; ++e) put(J, e, QuatBiPoly(basis[e]) * suffix[0]);
    for (std::size_t i = 0; i < nf; ++i)
      for (int e = 0; e < 4; ++e)
        put(J, 4 * static_cast<Eigen::Index>(i + 1) + e, -(prefix[i] * QuatBiPoly(basis[e]) * suffix[i + 1]));
    for (int j = 0; j < kdeg; ++j) {
      std::vector<double> mono(static_cast<std::size_t>(j) + 1, 0.0);
      mono.back() = 1.0;
      put(J, 4 * static_cast<Eigen::Index>(nf + 1) + j, -(QuatBiPoly::from_real(RealUniPoly(kv, std::move(mono))) * q));
    }
    const Eigen::VectorXd dx = J.completeOrthogonalDecomposition().solve(-r);

    Factorization g = f;
    g.unit = f.unit + Quaternion(dx(0), dx(1), dx(2), dx(3));
    for (std::size_t i = 0; i < nf; ++i) {
      const Eigen::Index c = 4 * static_cast<Eigen::Index>(i + 1);
      g.factors[i].h = f.factors[i].h + Quaternion(dx(c), dx(c + 1), dx(c + 2), dx(c + 3));
    }
    std::vector<double> kc = f.K.coeffs();
    for (int j = 0; j < kdeg; ++j) kc[static_cast<std::size_t>(j)] += dx(4 * static_cast<Eigen::Index>(nf + 1) + j);
    g.K = RealUniPoly(kv, std::move(kc));
    Eigen::VectorXd rg;
    if (!residual(g, rg)) return;
    const double now = rg.lpNorm<Eigen::Infinity>();
    if (!(now < best)) return;
    f = std::move(g);
    best = now;
  }
}

}  // namespace

Factorization algorithm2(const QuatBiPoly& q, const QuadraticFactorTuple& s_order, const Tolerance& tol) {
  if (q.is_zero()) throw Error(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  const Quaternion lc = q.leading_coefficient();
  QuatBiPoly U = QuatBiPoly(lc.inverse(0.0)) * q;
  require_nfc(U, tol);
  const int n = U.deg_s();
  if (static_cast<int>(s_order.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "s-order has " + std::to_string(s_order.size()) +
                                                " quadratics but the s-degree is " + std::to_string(n));

  std::vector<LinearFactor> L;
  std::vector<RealUniPoly> K_factors;
  // Every t-quadratic of N(U) is a t-quadratic of N(q) or the norm of a left
  // factor split off on the way (K q = prod(L) U).
  std::vector<RealUniPoly> known;
  if (U.deg_t() > 0) known = norm_part_quadratics(U, Var::t, tol).factors;
  const QuatBiPoly s_var = QuatBiPoly::variable(Var::s);

  for (int i = 0; i + 1 < n; ++i) {
    const RealUniPoly M = s_order.factors[static_cast<std::size_t>(i)].with_var(Var::s);
    const DivRem dr = divrem_real(U, M, tol);
    if (dr.remainder.max_abs() <= tol.eps * U.max_abs())
      throw Error(ErrorCode::DegenerateRemainder, "remainder by " + M.to_string() + " vanishes (mrpf is not 1)");

    const FullMrpf stripped = strip_mrpf(dr.remainder, tol);
    const StarOneFactorization star =
        algorithm1(stripped.rest, inner_t_order(stripped.rest, tol), tol);
    const Quaternion a = star.middle.coeff(0, 1);
    const Quaternion b = star.middle.coeff(0, 0);
    if (a.max_abs() <= tol.eps * star.middle.max_abs())
      throw Error(ErrorCode::DegenerateRemainder, "remainder has no linear s-factor");
    const Quaternion h = -(b * a.inverse(0.0));

    const QuatBiPoly G = QuatBiPoly(a) * product_of(star.right) * QuatBiPoly::from_real(stripped.t_factor) *
                         QuatBiPoly::from_real(stripped.s_factor);
    std::vector<RealUniPoly> Ki;
    RealUniPoly Kpoly = RealUniPoly::one(Var::t);
    for (const auto& x : star.left) {
      known.push_back(x.norm());
      Ki.push_back(x.norm());
      Kpoly = Kpoly * Ki.back();
    }
    const LinearFactor sx{Var::s, h};
    U = sx.poly().conj() * product_of(star.left).conj() * dr.quotient + G * QuatBiPoly::from_real(Kpoly);

    // Cancel the part of K_i that divides the new U.
    for (auto it = Ki.begin(); it != Ki.end();) {
      if (divides_real(U, *it, tol)) {
        U = divrem_real(U, *it, tol).quotient;
        it = Ki.erase(it);
      } else {
        ++it;
      }
    }

    L.insert(L.end(), star.left.begin(), star.left.end());
    L.push_back(sx);
    K_factors.insert(K_factors.end(), Ki.begin(), Ki.end());
  }

  QuadraticFactorTuple last_order = inner_t_order(U, tol);
  snap_to_known(last_order, known);
  const StarOneFactorization last = algorithm1(U, last_order, tol);
  L.insert(L.end(), last.left.begin(), last.left.end());
  Quaternion a = last.middle.coeff(0, 0);
  if (last.middle.deg_s() >= 1) {
    a = last.middle.coeff(0, 1);
    L.push_back({Var::s, -(last.middle.coeff(0, 0) * a.inverse(0.0))});
  }
  // (s - h) a R_1 ... R_p = (s - h) (a R_1 a^{-1}) ... (a R_p a^{-1}) a
  const Quaternion a_inv = a.inverse(0.0);
  for (const auto& x : last.right) L.push_back({Var::t, a * x.h * a_inv});
  // ... and the trailing a moves to the front: F a = a (a^{-1} F a).
  for (auto& x : L) x.h = a_inv * x.h * a;

  Factorization out;
  out.unit = lc * a;
  out.factors = std::move(L);
  out.K = RealUniPoly::one(Var::t);
  for (const auto& k : K_factors) out.K = out.K * k;

  double res = verify(q, out);
  if (res > 1e-12) {
    polish(q, out);
    res = verify(q, out);
  }
  if (!(res <= kVerifyBound))
    throw Error(ErrorCode::ResidualTooLarge, "factorization residual " + std::to_string(res) + " exceeds bound");
  return out;
}

Factorization algorithm2_t(const QuatBiPoly& q, const QuadraticFactorTuple& t_order, const Tolerance& tol) {
  QuadraticFactorTuple swapped_order = t_order;
  swapped_order.var = Var::s;
  for (auto& f : swapped_order.factors) f = f.with_var(Var::s);
  Factorization f = algorithm2(q.swapped(), swapped_order, tol);
  for (auto& x : f.factors) x.var = other(x.var);
  f.K = f.K.with_var(Var::s);
  return f;
}

namespace {

void require_same_polynomial(const Factorization& f1, const Factorization& f2) {
  if (!approx_equal(f1.K, f2.K, 1e-8))
    throw Error(ErrorCode::DifferentPolynomials, "factorizations carry different real cofactors");
  const double d = relative_difference(f1.product(), f2.product());
  if (!(d <= kVerifyBound))
    throw Error(ErrorCode::DifferentPolynomials, "factorizations expand to different polynomials (relative difference " +
                                                     std::to_string(d) + ")");
}

bool same_norm_sequence(const Factorization& f1, const Factorization& f2, Var v, const Tolerance& tol) {
  require_same_polynomial(f1, f2);
  std::vector<RealUniPoly> n1, n2;
  for (const auto& x : f1.factors)
    if (x.var == v) n1.push_back(x.norm());
  for (const auto& x : f2.factors)
    if (x.var == v) n2.push_back(x.norm());
  if (n1.size() != n2.size()) return false;
  const double match = 1e3 * tol.eps;
  for (std::size_t i = 0; i < n1.size(); ++i)
    if (!approx_equal(n1[i], n2[i], match)) return false;
  return true;
}

using State = std::vector<LinearFactor>;

std::vector<long long> state_key(const State& st, double res) {
  std::vector<long long> key;
  key.reserve(st.size() * 5);
  for (const auto& x : st) {
    key.push_back(x.var == Var::t ? 0 : 1);
    for (int c = 0; c < 4; ++c) key.push_back(std::llround(x.h[c] / res));
  }
  return key;
}

bool states_match(const State& a, const State& b, double eps) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].var != b[i].var || !approx_equal(a[i].h, b[i].h, eps)) return false;
  return true;
}

bool factors_commute(const LinearFactor& a, const LinearFactor& b, double eps) {
  // (u - h1)(v - h2) - (v - h2)(u - h1) = h1 h2 - h2 h1 in both cases.
  const Quaternion c = a.h * b.h - b.h * a.h;
  return c.max_abs() <= eps * std::max(1.0, a.h.max_abs() * b.h.max_abs());
}

}  // namespace

bool t_equivalent(const Factorization& f1, const Factorization& f2, const Tolerance& tol) {
  return same_norm_sequence(f1, f2, Var::s, tol);
}

bool s_equivalent(const Factorization& f1, const Factorization& f2, const Tolerance& tol) {
  return same_norm_sequence(f1, f2, Var::t, tol);
}

bool equivalent(const Factorization& f1, const Factorization& f2, const Tolerance& tol, const EquivalenceOptions& opts) {
  require_same_polynomial(f1, f2);
  if (f1.factors.size() != f2.factors.size()) return false;
  constexpr double kMatch = 1e-6;
  const State& target = f2.factors;
  if (states_match(f1.factors, target, kMatch)) return true;

  std::set<std::vector<long long>> seen;
  std::deque<State> frontier;
  seen.insert(state_key(f1.factors, opts.hash_resolution));
  frontier.push_back(f1.factors);
  const double commute_eps = std::max(tol.eps, 1e-9) * 1e3;

  while (!frontier.empty()) {
    const State cur = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t l = 0; l + 1 < cur.size(); ++l) {
      const LinearFactor& a = cur[l];
      const LinearFactor& b = cur[l + 1];
      std::vector<State> next;
      if (factors_commute(a, b, commute_eps)) {
        State n = cur;
        std::swap(n[l], n[l + 1]);
        next.push_back(std::move(n));
      }
      if (a.var == b.var) {
        try {
          const FlipResult fr = bennett_flip(a.h, b.h, tol);
          State n = cur;
          n[l].h = fr.k1;
          n[l + 1].h = fr.k2;
          next.push_back(std::move(n));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ConjugatePair) throw;
        }
      }
      for (auto& n : next) {
        if (!seen.insert(state_key(n, opts.hash_resolution)).second) continue;
        if (states_match(n, target, kMatch)) return true;
        if (seen.size() > opts.max_states)
          throw Error(ErrorCode::StateBudgetExceeded,
                      "equivalence search visited more than " + std::to_string(opts.max_states) + " states");
        frontier.push_back(std::move(n));
      }
    }
  }
  return false;
}

namespace {

// Distinct permutations of a tuple that may contain repeated quadratics.
std::vector<std::vector<std::size_t>> distinct_permutations(const QuadraticFactorTuple& tuple, double eps) {
  const std::size_t n = tuple.size();
  std::vector<int> cls(n);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    int found = -1;
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (approx_equal(tuple.factors[i], tuple.factors[reps[r]], eps)) found = static_cast<int>(r);
    if (found < 0) {
      found = static_cast<int>(reps.size());
      reps.push_back(i);
    }
    cls[i] = found;
  }
  std::vector<int> seq = cls;
  std::sort(seq.begin(), seq.end());
  std::vector<std::vector<std::size_t>> out;
  do {
    std::vector<bool> used(n, false);
    std::vector<std::size_t> order;
    for (int c : seq)
      for (std::size_t i = 0; i < n; ++i)
        if (!used[i] && cls[i] == c) {
          used[i] = true;
          order.push_back(i);
          break;
        }
    out.push_back(std::move(order));
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

}  // namespace

EnumerationReport enumerate(const QuatBiPoly& q, Role role, const Tolerance& tol, const EquivalenceOptions& opts,
                            unsigned threads) {
  EnumerationReport report;
  const QuatBiPoly monic = QuatBiPoly(q.leading_coefficient().inverse(0.0)) * q;
  require_nfc(monic, tol);
  report.s_tuple = norm_part_quadratics(monic, Var::s, tol);
  report.t_tuple = norm_part_quadratics(monic, Var::t, tol);

  struct Job {
    Var role;
    std::vector<std::size_t> order;
  };
  std::vector<Job> jobs;
  if (role == Role::s || role == Role::both)
    for (auto& o : distinct_permutations(report.s_tuple, tol.eps)) jobs.push_back({Var::s, std::move(o)});
  if (role == Role::t || role == Role::both)
    for (auto& o : distinct_permutations(report.t_tuple, tol.eps)) jobs.push_back({Var::t, std::move(o)});

  report.entries.resize(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < jobs.size(); idx = next++) {
      try {
        const Job& job = jobs[idx];
        EnumerationEntry e;
        e.role = job.role;
        e.order = job.order;
        e.factorization = job.role == Var::s ? algorithm2(q, report.s_tuple.permuted(job.order), tol)
                                             : algorithm2_t(q, report.t_tuple.permuted(job.order), tol);
        e.residual = verify(q, e.factorization);
        e.k_is_one = e.factorization.k_is_one(1e-8);
        report.entries[idx] = std::move(e);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  };
  unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    auto& e = report.entries[i];
    if (!e.k_is_one) continue;
    ++report.k_one_count;
    for (std::size_t r = 0; r < reps.size() && e.equivalence_class < 0; ++r) {
      try {
        if (equivalent(report.entries[reps[r]].factorization, e.factorization, tol, opts))
          e.equivalence_class = report.entries[reps[r]].equivalence_class;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::StateBudgetExceeded) throw;
        ++report.undecided;
      }
    }
    if (e.equivalence_class < 0) {
      e.equivalence_class = report.class_count++;
      reps.push_back(i);
    }
  }
  return report;
}

}  // namespace quatfact

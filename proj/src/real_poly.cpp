#include "quatfact/real_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace quatfact {

namespace {

using cplx = std::complex<double>;

void drop_exact_zeros(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

Var common_var(const RealUniPoly& a, const RealUniPoly& b) {
  if (a.degree() <= 0) return b.var();
  if (b.degree() <= 0) return a.var();
  if (a.var() != b.var()) throw Error(ErrorCode::InvalidArgument, "mixing polynomials in t and s");
  return a.var();
}

}  // namespace

RealUniPoly::RealUniPoly(Var var, std::vector<double> coeffs) : var_(var), coeffs_(std::move(coeffs)) {
  drop_exact_zeros(coeffs_);
}

double RealUniPoly::max_abs() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

RealUniPoly RealUniPoly::monic() const {
  if (is_zero()) throw Error(ErrorCode::ZeroDivisor, "zero polynomial has no monic form");
  std::vector<double> c = coeffs_;
  const double lc = c.back();
  for (double& x : c) x /= lc;
  c.back() = 1.0;
  return RealUniPoly(var_, std::move(c));
}

RealUniPoly RealUniPoly::trimmed(double rel) const {
  std::vector<double> c = coeffs_;
  const double cut = rel * max_abs();
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return RealUniPoly(var_, std::move(c));
}

double RealUniPoly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx RealUniPoly::operator()(cplx z) const noexcept {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

RealUniPoly RealUniPoly::derivative() const {
  if (coeffs_.size() <= 1) return RealUniPoly(var_);
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t n = 1; n < coeffs_.size(); ++n) d[n - 1] = static_cast<double>(n) * coeffs_[n];
  return RealUniPoly(var_, std::move(d));
}

RealUniPoly operator+(const RealUniPoly& a, const RealUniPoly& b) {
  const Var v = common_var(a, b);
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = a[n] + b[n];
  return RealUniPoly(v, std::move(c));
}

RealUniPoly operator-(const RealUniPoly& a, const RealUniPoly& b) { return a + (-1.0) * b; }

RealUniPoly operator*(const RealUniPoly& a, const RealUniPoly& b) {
  const Var v = common_var(a, b);
  if (a.is_zero() || b.is_zero()) return RealUniPoly(v);
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t m = 0; m < a.coeffs_.size(); ++m)
    for (std::size_t n = 0; n < b.coeffs_.size(); ++n) c[m + n] += a.coeffs_[m] * b.coeffs_[n];
  return RealUniPoly(v, std::move(c));
}

RealUniPoly operator*(double k, const RealUniPoly& a) {
  std::vector<double> c = a.coeffs_;
  for (double& x : c) x *= k;
  return RealUniPoly(a.var_, std::move(c));
}

std::string RealUniPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (int n = degree(); n >= 0; --n) {
    const double c = coeffs_[static_cast<std::size_t>(n)];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    if (n == 0 || mag != 1.0) os << mag;
    if (n >= 1) os << var_name(var_);
    if (n >= 2) os << '^' << n;
    first = false;
  }
  return os.str();
}

bool approx_equal(const RealUniPoly& a, const RealUniPoly& b, double eps) {
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(a[i] - b[i]) > eps * scale) return false;
  return true;
}

double RealBiPoly::max_abs() const noexcept {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

double RealBiPoly::operator()(double t, double s) const noexcept {
  double acc = 0.0;
  for (int i = rows_ - 1; i >= 0; --i) {
    double row = 0.0;
    for (int j = cols_ - 1; j >= 0; --j) row = row * s + at(i, j);
    acc = acc * t + row;
  }
  return acc;
}

RealBiPoly RealBiPoly::outer(const RealUniPoly& p, const RealUniPoly& r) {
  RealBiPoly out(std::max(p.degree() + 1, 1), std::max(r.degree() + 1, 1));
  for (int i = 0; i <= p.degree(); ++i)
    for (int j = 0; j <= r.degree(); ++j) out.set(i, j, p[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)]);
  return out;
}

RealBiPoly RealBiPoly::from_uni(const RealUniPoly& p) {
  return p.var() == Var::t ? outer(p, RealUniPoly::one(Var::s)) : outer(RealUniPoly::one(Var::t), p.with_var(Var::s));
}

RealBiPoly operator*(const RealBiPoly& a, const RealBiPoly& b) {
  if (a.rows_ == 0 || b.rows_ == 0) return {};
  RealBiPoly out(a.rows_ + b.rows_ - 1, a.cols_ + b.cols_ - 1);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) {
      const double x = a.at(i, j);
      if (x == 0.0) continue;
      for (int k = 0; k < b.rows_; ++k)
        for (int l = 0; l < b.cols_; ++l) out.c_[static_cast<std::size_t>((i + k) * out.cols_ + j + l)] += x * b.at(k, l);
    }
  return out;
}

bool approx_equal(const RealBiPoly& a, const RealBiPoly& b, double eps) {
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  const int rows = std::max(a.rows(), b.rows());
  const int cols = std::max(a.cols(), b.cols());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (std::abs(a.at(i, j) - b.at(i, j)) > eps * scale) return false;
  return true;
}

RealUniPoly QuadraticFactorTuple::product() const {
  RealUniPoly p = RealUniPoly::constant(leading, var);
  for (const auto& f : factors) p = p * f;
  return p;
}

QuadraticFactorTuple QuadraticFactorTuple::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != factors.size())
    throw Error(ErrorCode::InvalidArgument, "order length does not match the factor tuple");
  std::vector<bool> seen(order.size(), false);
  QuadraticFactorTuple out{var, leading, {}};
  for (std::size_t idx : order) {
    if (idx >= factors.size() || seen[idx]) throw Error(ErrorCode::InvalidArgument, "order is not a permutation");
    seen[idx] = true;
    out.factors.push_back(factors[idx]);
  }
  return out;
}

std::vector<cplx> rp_roots(const RealUniPoly& p, const Tolerance& tol) {
  if (p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "root finding needs degree >= 1");

  std::vector<cplx> roots;
  std::vector<double> c = p.coeffs();
  // exact zero roots
  std::size_t lead_zeros = 0;
  while (lead_zeros < c.size() && c[lead_zeros] == 0.0) ++lead_zeros;
  roots.assign(lead_zeros, cplx(0.0, 0.0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return roots;

  const double lc = c.back();
  for (double& x : c) x /= lc;

  if (n == 1) {
    roots.emplace_back(-c[0], 0.0);
    return roots;
  }

  // Starting points on a circle whose radius is the geometric mean of the
  // root moduli, rotated off the real axis so conjugate pairs separate.
  const double radius = std::pow(std::abs(c[0]), 1.0 / n);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius > 0 ? radius : 1.0, 2.0 * std::numbers::pi * k / n + 0.4);

  const RealUniPoly mp(Var::t, c);
  const RealUniPoly dp = mp.derivative();
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  constexpr int kMaxIterations = 2000;
  for (int it = 0; it < kMaxIterations; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      const cplx pv = mp(z[k]);
      const cplx dv = dp(z[k]);
      if (pv == cplx(0.0, 0.0)) {
        done[k] = true;
        continue;
      }
      const cplx ratio = pv / dv;
      cplx sum = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const cplx step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag()))
        throw Error(ErrorCode::DidNotConverge, "root iteration diverged");
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z[k])))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }

  const double pnorm = mp.max_abs();
  for (const cplx& r : z) {
    const double scale = std::pow(std::max(1.0, std::abs(r)), n);
    if (std::abs(mp(r)) > tol.eps * pnorm * scale)
      throw Error(ErrorCode::DidNotConverge, "root backward error above tolerance");
    roots.push_back(r);
  }
  return roots;
}

namespace {

struct Cluster {
  cplx centre;
  int multiplicity;
};

// Coefficients of prod (x - r) over the given roots, constant term first.
std::vector<cplx> local_factor(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] = -r * c[0];
  }
  return c;
}

// A cluster is one k-fold root if either
// - the product of its members matches (x - mean)^k to tol.eps (the
//   symmetric functions of a converged spread stay accurate), or
// - its spread is within what rounding alone produces: a k-fold root under
//   relative noise u spreads to about (u E / |p^(k)(c) / k!|)^(1/k) with
//   E = sum |a_i| |c|^i. This catches high multiplicities where the
//   iteration stops before the spread is symmetric.
// Close simple roots at distance d fail both.
bool is_multiple_root(const std::vector<cplx>& members, const RealUniPoly& p, const Tolerance& tol) {
  constexpr double kNoise = 1e-15;
  constexpr double kSlack = 10.0;
  const std::size_t k = members.size();
  cplx c = 0.0;
  for (const cplx& r : members) c += r;
  c /= static_cast<double>(k);
  const double scale = std::max(1.0, std::abs(c));

  const auto spread_poly = local_factor(members);
  const auto ideal = local_factor(std::vector<cplx>(k, c));
  bool symmetric = true;
  for (std::size_t j = 0; j < k; ++j)
    if (std::abs(spread_poly[j] - ideal[j]) > tol.eps * std::pow(scale, static_cast<double>(k - j))) symmetric = false;
  if (symmetric) return true;

  double spread = 0.0;
  for (const cplx& r : members) spread = std::max(spread, std::abs(r - c));
  double e = 0.0, power = 1.0;
  for (const double a : p.coeffs()) {
    e += std::abs(a) * power;
    power *= std::abs(c);
  }
  RealUniPoly d = p;
  double fact = 1.0;
  for (std::size_t m = 1; m <= k; ++m) {
    d = d.derivative();
    fact *= static_cast<double>(m);
  }
  const double taylor = std::abs(d(c)) / fact;
  if (taylor == 0.0) return true;
  return spread <= kSlack * std::pow(kNoise * e / taylor, 1.0 / static_cast<double>(k));
}

// Single-linkage clustering; a k-fold root comes back from the iteration
// as k points spread by roughly eps_mach^(1/k), which this radius absorbs.
// Clusters that do not look like one multiple root fall apart again.
std::vector<Cluster> cluster_roots(const std::vector<cplx>& roots, const RealUniPoly& p, const Tolerance& tol) {
  constexpr double kClusterRadius = 1e-2;
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(roots[a] - roots[b]) <= kClusterRadius * std::max(1.0, std::abs(roots[a]))) parent[find(a)] = find(b);

  std::vector<std::vector<cplx>> groups;
  std::vector<int> slot(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t r = find(a);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(roots[a]);
  }
  std::vector<Cluster> out;
  for (const auto& g : groups) {
    if (g.size() > 1 && !is_multiple_root(g, p, tol)) {
      for (const cplx& r : g) out.push_back({r, 1});
      continue;
    }
    Cluster c{0.0, static_cast<int>(g.size())};
    for (const cplx& r : g) c.centre += r;
    out.push_back(c);
  }
  for (auto& c : out) {
    c.centre /= static_cast<double>(c.multiplicity);
    if (c.multiplicity == 1) continue;
    // A k-fold root is a simple root of the (k-1)-th derivative.
    RealUniPoly d = p;
    for (int m = 1; m < c.multiplicity; ++m) d = d.derivative();
    const RealUniPoly dd = d.derivative();
    cplx z = c.centre;
    for (int it = 0; it < 8; ++it) {
      const cplx dv = dd(z);
      if (dv == cplx(0.0, 0.0)) break;
      const cplx next = z - d(z) / dv;
      if (std::abs(d(next)) >= std::abs(d(z))) break;
      z = next;
    }
    c.centre = z;
  }
  return out;
}

}  // namespace

QuadraticFactorTuple rp_quadratic_factors(const RealUniPoly& p, const Tolerance& tol) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial");
  QuadraticFactorTuple out{p.var(), p.leading(), {}};
  if (p.degree() == 0) return out;
  if (p.degree() % 2 != 0) throw Error(ErrorCode::OddRealRoot, "odd degree polynomial has a real root of odd multiplicity");

  constexpr double kPairing = 1e-7;
  const auto clusters = cluster_roots(rp_roots(p, tol), p, tol);
  std::vector<Cluster> upper;
  int lower_count = 0;
  for (const auto& c : clusters) {
    const double scale = std::max(1.0, std::abs(c.centre));
    if (std::abs(c.centre.imag()) <= kPairing * scale) {
      if (c.multiplicity % 2 != 0)
        throw Error(ErrorCode::OddRealRoot, "real root " + std::to_string(c.centre.real()) + " has odd multiplicity");
      const double r = c.centre.real();
      for (int m = 0; m < c.multiplicity / 2; ++m) out.factors.emplace_back(p.var(), std::vector<double>{r * r, -2.0 * r, 1.0});
    } else if (c.centre.imag() > 0) {
      upper.push_back(c);
    } else {
      lower_count += c.multiplicity;
    }
  }
  int upper_count = 0;
  for (const auto& c : upper) {
    upper_count += c.multiplicity;
    const double scale = std::max(1.0, std::abs(c.centre));
    const double re = std::abs(c.centre.real()) <= kPairing * scale ? 0.0 : c.centre.real();
    const double n2 = std::norm(c.centre);
    for (int m = 0; m < c.multiplicity; ++m) out.factors.emplace_back(p.var(), std::vector<double>{n2, -2.0 * re, 1.0});
  }
  if (upper_count != lower_count) throw Error(ErrorCode::DidNotConverge, "complex roots do not pair into conjugates");

  // Coefficients closer than the pairing threshold count as equal so that
  // rounding noise cannot reorder the tuple.
  const auto near = [&](double x, double y) { return std::abs(x - y) <= kPairing * std::max({1.0, std::abs(x), std::abs(y)}); };
  std::stable_sort(out.factors.begin(), out.factors.end(), [&](const RealUniPoly& a, const RealUniPoly& b) {
    if (!near(a[1], b[1])) return a[1] < b[1];
    return !near(a[0], b[0]) && a[0] < b[0];
  });
  return out;
}

std::pair<RealUniPoly, RealUniPoly> rp_divrem(const RealUniPoly& p, const RealUniPoly& d, const Tolerance& tol) {
  if (d.is_zero() || std::abs(d.leading() - 1.0) > tol.eps)
    throw Error(ErrorCode::NonMonicDivisor, "divisor " + d.to_string() + " is not monic");
  const Var v = p.degree() > 0 ? p.var() : d.var();
  const int dd = d.degree();
  if (p.degree() < dd) return {RealUniPoly(v), RealUniPoly(v, p.coeffs())};
  std::vector<double> r = p.coeffs();
  std::vector<double> q(static_cast<std::size_t>(p.degree() - dd + 1), 0.0);
  for (int k = p.degree(); k >= dd; --k) {
    const double c = r[static_cast<std::size_t>(k)];
    q[static_cast<std::size_t>(k - dd)] = c;
    for (int m = 0; m <= dd; ++m) r[static_cast<std::size_t>(k - dd + m)] -= c * d[static_cast<std::size_t>(m)];
  }
  r.resize(static_cast<std::size_t>(dd));
  return {RealUniPoly(v, std::move(q)), RealUniPoly(v, std::move(r))};
}

NfcResult nfc_rank1(const RealBiPoly& n, const Tolerance& tol) {
  NfcResult res;
  const double scale = n.max_abs();
  if (scale == 0.0) throw Error(ErrorCode::InvalidArgument, "norm polynomial is zero");

  // Every 2x2 minor, relative to max|n|^2.
  for (int i = 0; i < n.rows(); ++i)
    for (int k = i + 1; k < n.rows(); ++k)
      for (int j = 0; j < n.cols(); ++j)
        for (int l = j + 1; l < n.cols(); ++l) {
          const double minor = std::abs(n.at(i, j) * n.at(k, l) - n.at(i, l) * n.at(k, j)) / (scale * scale);
          if (minor > res.worst_minor) {
            res.worst_minor = minor;
            res.minor_rows[0] = i;
            res.minor_rows[1] = k;
            res.minor_cols[0] = j;
            res.minor_cols[1] = l;
          }
        }
  if (res.worst_minor > tol.eps) return res;

  // Pivot on the largest entry: n(i,j) = n(i,j0) * n(i0,j) / n(i0,j0).
  int pi = 0, pj = 0;
  for (int i = 0; i < n.rows(); ++i)
    for (int j = 0; j < n.cols(); ++j)
      if (std::abs(n.at(i, j)) > std::abs(n.at(pi, pj))) {
        pi = i;
        pj = j;
      }
  std::vector<double> pc(static_cast<std::size_t>(n.rows())), rc(static_cast<std::size_t>(n.cols()));
  for (int i = 0; i < n.rows(); ++i) pc[static_cast<std::size_t>(i)] = n.at(i, pj);
  for (int j = 0; j < n.cols(); ++j) rc[static_cast<std::size_t>(j)] = n.at(pi, j) / n.at(pi, pj);
  // Leading entries of a norm are norms of leading coefficients: genuine even
  // when far below tol.eps relative to the peak, so only rounding-level
  // values are trimmed.
  constexpr double kTrim = 64.0 * std::numeric_limits<double>::epsilon();
  RealUniPoly P = RealUniPoly(Var::t, pc).trimmed(kTrim);
  RealUniPoly R = RealUniPoly(Var::s, rc).trimmed(kTrim);
  const double lr = R.leading();
  res.R = R.monic();
  res.P = lr * P;
  res.satisfied = true;
  return res;
}

std::pair<RealUniPoly, RealUniPoly> nfc_decompose(const RealBiPoly& n, const Tolerance& tol) {
  NfcResult r = nfc_rank1(n, tol);
  if (!r.satisfied) {
    std::ostringstream os;
    os << "norm polynomial is not of the form P(t)R(s): 2x2 minor at rows (" << r.minor_rows[0] << ',' << r.minor_rows[1]
       << "), cols (" << r.minor_cols[0] << ',' << r.minor_cols[1] << ") has relative magnitude " << r.worst_minor;
    throw Error(ErrorCode::NotRankOne, os.str());
  }
  return {r.P, r.R};
}

}  // namespace quatfact

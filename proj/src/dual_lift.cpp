#include "quatfact/dual_lift.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>

namespace quatfact {

namespace {

const Quaternion kBasis[4] = {Quaternion(1.0), Quaternion::i(), Quaternion::j(), Quaternion::k()};
const char* const kComp = "1ijk";

std::vector<QuatBiPoly> factor_polys(const Factorization& f) {
  std::vector<QuatBiPoly> out;
  for (const auto& x : f.factors) out.push_back(x.poly());
  return out;
}

// Column block contributions of one factorization: for factor l and basis
// element e, unit * G_1...G_{l-1} e G_{l+1}...G_n.
void add_side(const Factorization& f, char side, double sign, std::size_t col0,
              std::map<std::pair<Monomial, int>, std::vector<double>>& coef_rows, std::size_t ncols,
              std::vector<LiftColumn>& layout) {
  const auto polys = factor_polys(f);
  const std::size_t n = polys.size();
  std::vector<QuatBiPoly> prefix(n + 1), suffix(n + 1);
  prefix[0] = QuatBiPoly(f.unit);
  for (std::size_t l = 0; l < n; ++l) prefix[l + 1] = prefix[l] * polys[l];
  suffix[n] = QuatBiPoly(1.0);
  for (std::size_t l = n; l-- > 0;) suffix[l] = polys[l] * suffix[l + 1];

  for (std::size_t l = 0; l < n; ++l) {
    layout.push_back({side, static_cast<int>(l)});
    for (int c = 0; c < 4; ++c) {
      const QuatBiPoly contrib = prefix[l] * QuatBiPoly(kBasis[c]) * suffix[l + 1];
      for (const auto& [m, q] : contrib.terms())
        for (int r = 0; r < 4; ++r) {
          auto& row = coef_rows[{m, r}];
          if (row.empty()) row.assign(ncols, 0.0);
          row[col0 + 4 * l + static_cast<std::size_t>(c)] += sign * q[r];
        }
    }
  }
}

std::string greek(std::size_t i) {
  static const char* names[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"};
  return i < 8 ? names[i] : "p" + std::to_string(i + 1);
}

}  // namespace

LiftSystem build_lift_system(const Factorization& f1, const Factorization& f2, const Tolerance& tol) {
  const double diff = relative_difference(f1.product(), f2.product());
  if (!(diff <= 1e-8) || !approx_equal(f1.K, f2.K, 1e-8))
    throw Error(ErrorCode::MismatchedPolynomials,
                "factorizations expand to different polynomials (relative difference " + std::to_string(diff) + ")");

  LiftSystem sys;
  const std::size_t ncols = 4 * (f1.factors.size() + f2.factors.size());

  const auto study_rows = [&](const Factorization& f, char side, std::size_t col0) {
    for (std::size_t l = 0; l < f.factors.size(); ++l) {
      const Quaternion p = -f.factors[l].h;
      const std::size_t c = col0 + 4 * l;
      // p conj(d) + d conj(p) = 2 <p, d>
      std::vector<double> row(ncols, 0.0);
      for (int r = 0; r < 4; ++r) row[c + static_cast<std::size_t>(r)] = p[r];
      sys.rows.push_back(std::move(row));
      sys.row_tags.push_back(std::string("study ") + side + std::to_string(l + 1));
      // d + conj(d) = 2 Re(d)
      std::vector<double> re(ncols, 0.0);
      re[c] = 1.0;
      sys.rows.push_back(std::move(re));
      sys.row_tags.push_back(std::string("real ") + side + std::to_string(l + 1));
    }
  };
  study_rows(f1, 'G', 0);
  study_rows(f2, 'H', 4 * f1.factors.size());

  std::map<std::pair<Monomial, int>, std::vector<double>> coef_rows;
  add_side(f1, 'G', 1.0, 0, coef_rows, ncols, sys.layout);
  add_side(f2, 'H', -1.0, 4 * f1.factors.size(), coef_rows, ncols, sys.layout);

  double scale = 0.0;
  for (const auto& [key, row] : coef_rows)
    for (double v : row) scale = std::max(scale, std::abs(v));
  for (auto& [key, row] : coef_rows) {
    const double m = *std::max_element(row.begin(), row.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    if (std::abs(m) <= tol.eps * scale) continue;
    sys.rows.push_back(row);
    sys.row_tags.push_back("coeff t^" + std::to_string(key.first.t) + " s^" + std::to_string(key.first.s) + " [" +
                           kComp[key.second] + "]");
  }
  return sys;
}

LiftSolution solve_lift(const LiftSystem& sys, double rank_tol) {
  LiftSolution out;
  out.layout = sys.layout;
  const Eigen::Index cols = static_cast<Eigen::Index>(
      sys.layout.empty() ? (sys.rows.empty() ? 0 : sys.rows.front().size()) : sys.unknowns());
  if (cols == 0) return out;
  // Pad with zero rows so the SVD sees at least as many rows as columns.
  const Eigen::Index rows = std::max<Eigen::Index>(static_cast<Eigen::Index>(sys.rows.size()), cols);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  for (std::size_t r = 0; r < sys.rows.size(); ++r)
    for (Eigen::Index c = 0; c < cols; ++c) A(static_cast<Eigen::Index>(r), c) = sys.rows[r][static_cast<std::size_t>(c)];

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * smax) ++rank;
  const auto& V = svd.matrixV();
  for (Eigen::Index c = rank; c < cols; ++c) {
    std::vector<double> v(static_cast<std::size_t>(cols));
    for (Eigen::Index r = 0; r < cols; ++r) v[static_cast<std::size_t>(r)] = V(r, c);
    out.basis.push_back(std::move(v));
    out.parameters.push_back(greek(out.basis.size() - 1));
  }
  out.dimension = out.basis.size();
  return out;
}

std::vector<Quaternion> unpack_lift_point(const std::vector<double>& x) {
  if (x.size() % 4 != 0) throw Error(ErrorCode::InvalidArgument, "lift point length is not a multiple of 4");
  std::vector<Quaternion> out;
  for (std::size_t i = 0; i < x.size(); i += 4) out.emplace_back(x[i], x[i + 1], x[i + 2], x[i + 3]);
  return out;
}

double verify_lift(const Factorization& f1, const Factorization& f2, const std::vector<double>& x) {
  const std::size_t n1 = f1.factors.size(), n2 = f2.factors.size();
  if (x.size() != 4 * (n1 + n2)) throw Error(ErrorCode::InvalidArgument, "lift point has the wrong length");
  const auto d = unpack_lift_point(x);

  // Dual polynomial (P, D) multiplied by (P', D') gives (P P', P D' + D P').
  const auto product = [&](const Factorization& f, std::size_t off) {
    QuatBiPoly P(f.unit), D;
    for (std::size_t l = 0; l < f.factors.size(); ++l) {
      const QuatBiPoly Pl = f.factors[l].poly();
      const QuatBiPoly Dl(d[off + l]);
      D = P * Dl + D * Pl;
      P = P * Pl;
    }
    return D;
  };
  const QuatBiPoly D1 = product(f1, 0), D2 = product(f2, n1);
  double worst = (D1 - D2).max_abs() / std::max({1.0, D1.max_abs(), D2.max_abs()});

  const auto study = [&](const Factorization& f, std::size_t off) {
    for (std::size_t l = 0; l < f.factors.size(); ++l) {
      const Quaternion p = -f.factors[l].h;
      const Quaternion& dl = d[off + l];
      const double scale = std::max(1.0, p.abs() * dl.abs());
      worst = std::max(worst, std::abs((p * dl.conj() + dl * p.conj()).real()) / scale);
      worst = std::max(worst, std::abs(2.0 * dl.real()) / std::max(1.0, dl.abs()));
    }
  };
  study(f1, 0);
  study(f2, n1);
  return worst;
}

}  // namespace quatfact

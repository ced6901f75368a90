#include "quatfact/quaternion.hpp"

#include <algorithm>
#include <ostream>

namespace quatfact {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::DidNotConverge: return "DidNotConverge";
    case ErrorCode::OddRealRoot: return "OddRealRoot";
    case ErrorCode::NonMonicDivisor: return "NonMonicDivisor";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::NonRealResidue: return "NonRealResidue";
    case ErrorCode::DivisibleByM: return "DivisibleByM";
    case ErrorCode::ZeroRemainder: return "ZeroRemainder";
    case ErrorCode::ConjugatePair: return "ConjugatePair";
    case ErrorCode::NFCViolated: return "NFCViolated";
    case ErrorCode::DegenerateRemainder: return "DegenerateRemainder";
    case ErrorCode::DifferentPolynomials: return "DifferentPolynomials";
    case ErrorCode::StateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorCode::MismatchedPolynomials: return "MismatchedPolynomials";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
  }
  return "Unknown";
}

double Quaternion::max_abs() const noexcept {
  return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2]), std::abs(c_[3])});
}

Quaternion Quaternion::inverse(double eps) const {
  const double n = norm();
  if (!(n > eps)) throw Error(ErrorCode::ZeroDivisor, "quaternion norm below tolerance");
  return conj() / n;
}

bool approx_equal(const Quaternion& a, const Quaternion& b, double eps) noexcept {
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  return (a - b).max_abs() <= eps * scale;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w() << ", " << q.x() << ", " << q.y() << ", " << q.z() << ']';
}

}  // namespace quatfact

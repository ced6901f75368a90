#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

#include "quatfact/error.hpp"

namespace quatfact {

/// Real quaternion w + x i + y j + z k with i^2 = j^2 = k^2 = ijk = -1.
///
/// Values are immutable: arithmetic returns new quaternions and there is no
/// compound-assignment API.
class Quaternion {
 public:
  constexpr Quaternion() noexcept = default;
  constexpr Quaternion(double w) noexcept : c_{w, 0.0, 0.0, 0.0} {}
  constexpr Quaternion(double w, double x, double y, double z) noexcept
      : c_{w, x, y, z} {}

  static constexpr Quaternion i() noexcept { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() noexcept { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() noexcept { return {0, 0, 0, 1}; }

  constexpr double w() const noexcept { return c_[0]; }
  constexpr double x() const noexcept { return c_[1]; }
  constexpr double y() const noexcept { return c_[2]; }
  constexpr double z() const noexcept { return c_[3]; }
  constexpr double operator[](int n) const noexcept { return c_[n]; }
  constexpr const std::array<double, 4>& components() const noexcept { return c_; }

  constexpr double real() const noexcept { return c_[0]; }

  /// Sum of squares of the coefficients (no square root).
  constexpr double norm() const noexcept {
    return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3];
  }
  double abs() const noexcept { return std::sqrt(norm()); }
  /// Largest coefficient magnitude, used for all tolerance tests.
  double max_abs() const noexcept;

  constexpr Quaternion conj() const noexcept { return {c_[0], -c_[1], -c_[2], -c_[3]}; }

  /// conj(h) / norm(h). Throws ZeroDivisor when norm(h) <= eps.
  Quaternion inverse(double eps = 1e-9) const;

  bool is_zero() const noexcept { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) noexcept {
    return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) noexcept {
    return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]};
  }
  friend constexpr Quaternion operator-(const Quaternion& a) noexcept {
    return {-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) noexcept {
    const auto& p = a.c_;
    const auto& q = b.c_;
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) noexcept {
    return {s * a.c_[0], s * a.c_[1], s * a.c_[2], s * a.c_[3]};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, double s) noexcept { return s * a; }
  friend constexpr Quaternion operator/(const Quaternion& a, double s) noexcept {
    return {a.c_[0] / s, a.c_[1] / s, a.c_[2] / s, a.c_[3] / s};
  }
  friend constexpr bool operator==(const Quaternion&, const Quaternion&) noexcept = default;

 private:
  std::array<double, 4> c_{0.0, 0.0, 0.0, 0.0};
};

constexpr Quaternion quat_mul(const Quaternion& a, const Quaternion& b) noexcept { return a * b; }
inline Quaternion quat_inv(const Quaternion& h, double eps = 1e-9) { return h.inverse(eps); }

/// Max-coefficient distance compared against eps * max(1, |a|, |b|).
bool approx_equal(const Quaternion& a, const Quaternion& b, double eps = 1e-9) noexcept;

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// p + eps d with eps^2 = 0.
class DualQuaternion {
 public:
  constexpr DualQuaternion() noexcept = default;
  constexpr DualQuaternion(const Quaternion& primal, const Quaternion& dual) noexcept
      : primal_(primal), dual_(dual) {}

  constexpr const Quaternion& primal() const noexcept { return primal_; }
  constexpr const Quaternion& dual() const noexcept { return dual_; }

  constexpr DualQuaternion conj() const noexcept { return {primal_.conj(), dual_.conj()}; }

  friend constexpr DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) noexcept {
    return {a.primal_ + b.primal_, a.dual_ + b.dual_};
  }
  friend constexpr DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) noexcept {
    return {a.primal_ * b.primal_, a.primal_ * b.dual_ + a.dual_ * b.primal_};
  }
  friend constexpr bool operator==(const DualQuaternion&, const DualQuaternion&) noexcept = default;

 private:
  Quaternion primal_;
  Quaternion dual_;
};

constexpr DualQuaternion dual_mul(const DualQuaternion& a, const DualQuaternion& b) noexcept { return a * b; }

}  // namespace quatfact

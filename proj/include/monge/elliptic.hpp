#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "monge/errors.hpp"
#include "monge/quadrature.hpp"

namespace monge {

/// Elliptic-integral amplitude in radians, restricted to [0, π/2].
class Amplitude {
 public:
  explicit Amplitude(double radians) : value_(radians) {
    if (!(radians >= 0.0 && radians <= std::numbers::pi / 2)) {
      throw DomainError("amplitude " + std::to_string(radians) + " outside [0, pi/2]");
    }
  }
  double value() const { return value_; }

 private:
  double value_;
};

/// Elliptic modulus k in [0, 1). Legendre convention: the integrands carry k², not k.
class Modulus {
 public:
  explicit Modulus(double k) : k_(k) {
    if (!(k >= 0.0 && k < 1.0)) {
      throw DomainError("modulus " + std::to_string(k) + " outside [0, 1)");
    }
  }
  double value() const { return k_; }

 private:
  double k_;
};

namespace detail {
// Duplication stops once the relative spread of the arguments is below this.
inline constexpr double kCarlsonSpread = 1e-13;
inline constexpr int kCarlsonMaxIterations = 100;

inline void check_carlson_arg(double v, const char* who) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(who) + ": arguments must be finite and non-negative, got " +
                      std::to_string(v));
  }
}
}  // namespace detail

/// Carlson's symmetric integral R_F(x,y,z) = ½∫₀^∞ dt / √((t+x)(t+y)(t+z)).
/// At most one argument may be zero.
inline double carlson_rf(double x, double y, double z) {
  detail::check_carlson_arg(x, "carlson_rf");
  detail::check_carlson_arg(y, "carlson_rf");
  detail::check_carlson_arg(z, "carlson_rf");
  if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
    throw DomainError("carlson_rf: at most one argument may be zero");
  }
  const double a0 = (x + y + z) / 3;
  const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
                   detail::kCarlsonSpread;
  double an = a0, xn = x, yn = y, zn = z, mul = 1;
  for (int i = 0; q >= mul * std::abs(an); ++i) {
    if (i == detail::kCarlsonMaxIterations) throw ConvergenceError("carlson_rf did not converge");
    const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
    const double lam = sx * sy + sy * sz + sz * sx;
    an = (an + lam) / 4;
    xn = (xn + lam) / 4;
    yn = (yn + lam) / 4;
    zn = (zn + lam) / 4;
    mul *= 4;
  }
  const double dx = (a0 - x) / (mul * an);
  const double dy = (a0 - y) / (mul * an);
  const double dz = -dx - dy;
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44) / std::sqrt(an);
}

/// Carlson's R_D(x,y,z) = (3/2)∫₀^∞ dt / (√((t+x)(t+y)) (t+z)^{3/2}).
/// Symmetric in x and y; z must be strictly positive.
inline double carlson_rd(double x, double y, double z) {
  detail::check_carlson_arg(x, "carlson_rd");
  detail::check_carlson_arg(y, "carlson_rd");
  detail::check_carlson_arg(z, "carlson_rd");
  if (z == 0.0) throw DomainError("carlson_rd: third argument must be positive");
  if (x == 0.0 && y == 0.0) throw DomainError("carlson_rd: x and y cannot both be zero");

  const double a0 = (x + y + 3 * z) / 5;
  const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
                   detail::kCarlsonSpread;
  double an = a0, xn = x, yn = y, zn = z, mul = 1, tail = 0;
  for (int i = 0; q >= mul * std::abs(an); ++i) {
    if (i == detail::kCarlsonMaxIterations) throw ConvergenceError("carlson_rd did not converge");
    const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
    const double lam = sx * sy + sy * sz + sz * sx;
    tail += 1 / (mul * sz * (zn + lam));
    an = (an + lam) / 4;
    xn = (xn + lam) / 4;
    yn = (yn + lam) / 4;
    zn = (zn + lam) / 4;
    mul *= 4;
  }
  const double dx = (a0 - x) / (mul * an);
  const double dy = (a0 - y) / (mul * an);
  const double dz = -(dx + dy) / 3;
  const double e2 = dx * dy - 6 * dz * dz;
  const double e3 = (3 * dx * dy - 8 * dz * dz) * dz;
  const double e4 = 3 * (dx * dy - dz * dz) * dz * dz;
  const double e5 = dx * dy * dz * dz * dz;
  return (1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22 - 9 * e2 * e3 / 52 +
          3 * e5 / 26) /
             (mul * an * std::sqrt(an)) +
         3 * tail;
}

namespace detail {
// A handful of roundings in the duplication loop; the truncated series is far below this.
inline double carlson_error_bound(double value) {
  return 64 * std::numeric_limits<double>::epsilon() * std::abs(value);
}
}  // namespace detail

/// Incomplete elliptic integral of the first kind, F(β,k) = ∫₀^β dθ/√(1−k²sin²θ).
inline EllipticValue ellip_f(Amplitude beta, Modulus k) {
  const double s = std::sin(beta.value());
  const double c = std::cos(beta.value());
  if (s == 0.0) return {0.0, 0.0};
  if (k.value() == 0.0) return {beta.value(), 0.0};  // integrand is identically 1
  const double kk = k.value() * k.value();
  const double v = s * carlson_rf(c * c, 1 - kk * s * s, 1);
  return {v, detail::carlson_error_bound(v)};
}

/// Incomplete elliptic integral of the second kind, E(β,k) = ∫₀^β √(1−k²sin²θ) dθ.
inline EllipticValue ellip_e(Amplitude beta, Modulus k) {
  const double s = std::sin(beta.value());
  const double c = std::cos(beta.value());
  if (s == 0.0) return {0.0, 0.0};
  if (k.value() == 0.0) return {beta.value(), 0.0};
  const double kk = k.value() * k.value();
  const double x = c * c, y = 1 - kk * s * s;
  const double rf = carlson_rf(x, y, 1);
  double v = s * rf;
  double err = detail::carlson_error_bound(v);
  if (kk != 0.0) {
    const double rd_term = kk / 3 * s * s * s * carlson_rd(x, y, 1);
    v -= rd_term;
    err += detail::carlson_error_bound(rd_term);
  }
  return {v, err};
}

inline EllipticValue ellip_f(double beta, double k) { return ellip_f(Amplitude(beta), Modulus(k)); }
inline EllipticValue ellip_e(double beta, double k) { return ellip_e(Amplitude(beta), Modulus(k)); }

}  // namespace monge

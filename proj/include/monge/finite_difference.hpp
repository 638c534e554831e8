#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "monge/errors.hpp"

namespace monge {

namespace detail {
inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
}  // namespace detail

/// Central-difference stencil offsets (in units of h) and weights.
struct Stencil {
  int order = 4;

  static void check_order(int order) {
    if (order != 2 && order != 4) {
      throw InvalidArgument("finite-difference order must be 2 or 4, got " + std::to_string(order));
    }
  }

  /// Number of points on each side of the centre.
  int reach() const { return order == 2 ? 1 : 2; }

  /// First derivative of f at offset 0, where f(k) evaluates the function at offset k·h.
  template <class F>
  auto apply(const F& f, double h) const {
    if (order == 2) return (f(1) - f(-1)) / (2 * h);
    return (8.0 * (f(1) - f(-1)) - (f(2) - f(-2))) / (12 * h);
  }
};

/// ∂f/∂x at (x,t) for f(x,t).
template <class F>
auto fd_dx(const F& f, double x, double t, double h, int order) {
  Stencil::check_order(order);
  return Stencil{order}.apply([&](int k) { return f(x + k * h, t); }, h);
}

/// ∂f/∂t at (x,t) for f(x,t).
template <class F>
auto fd_dt(const F& f, double x, double t, double h, int order) {
  Stencil::check_order(order);
  return Stencil{order}.apply([&](int k) { return f(x, t + k * h); }, h);
}

/// ∂/∂x of the finite-difference t-derivative.
template <class F>
auto fd_dx_of_dt(const F& f, double x, double t, double h, int order) {
  return fd_dx([&](double xx, double tt) { return fd_dt(f, xx, tt, h, order); }, x, t, h, order);
}

/// ∂/∂t of the finite-difference x-derivative.
template <class F>
auto fd_dt_of_dx(const F& f, double x, double t, double h, int order) {
  return fd_dt([&](double xx, double tt) { return fd_dx(f, xx, tt, h, order); }, x, t, h, order);
}

/// True when `valid(x + i·h, t + j·h)` holds for every |i|,|j| ≤ reach.
/// Pass `full_square = false` to check only the two axis-aligned arms.
template <class P>
bool stencil_valid(const P& valid, double x, double t, double h, int order, bool full_square = false) {
  const int reach = order == 2 ? 1 : 2;
  for (int i = -reach; i <= reach; ++i) {
    for (int j = -reach; j <= reach; ++j) {
      if (!full_square && i != 0 && j != 0) continue;
      if (!valid(x + i * h, t + j * h)) return false;
    }
  }
  return true;
}

}  // namespace monge

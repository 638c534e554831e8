#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "monge/elliptic.hpp"
#include "monge/errors.hpp"

namespace monge::audit {

namespace detail {
inline void check_unit_lambda(double lam, const char* who) {
  if (!(lam >= 0.0 && lam <= 1.0)) {
    throw DomainError(std::string(who) + ": lambda " + std::to_string(lam) + " outside [0, 1]");
  }
}
}  // namespace detail

/// α(λ) = arcsin √(2λ / (1 + λ + √(1 − λ²))), the first-kind amplitude.
/// Increasing on [0,1] with α(0) = 0 and α(1) = π/2.
inline Amplitude alpha_map(double lam) {
  detail::check_unit_lambda(lam, "alpha_map");
  const double ratio = 2 * lam / (1 + lam + std::sqrt(1 - lam * lam));
  return Amplitude(std::asin(std::min(1.0, std::sqrt(ratio))));
}

/// α₁(λ) = arcsin(√2 · sin((π/2 − arcsin λ) / 2)), the second-kind amplitude.
/// Decreasing on [0,1] with α₁(0) = π/2 and α₁(1) = 0.
inline Amplitude alpha1_map(double lam) {
  detail::check_unit_lambda(lam, "alpha1_map");
  const double inner = std::numbers::sqrt2 * std::sin(0.5 * (std::numbers::pi / 2 - std::asin(lam)));
  return Amplitude(std::asin(std::clamp(inner, 0.0, 1.0)));
}

}  // namespace monge::audit

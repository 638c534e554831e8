#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <tuple>

#include "monge/errors.hpp"
#include "monge/field.hpp"
#include "monge/finite_difference.hpp"

namespace monge {

enum class DerivativeMode { analytic, finite_difference };

/// How residual() obtains derivatives and which sign convention it checks:
/// the residual is λ·λ_x − sign·λ_t.
struct ResidualScheme {
  DerivativeMode mode = DerivativeMode::analytic;
  int order = 4;
  /// Absolute FD step; when unset, 1e-4 · max(1, |x|, |t|).
  std::optional<double> step;
  int sign = +1;

  void validate() const {
    Stencil::check_order(order);
    if (step && !(*step > 0.0 && std::isfinite(*step))) {
      throw InvalidArgument("finite-difference step must be positive");
    }
    if (sign != 1 && sign != -1) throw InvalidArgument("residual sign must be +1 or -1");
  }

  double step_at(double x, double t) const {
    return step ? *step : 1e-4 * std::max({1.0, std::abs(x), std::abs(t)});
  }
};

template <class V>
struct ResidualResult {
  V value{};
  V lambda{};
  /// Analytic mode was requested but the field has no closed-form gradient.
  bool fd_fallback = false;
  /// Step used for finite differences; 0 when derivatives were analytic.
  double step = 0.0;
};

template <class V>
struct Partials {
  V lambda{};
  V lambda_x{};
  V lambda_t{};
};

/// λ, λ_x, λ_t by finite differences, after checking the stencil stays valid.
template <class V>
Partials<V> fd_partials(const SolutionField<V>& field, double x, double t, double h, int order) {
  if (!stencil_valid(field.valid_at, x, t, h, order)) {
    throw DomainError(field.label + ": finite-difference stencil leaves the valid domain at (x,t) = (" +
                      std::to_string(x) + ", " + std::to_string(t) + "), h = " + std::to_string(h));
  }
  auto eval = [&field](double xx, double tt) {
    const V v = field.evaluate(xx, tt);
    if (!detail::is_finite(v)) {
      throw DomainError(field.label + ": non-finite value at (x,t) = (" + std::to_string(xx) + ", " +
                        std::to_string(tt) + ")");
    }
    return v;
  };
  return {eval(x, t), fd_dx(eval, x, t, h, order), fd_dt(eval, x, t, h, order)};
}

/// PDE residual λ·λ_x − s·λ_t at (x,t).
template <class V>
ResidualResult<V> residual(const SolutionField<V>& field, double x, double t,
                           const ResidualScheme& scheme = {}) {
  scheme.validate();
  if (!field.valid_at(x, t)) {
    throw DomainError(field.label + ": (x,t) = (" + std::to_string(x) + ", " + std::to_string(t) +
                      ") is outside the valid domain");
  }
  ResidualResult<V> out;
  Partials<V> p;
  if (scheme.mode == DerivativeMode::analytic && field.has_analytic_gradient()) {
    p.lambda = field.evaluate(x, t);
    std::tie(p.lambda_x, p.lambda_t) = field.gradient(x, t);
    if (!detail::is_finite(p.lambda) || !detail::is_finite(p.lambda_x) || !detail::is_finite(p.lambda_t)) {
      throw DomainError(field.label + ": non-finite analytic evaluation");
    }
  } else {
    out.fd_fallback = scheme.mode == DerivativeMode::analytic;
    out.step = scheme.step_at(x, t);
    p = fd_partials(field, x, t, out.step, scheme.order);
  }
  out.lambda = p.lambda;
  out.value = p.lambda * p.lambda_x - static_cast<double>(scheme.sign) * p.lambda_t;
  return out;
}

}  // namespace monge

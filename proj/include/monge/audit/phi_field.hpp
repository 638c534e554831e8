#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "monge/errors.hpp"
#include "monge/field.hpp"
#include "monge/finite_difference.hpp"

namespace monge::audit {

/// The angle field φ = arcsin λ (principal branch) of a real solution field.
class PhiField {
 public:
  explicit PhiField(SolutionField<double> base) : base_(std::move(base)) {}

  const SolutionField<double>& base() const { return base_; }

  /// φ(x,t) ∈ [−π/2, π/2]; requires |λ(x,t)| ≤ 1.
  double evaluate_phi(double x, double t) const {
    const double lam = base_.evaluate(x, t);
    if (!(std::abs(lam) <= 1.0)) {
      throw DomainError(base_.label + ": |lambda| = " + std::to_string(std::abs(lam)) +
                        " > 1 at (x,t) = (" + std::to_string(x) + ", " + std::to_string(t) +
                        "); arcsin undefined");
    }
    return std::asin(lam);
  }

  /// Differentiable region: base valid and |λ| < 1 strictly.
  bool valid_at(double x, double t) const {
    if (!base_.valid_at(x, t)) return false;
    const double lam = base_.evaluate(x, t);
    return std::isfinite(lam) && std::abs(lam) < 1.0;
  }

  /// (φ_x, φ_t) by finite differences; throws if the stencil leaves the region.
  std::pair<double, double> gradient(double x, double t, double h, int order = 4) const {
    if (!stencil_valid([this](double xx, double tt) { return valid_at(xx, tt); }, x, t, h, order)) {
      throw DomainError(base_.label + ": phi stencil leaves the region |lambda| < 1 at (x,t) = (" +
                        std::to_string(x) + ", " + std::to_string(t) + ")");
    }
    auto phi = [this](double xx, double tt) { return evaluate_phi(xx, tt); };
    return {fd_dx(phi, x, t, h, order), fd_dt(phi, x, t, h, order)};
  }

 private:
  SolutionField<double> base_;
};

/// φ_x·sin φ − φ_t at (x,t) from order-4 differences of φ = arcsin λ.
/// Analytically this is the λ-residual divided by cos φ, so points with
/// cos φ below 1e-6 are rejected as ill-conditioned.
inline double phi_residual(const SolutionField<double>& field, double x, double t, double h) {
  if (!(h > 0.0)) throw InvalidArgument("phi_residual: step must be positive");
  const PhiField phi(field);
  if (!phi.valid_at(x, t)) {
    throw DomainError(field.label + ": phi_residual needs |lambda| < 1 at (x,t) = (" + std::to_string(x) +
                      ", " + std::to_string(t) + ")");
  }
  const double angle = phi.evaluate_phi(x, t);
  if (std::cos(angle) < 1e-6) {
    throw DomainError(field.label + ": cos(phi) is within 1e-6 of zero; phi_residual is ill-conditioned");
  }
  const auto [phi_x, phi_t] = phi.gradient(x, t, h, 4);
  return phi_x * std::sin(angle) - phi_t;
}

}  // namespace monge::audit

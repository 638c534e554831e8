#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "monge/audit/report.hpp"
#include "monge/errors.hpp"

namespace monge::audit {

namespace detail {

// Fixed-step classical RK4 for φ' = rhs(φ); stores every node.
template <class Rhs>
std::vector<double> rk4_path(const Rhs& rhs, double phi0, double span, int steps, const char* leg) {
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  out[0] = phi0;
  const double h = span / steps;
  auto f = [&](double phi) {
    if (!(phi > 0.0 && phi < std::numbers::pi)) {
      throw DomainError(std::string("plus_branch_audit: phi left (0, pi) on the ") + leg +
                        " leg (phi = " + std::to_string(phi) + ")");
    }
    const double v = rhs(phi);
    if (!std::isfinite(v)) throw DomainError(std::string("plus_branch_audit: singular slope on the ") + leg + " leg");
    return v;
  };
  double phi = phi0;
  for (int s = 0; s < steps; ++s) {
    const double k1 = f(phi);
    const double k2 = f(phi + 0.5 * h * k1);
    const double k3 = f(phi + 0.5 * h * k2);
    const double k4 = f(phi + h * k3);
    phi += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    f(phi);
    out[static_cast<std::size_t>(s) + 1] = phi;
  }
  return out;
}

inline double plus_x_slope(double phi) { return 1.0 / std::sqrt(std::sin(phi)); }
inline double plus_t_slope(double phi) { return std::sqrt(std::sin(phi)); }

// RK4 for the t-leg together with its x-sensitivity ψ = ∂φ/∂x.
inline std::vector<std::pair<double, double>> rk4_variational(double phi0, double span, int steps) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(steps) + 1);
  double phi = phi0, psi = plus_x_slope(phi0);
  out[0] = {phi, psi};
  const double h = span / steps;
  auto f = [](double p, double q) {
    if (!(p > 0.0 && p < std::numbers::pi)) {
      throw DomainError("plus_branch_audit: phi left (0, pi) on the t leg (phi = " + std::to_string(p) + ")");
    }
    const double root = std::sqrt(std::sin(p));
    return std::pair{root, std::cos(p) / (2 * root) * q};
  };
  for (int s = 0; s < steps; ++s) {
    const auto [a1, b1] = f(phi, psi);
    const auto [a2, b2] = f(phi + 0.5 * h * a1, psi + 0.5 * h * b1);
    const auto [a3, b3] = f(phi + 0.5 * h * a2, psi + 0.5 * h * b2);
    const auto [a4, b4] = f(phi + h * a3, psi + h * b3);
    phi += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    psi += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
    f(phi, psi);
    out[static_cast<std::size_t>(s) + 1] = {phi, psi};
  }
  return out;
}

}  // namespace detail

/// Integrates the plus-branch first-order system φ_x = 1/√sin φ, φ_t = √sin φ
/// from φ(0,0) = phi0 to (x_span, t_span) along both orders of the legs.
///
/// Reported:
///   sup_deviation / "path_discrepancy"  |φ(x-then-t) − φ(t-then-x)|; zero for a true function
///   "phi_tt_claim_sup"   sup |φ_tt − cos φ / 2| along the t-leg (second differences)
///   "phi_tx_claim_sup"   sup |φ_tx + cos φ / (2 sin φ)| over every node of the
///                        x-then-t surface, φ_tx from the variational equation
/// The verdict judges path independence. The minimum-samples rule does not
/// apply; zero spans are the identity case.
inline AuditReport plus_branch_audit(double phi0, double x_span, double t_span, int n_steps,
                                     const AuditSettings& settings = {}) {
  if (!(phi0 > 0.0 && phi0 < std::numbers::pi)) throw DomainError("plus_branch_audit: phi0 must lie in (0, pi)");
  if (!(x_span >= 0.0 && t_span >= 0.0) || !std::isfinite(x_span) || !std::isfinite(t_span)) {
    throw DomainError("plus_branch_audit: spans must be finite and non-negative");
  }
  if (n_steps < 16) throw InvalidArgument("plus_branch_audit: n_steps must be >= 16");

  AuditReport report;
  report.audit_name = "plus-branch";
  report.samples_used = n_steps;
  report.tolerance_used = settings.tolerance;

  const auto x_leg = detail::rk4_path(detail::plus_x_slope, phi0, x_span, n_steps, "x");
  const auto t_leg = detail::rk4_path(detail::plus_t_slope, phi0, t_span, n_steps, "t");
  const double path1 = detail::rk4_path(detail::plus_t_slope, x_leg.back(), t_span, n_steps, "t").back();
  const double path2 = detail::rk4_path(detail::plus_x_slope, t_leg.back(), x_span, n_steps, "x").back();
  const double discrepancy = std::abs(path1 - path2);

  double phi_tt_dev = 0.0;
  if (t_span > 0.0) {
    const double dt = t_span / n_steps;
    for (int j = 1; j < n_steps; ++j) {
      const double second = (t_leg[j + 1] - 2 * t_leg[j] + t_leg[j - 1]) / (dt * dt);
      phi_tt_dev = std::max(phi_tt_dev, std::abs(second - 0.5 * std::cos(t_leg[j])));
    }
  }

  // On the x-then-t surface Φ, ψ = ∂Φ/∂x obeys ψ_t = (cos Φ / (2√sin Φ))·ψ with
  // ψ(x,0) = 1/√sin Φ, so Φ_tx = (cos Φ / (2√sin Φ))·ψ at every node.
  double phi_tx_dev = 0.0;
  WorstPoint worst = WorstPoint::at(0.0, 0.0);
  if (x_span > 0.0 || t_span > 0.0) {
    const double dx = x_span / n_steps;
    for (int i = 0; i <= n_steps; ++i) {
      const auto column = detail::rk4_variational(x_leg[i], t_span, n_steps);
      for (int j = 0; j <= n_steps; ++j) {
        const auto [phi, psi] = column[j];
        const double mixed = std::cos(phi) / (2 * std::sqrt(std::sin(phi))) * psi;
        const double dev = std::abs(mixed + std::cos(phi) / (2 * std::sin(phi)));
        if (dev > phi_tx_dev) {
          phi_tx_dev = dev;
          worst = WorstPoint::at(i * dx, t_span * j / n_steps);
        }
      }
    }
  }

  report.sup_deviation = discrepancy;
  report.worst_point = worst;
  report.metrics.emplace_back("path_discrepancy", discrepancy);
  report.metrics.emplace_back("phi_x_then_t", path1);
  report.metrics.emplace_back("phi_t_then_x", path2);
  report.metrics.emplace_back("phi_tt_claim_sup", phi_tt_dev);
  report.metrics.emplace_back("phi_tx_claim_sup", phi_tx_dev);
  report.verdict = discrepancy <= settings.tolerance ? Verdict::consistent : Verdict::violated;
  return report;
}

}  // namespace monge::audit

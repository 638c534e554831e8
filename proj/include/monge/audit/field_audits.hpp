#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "monge/audit/amplitude.hpp"
#include "monge/audit/antiderivative.hpp"
#include "monge/audit/phi_field.hpp"
#include "monge/audit/report.hpp"
#include "monge/elliptic.hpp"
#include "monge/errors.hpp"
#include "monge/field.hpp"
#include "monge/finite_difference.hpp"
#include "monge/grid.hpp"
#include "monge/residual.hpp"

namespace monge::audit {

/// Measures sup |φ_x·φ_t + 1| over the grid points where the order-4 stencil
/// of φ = arcsin λ stays inside |λ| < 1. Points outside are skipped and counted.
inline AuditReport gradient_product_audit(const PhiField& phi, const Grid& grid, double h,
                                          const AuditSettings& settings = {}) {
  grid.validate();
  if (!(h > 0.0)) throw InvalidArgument("gradient_product_audit: step must be positive");
  AuditReport report;
  report.audit_name = "gradient-product";
  auto valid = [&phi](double x, double t) { return phi.valid_at(x, t); };
  int skipped = 0;
  for (int j = 0; j < grid.nt; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_at(i), t = grid.t_at(j);
      if (!stencil_valid(valid, x, t, h, 4)) {
        ++skipped;
        continue;
      }
      const auto [px, pt] = phi.gradient(x, t, h, 4);
      const double dev = std::abs(px * pt + 1.0);
      if (report.samples_used == 0 || dev > report.sup_deviation) {
        report.sup_deviation = dev;
        report.worst_point = WorstPoint::at(x, t);
      }
      ++report.samples_used;
    }
  }
  report.metrics.emplace_back("points_skipped", skipped);
  if (report.samples_used == 0) report.notes.push_back("no grid point has |lambda| < 1 with stencil margin");
  report.decide(settings);
  return report;
}

/// Mixed partials by the two nested stencil orderings, λ_xt = ∂x(∂t λ) and
/// λ_tx = ∂t(∂x λ). The verdict judges the anticommutator claim
/// sup |λ_xt + λ_tx + 2λ|; the commutator sup |λ_xt − λ_tx| (Clairaut) is
/// reported alongside as the metric "commutator_sup".
inline AuditReport mixed_partials_audit(const SolutionField<double>& field, const Grid& grid, double h,
                                        const AuditSettings& settings = {}, int order = 4) {
  grid.validate();
  if (!(h > 0.0)) throw InvalidArgument("mixed_partials_audit: step must be positive");
  Stencil::check_order(order);
  AuditReport report;
  report.audit_name = "mixed-partials";
  auto eval = [&field](double x, double t) { return field.evaluate(x, t); };
  double commutator = 0.0;
  int skipped = 0;
  for (int j = 0; j < grid.nt; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_at(i), t = grid.t_at(j);
      if (!stencil_valid(field.valid_at, x, t, h, order, /*full_square=*/true)) {
        ++skipped;
        continue;
      }
      const double xt = fd_dx_of_dt(eval, x, t, h, order);
      const double tx = fd_dt_of_dx(eval, x, t, h, order);
      const double lam = field.evaluate(x, t);
      if (!std::isfinite(xt) || !std::isfinite(tx) || !std::isfinite(lam)) {
        throw DomainError(field.label + ": non-finite mixed partial at (x,t) = (" + std::to_string(x) +
                          ", " + std::to_string(t) + ")");
      }
      commutator = std::max(commutator, std::abs(xt - tx));
      const double dev = std::abs(xt + tx + 2 * lam);
      if (report.samples_used == 0 || dev > report.sup_deviation) {
        report.sup_deviation = dev;
        report.worst_point = WorstPoint::at(x, t);
      }
      ++report.samples_used;
    }
  }
  report.metrics.emplace_back("commutator_sup", commutator);
  report.metrics.emplace_back("points_skipped", skipped);
  report.decide(settings);
  return report;
}

enum class SeparableRelation { a12, a14 };

inline const char* to_string(SeparableRelation r) { return r == SeparableRelation::a12 ? "a12" : "a14"; }

/// Checks whether the implicit elliptic relations could hold with a gauge of
/// one variable.
///
/// a12: g̃(x,t) = −2√2·i·F(α(λ), 1/√2) − t must not depend on t, so its spread
///      over t at each fixed x should vanish.
/// a14: f̃(x,t) = i·(−2√2·E + √2·F)(α₁(λ), 1/√2) − x must not depend on x.
///
/// Spreads (max − min) of the real and imaginary parts are measured
/// separately and the largest over the other axis is reported.
inline AuditReport separability_audit(const SolutionField<double>& field, const Grid& grid,
                                      SeparableRelation relation, const AuditSettings& settings = {}) {
  grid.validate();
  AuditReport report;
  report.audit_name = std::string("separability-") + to_string(relation);
  const Modulus k(kClosedFormModulus);
  constexpr double sqrt2 = std::numbers::sqrt2;

  auto candidate = [&](double x, double t) -> std::complex<double> {
    if (!field.valid_at(x, t)) {
      throw DomainError(field.label + ": separability grid point (" + std::to_string(x) + ", " +
                        std::to_string(t) + ") is outside the valid domain");
    }
    const double lam = field.evaluate(x, t);
    if (relation == SeparableRelation::a12) {
      return {-t, -2 * sqrt2 * ellip_f(alpha_map(lam), k).value};
    }
    const Amplitude a1 = alpha1_map(lam);
    return {-x, -2 * sqrt2 * ellip_e(a1, k).value + sqrt2 * ellip_f(a1, k).value};
  };

  // Outer loop is the fixed variable; spread is taken along the inner one.
  const bool over_t = relation == SeparableRelation::a12;
  const int outer_n = over_t ? grid.nx : grid.nt;
  const int inner_n = over_t ? grid.nt : grid.nx;
  double spread_re = 0.0, spread_im = 0.0;
  for (int o = 0; o < outer_n; ++o) {
    double re_lo = std::numeric_limits<double>::infinity(), re_hi = -re_lo;
    double im_lo = re_lo, im_hi = -re_lo;
    double worst_inner = 0.0;
    for (int in = 0; in < inner_n; ++in) {
      const double x = over_t ? grid.x_at(o) : grid.x_at(in);
      const double t = over_t ? grid.t_at(in) : grid.t_at(o);
      const auto g = candidate(x, t);
      re_lo = std::min(re_lo, g.real());
      re_hi = std::max(re_hi, g.real());
      im_lo = std::min(im_lo, g.imag());
      if (g.imag() > im_hi) {
        im_hi = g.imag();
        worst_inner = over_t ? t : x;
      }
    }
    const double sre = re_hi - re_lo, sim = im_hi - im_lo;
    const double column = std::max(sre, sim);
    if (o == 0 || column > std::max(spread_re, spread_im)) {
      const double fixed = over_t ? grid.x_at(o) : grid.t_at(o);
      report.worst_point = over_t ? WorstPoint::at(fixed, worst_inner) : WorstPoint::at(worst_inner, fixed);
    }
    spread_re = std::max(spread_re, sre);
    spread_im = std::max(spread_im, sim);
  }
  report.sup_deviation = std::max(spread_re, spread_im);
  report.samples_used = grid.size();
  report.metrics.emplace_back("spread_real", spread_re);
  report.metrics.emplace_back("spread_imag", spread_im);
  report.decide(settings);
  if (inner_n < 2) {
    report.verdict = Verdict::inconclusive;
    report.notes.push_back(std::string("spread over ") + (over_t ? "t" : "x") +
                           " is undefined with a single node on that axis");
  }
  return report;
}

/// Which sign s a field satisfies in λ·λ_x = s·λ_t over a grid.
struct SignFinding {
  std::string label;
  double sup_plus = 0.0;   ///< sup |λλ_x − λ_t|
  double sup_minus = 0.0;  ///< sup |λλ_x + λ_t|
  int samples = 0;
  /// +1 or −1 when that convention holds within tolerance, 0 when neither does.
  int satisfied_sign = 0;
};

inline SignFinding sign_convention(const SolutionField<double>& field, const Grid& grid,
                                   ResidualScheme scheme, double tolerance) {
  grid.validate();
  SignFinding out;
  out.label = field.label;
  for (int j = 0; j < grid.nt; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_at(i), t = grid.t_at(j);
      scheme.sign = +1;
      const auto plus = residual(field, x, t, scheme);
      scheme.sign = -1;
      const auto minus = residual(field, x, t, scheme);
      out.sup_plus = std::max(out.sup_plus, std::abs(plus.value));
      out.sup_minus = std::max(out.sup_minus, std::abs(minus.value));
      ++out.samples;
    }
  }
  if (out.sup_plus <= tolerance && out.sup_plus <= out.sup_minus) {
    out.satisfied_sign = +1;
  } else if (out.sup_minus <= tolerance) {
    out.satisfied_sign = -1;
  }
  return out;
}

}  // namespace monge::audit

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monge/errors.hpp"
#include "monge/implicit.hpp"
#include "monge/profile.hpp"

namespace monge {

/// A candidate λ(x,t) together with the region where it may be evaluated.
///
/// `evaluate` must be reentrant and return a finite value wherever `valid_at`
/// holds. `gradient`, when set, returns the closed-form pair (λ_x, λ_t).
template <class V = double>
struct SolutionField {
  using value_type = V;

  std::string label;
  std::function<V(double, double)> evaluate;
  std::function<bool(double, double)> valid_at;
  std::function<std::pair<V, V>(double, double)> gradient;

  V operator()(double x, double t) const { return evaluate(x, t); }
  bool has_analytic_gradient() const { return static_cast<bool>(gradient); }
};

/// Parameters consumed by builtin_solution; each name reads only what it needs.
struct SolutionParams {
  std::optional<double> a;                ///< fairlie offset
  std::optional<double> c;                ///< constant value
  std::optional<InitialProfile> profile;  ///< whitham initial data
  std::optional<GaugeFunction> gauge;     ///< leznov gauge f(λ)
  double margin = 1e-3;                   ///< exclusion width around singular loci
  RootScan scan{};                        ///< implicit solver controls
};

namespace detail {
inline auto everywhere() {
  return [](double x, double t) { return std::isfinite(x) && std::isfinite(t); };
}

// Single-valued branch of an implicit relation: valid only where exactly one root exists.
template <class Solve>
SolutionField<double> implicit_field(std::string label, Solve solve) {
  SolutionField<double> f;
  f.label = std::move(label);
  f.valid_at = [solve](double x, double t) {
    if (!std::isfinite(x) || !std::isfinite(t)) return false;
    try {
      return solve(x, t).size() == 1;
    } catch (const DomainError&) {
      return false;
    }
  };
  f.evaluate = [solve, name = f.label](double x, double t) {
    const auto roots = solve(x, t);
    if (roots.size() != 1) {
      throw DomainError(name + ": " + std::to_string(roots.size()) + " roots at (x,t) = (" +
                        std::to_string(x) + ", " + std::to_string(t) + "); field is not single-valued there");
    }
    return roots.front();
  };
  return f;
}
}  // namespace detail

/// Names accepted by builtin_solution.
inline const std::vector<std::string>& builtin_solution_names() {
  static const std::vector<std::string> names = {
      "zero",     "hyperbola", "fairlie",      "whitham",      "leznov",
      "constant", "linear-x",  "sin-x-plus-t", "sin-x-minus-t"};
  return names;
}

/// Closed-form and implicit solution families, plus a few smooth test fields.
///
///   zero           λ = 0
///   hyperbola      x + tλ = 0, valid for |t| ≥ margin
///   fairlie        λ = (a + x)/(1 − t), valid for |1 − t| ≥ margin
///   whitham        λ = G(x + λt), single-valued points only
///   leznov         x − λt = f(λ), single-valued points only
///   constant       λ = c
///   linear-x       λ = x (not a solution; residual equals x)
///   sin-x-plus-t   λ = sin(x + t)
///   sin-x-minus-t  λ = sin(x − t)
inline SolutionField<double> builtin_solution(std::string_view name, const SolutionParams& params = {}) {
  if (!(params.margin > 0.0)) throw InvalidArgument("singularity margin must be positive");
  const double margin = params.margin;
  SolutionField<double> f;
  f.label = std::string(name);
  f.valid_at = detail::everywhere();

  if (name == "zero") {
    f.evaluate = [](double, double) { return 0.0; };
    f.gradient = [](double, double) { return std::pair{0.0, 0.0}; };
  } else if (name == "constant") {
    if (!params.c) throw InvalidArgument("constant solution requires parameter c");
    const double c = *params.c;
    f.evaluate = [c](double, double) { return c; };
    f.gradient = [](double, double) { return std::pair{0.0, 0.0}; };
  } else if (name == "hyperbola") {
    f.valid_at = [margin](double x, double t) {
      return std::isfinite(x) && std::isfinite(t) && std::abs(t) >= margin;
    };
    f.evaluate = [](double x, double t) { return -x / t; };
    f.gradient = [](double x, double t) { return std::pair{-1.0 / t, x / (t * t)}; };
  } else if (name == "fairlie") {
    if (!params.a) throw InvalidArgument("fairlie solution requires parameter a");
    const double a = *params.a;
    f.valid_at = [margin](double x, double t) {
      return std::isfinite(x) && std::isfinite(t) && std::abs(1.0 - t) >= margin;
    };
    f.evaluate = [a](double x, double t) { return (a + x) / (1.0 - t); };
    f.gradient = [a](double x, double t) {
      const double d = 1.0 - t;
      return std::pair{1.0 / d, (a + x) / (d * d)};
    };
  } else if (name == "whitham") {
    if (!params.profile) throw InvalidArgument("whitham solution requires an initial profile");
    auto solve = [profile = *params.profile, scan = params.scan](double x, double t) {
      return solve_whitham(profile, x, t, scan);
    };
    f = detail::implicit_field("whitham", solve);
  } else if (name == "leznov") {
    if (!params.gauge) throw InvalidArgument("leznov solution requires a gauge function");
    if (!params.gauge->is_real()) throw InvalidArgument("leznov solution requires real gauge coefficients");
    auto solve = [gauge = *params.gauge, scan = params.scan](double x, double t) {
      return solve_leznov(gauge, x, t, scan);
    };
    f = detail::implicit_field("leznov", solve);
  } else if (name == "linear-x") {
    f.evaluate = [](double x, double) { return x; };
    f.gradient = [](double, double) { return std::pair{1.0, 0.0}; };
  } else if (name == "sin-x-plus-t") {
    f.evaluate = [](double x, double t) { return std::sin(x + t); };
    f.gradient = [](double x, double t) {
      const double c = std::cos(x + t);
      return std::pair{c, c};
    };
  } else if (name == "sin-x-minus-t") {
    f.evaluate = [](double x, double t) { return std::sin(x - t); };
    f.gradient = [](double x, double t) {
      const double c = std::cos(x - t);
      return std::pair{c, -c};
    };
  } else {
    throw InvalidArgument("unknown solution name '" + std::string(name) + "'");
  }
  return f;
}

}  // namespace monge

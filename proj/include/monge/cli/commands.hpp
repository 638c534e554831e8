#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "monge/audit.hpp"
#include "monge/cli/config.hpp"
#include "monge/cli/json_out.hpp"
#include "monge/elliptic.hpp"
#include "monge/field.hpp"
#include "monge/grid.hpp"
#include "monge/implicit.hpp"
#include "monge/residual.hpp"

namespace monge::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// A table rendered as CSV: header plus rows of pre-formatted cells.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

/// Output of one command before it is wrapped in an envelope.
struct CommandOutput {
  Json results;
  std::vector<Table> tables;        ///< CSV view; plot-data writes each as its own file
  std::vector<std::string> plain;   ///< human-readable lines
  bool any_violation = false;
};

namespace detail {

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(int v) { return std::to_string(v); }

inline Json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline Json report_json(const audit::AuditReport& r) {
  Json j;
  j["audit_name"] = r.audit_name;
  j["verdict"] = audit::to_string(r.verdict);
  j["sup_deviation"] = r.sup_deviation;
  j["tolerance_used"] = r.tolerance_used;
  j["samples_used"] = r.samples_used;
  if (!r.worst_point) {
    j["worst_point"] = nullptr;
  } else if (r.worst_point->kind == audit::WorstPoint::Kind::phi) {
    j["worst_point"] = {{"phi", r.worst_point->phi}};
  } else {
    j["worst_point"] = {{"x", r.worst_point->x}, {"t", r.worst_point->t}};
  }
  Json constants = Json::object();
  for (const auto& [k, v] : r.fitted_constants) constants[k] = complex_json(v);
  j["fitted_constants"] = constants;
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  j["notes"] = r.notes;
  return j;
}

inline Json breaking_json(const std::optional<BreakingTime>& bt) {
  if (!bt) return nullptr;
  return {{"time", bt->time}, {"xi", bt->xi}, {"max_slope", bt->max_slope}};
}

inline const SolutionSpec& require_solution(const RunConfig& c) {
  if (!c.solution) throw ConfigError("command '" + c.command + "' requires a 'solution' section");
  return *c.solution;
}

inline InitialProfile require_profile(const RunConfig& c) {
  const auto& s = require_solution(c);
  if (!s.profile) throw ConfigError("command '" + c.command + "' requires 'solution.profile'");
  return s.profile->build();
}

inline std::vector<double> linspace(Interval r, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[i] = n == 1 ? r.lo : (i == n - 1 ? r.hi : r.lo + r.width() * i / (n - 1));
  }
  return v;
}

}  // namespace detail

inline CommandOutput cmd_elliptic(const RunConfig& c) {
  const auto& e = c.elliptic;
  const EllipticValue v = e.kind == "F" ? ellip_f(e.beta, e.k) : ellip_e(e.beta, e.k);
  CommandOutput out;
  out.results = {{"kind", e.kind}, {"beta", e.beta}, {"k", e.k}, {"value", v.value},
                 {"abs_error_estimate", v.abs_error_estimate}};
  out.tables.push_back({"elliptic",
                        {"kind", "beta", "k", "value", "abs_error_estimate"},
                        {{e.kind, detail::cell(e.beta), detail::cell(e.k), detail::cell(v.value),
                          detail::cell(v.abs_error_estimate)}}});
  out.plain.push_back(e.kind + "(" + detail::cell(e.beta) + ", " + detail::cell(e.k) + ") = " +
                      detail::cell(v.value) + "  (abs error estimate " + detail::cell(v.abs_error_estimate) + ")");
  return out;
}

/// Residual over the grid, t-major then x. Invalid points (and points whose
/// stencil leaves the valid region) are skipped and counted.
inline CommandOutput cmd_residual(const RunConfig& c) {
  const auto& spec = detail::require_solution(c);
  const auto field = builtin_solution(spec.name, spec.params(c.roots));
  const Grid grid = c.grid.value_or(Grid{});
  grid.validate();
  c.scheme.validate();

  CommandOutput out;
  Table table{"residual", {"x", "t", "lambda", "residual"}, {}};
  Json rows = Json::array();
  double sup = 0.0;
  std::optional<std::pair<double, double>> worst;
  int skipped = 0, fallbacks = 0;
  for (int j = 0; j < grid.nt; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_at(i), t = grid.t_at(j);
      if (!field.valid_at(x, t)) {
        ++skipped;
        continue;
      }
      ResidualResult<double> r;
      try {
        r = residual(field, x, t, c.scheme);
      } catch (const DomainError&) {
        ++skipped;
        continue;
      }
      if (r.fd_fallback) ++fallbacks;
      if (!worst || std::abs(r.value) > sup) {
        sup = std::abs(r.value);
        worst = {x, t};
      }
      rows.push_back({{"x", x}, {"t", t}, {"lambda", r.lambda}, {"residual", r.value}});
      table.rows.push_back({detail::cell(x), detail::cell(t), detail::cell(r.lambda), detail::cell(r.value)});
    }
  }
  if (rows.empty()) {
    throw DomainError("residual: no grid point lies in the valid domain of '" + field.label + "'");
  }
  Json summary;
  summary["solution"] = field.label;
  summary["sup_abs_residual"] = sup;
  summary["worst_point"] = {{"x", worst->first}, {"t", worst->second}};
  summary["valid_points"] = static_cast<int>(rows.size());
  summary["skipped_invalid"] = skipped;
  summary["fd_fallback_points"] = fallbacks;
  out.results = {{"summary", summary}, {"rows", rows}};
  out.tables.push_back(std::move(table));
  out.plain.push_back("solution " + field.label);
  out.plain.push_back("sup |residual| = " + detail::cell(sup) + " at (x, t) = (" + detail::cell(worst->first) +
                      ", " + detail::cell(worst->second) + ")");
  out.plain.push_back("valid points " + std::to_string(rows.size()) + ", skipped " + std::to_string(skipped));
  return out;
}

inline CommandOutput cmd_solve(const RunConfig& c) {
  const auto& spec = detail::require_solution(c);
  const Grid grid = c.grid.value_or(Grid{});
  grid.validate();
  std::optional<InitialProfile> profile;
  std::optional<GaugeFunction> gauge;
  if (spec.name == "whitham") {
    profile = detail::require_profile(c);
  } else if (spec.name == "leznov") {
    if (!spec.gauge) throw ConfigError("solve with 'leznov' requires 'solution.gauge'");
    gauge = GaugeFunction(*spec.gauge);
  } else {
    throw ConfigError("config key 'solution.name' must be whitham or leznov for solve (got '" + spec.name + "')");
  }

  CommandOutput out;
  Table table{"solve", {"x", "t", "branch", "root"}, {}};
  Json points = Json::array();
  int multivalued = 0;
  std::size_t max_roots = 0;
  for (int j = 0; j < grid.nt; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_at(i), t = grid.t_at(j);
      const auto roots = profile ? solve_whitham(*profile, x, t, c.roots) : solve_leznov(*gauge, x, t, c.roots);
      if (roots.size() > 1) ++multivalued;
      max_roots = std::max(max_roots, roots.size());
      points.push_back({{"x", x}, {"t", t}, {"roots", roots}});
      for (std::size_t b = 0; b < roots.size(); ++b) {
        table.rows.push_back({detail::cell(x), detail::cell(t), std::to_string(b), detail::cell(roots[b])});
      }
    }
  }
  Json summary;
  summary["solver"] = spec.name;
  summary["points"] = grid.size();
  summary["multivalued_points"] = multivalued;
  summary["max_roots"] = static_cast<int>(max_roots);
  if (profile) {
    summary["breaking_time"] = detail::breaking_json(breaking_time(*profile, c.breaking.xi, c.breaking.n_samples));
  }
  out.results = {{"summary", summary}, {"points", points}};
  out.tables.push_back(std::move(table));
  out.plain.push_back("solver " + spec.name + ": " + std::to_string(grid.size()) + " points, " +
                      std::to_string(multivalued) + " multivalued, at most " + std::to_string(max_roots) +
                      " roots");
  for (const auto& p : points) {
    std::string line = "  (" + detail::cell(p["x"].get<double>()) + ", " + detail::cell(p["t"].get<double>()) + "):";
    for (const auto& r : p["roots"]) line += " " + detail::cell(r.get<double>());
    out.plain.push_back(line);
  }
  return out;
}

inline CommandOutput cmd_breaking_time(const RunConfig& c) {
  const auto profile = detail::require_profile(c);
  const auto bt = breaking_time(profile, c.breaking.xi, c.breaking.n_samples);
  CommandOutput out;
  out.results = {{"profile", profile.family_name()}, {"breaking_time", detail::breaking_json(bt)}};
  Table table{"breaking-time", {"time", "xi", "max_slope"}, {}};
  if (bt) {
    table.rows.push_back({detail::cell(bt->time), detail::cell(bt->xi), detail::cell(bt->max_slope)});
    out.plain.push_back("breaking time " + detail::cell(bt->time) + " at xi = " + detail::cell(bt->xi) +
                        " (max slope " + detail::cell(bt->max_slope) + ")");
  } else {
    out.plain.push_back("no breaking: the profile slope is never positive on the scanned range");
  }
  out.tables.push_back(std::move(table));
  return out;
}

namespace detail {

struct FieldCase {
  SolutionField<double> field;
  Grid grid;
};

inline Grid square(double lo, double hi, int n) {
  Grid g;
  g.x = {lo, hi};
  g.t = {lo, hi};
  g.nx = n;
  g.nt = n;
  return g;
}

// Built-in audit fields; a top-level solution or grid replaces them.
inline FieldCase audit_field(const RunConfig& c, double fairlie_a, Grid fallback_grid) {
  SolutionParams p;
  p.a = fairlie_a;
  FieldCase fc{builtin_solution("fairlie", p), fallback_grid};
  if (c.solution) fc.field = builtin_solution(c.solution->name, c.solution->params(c.roots));
  if (c.grid) fc.grid = *c.grid;
  return fc;
}

inline Json sign_json(const audit::SignFinding& s) {
  return {{"solution", s.label},
          {"sup_plus", s.sup_plus},
          {"sup_minus", s.sup_minus},
          {"samples", s.samples},
          {"satisfied_sign", s.satisfied_sign}};
}

}  // namespace detail

inline std::vector<audit::AuditReport> run_audits(const RunConfig& c) {
  using namespace audit;
  const auto& a = c.audit;
  const AuditSettings settings{a.tolerance, a.min_samples};
  std::vector<AuditReport> reports;
  auto want = [&](const char* name) { return a.name == "all" || a.name == name; };

  if (want("antiderivative-first")) {
    reports.push_back(antiderivative_audit(IntegralKind::first, a.antiderivative.phi_lo, a.antiderivative.phi_hi,
                                           a.antiderivative.n, settings, a.antiderivative.quad_tol));
  }
  if (want("antiderivative-second")) {
    reports.push_back(antiderivative_audit(IntegralKind::second, a.antiderivative.phi_lo, a.antiderivative.phi_hi,
                                           a.antiderivative.n, settings, a.antiderivative.quad_tol));
  }
  if (want("gradient-product")) {
    const auto fc = detail::audit_field(c, 0.0, detail::square(0.0, 0.3, 7));
    reports.push_back(gradient_product_audit(PhiField(fc.field), fc.grid, a.gradient_product_h, settings));
  }
  if (want("mixed-partials")) {
    const auto fc = detail::audit_field(c, 1.0, detail::square(0.0, 0.3, 7));
    reports.push_back(mixed_partials_audit(fc.field, fc.grid, a.mixed_partials_h, settings, a.mixed_partials_order));
  }
  if (want("separability-a12")) {
    const auto fc = detail::audit_field(c, 0.0, detail::square(0.05, 0.25, 5));
    reports.push_back(separability_audit(fc.field, fc.grid, SeparableRelation::a12, settings));
  }
  if (want("separability-a14")) {
    const auto fc = detail::audit_field(c, 0.0, detail::square(0.05, 0.25, 5));
    reports.push_back(separability_audit(fc.field, fc.grid, SeparableRelation::a14, settings));
  }
  if (want("plus-branch")) {
    const auto& pb = a.plus_branch;
    reports.push_back(plus_branch_audit(pb.phi0, pb.x_span, pb.t_span, pb.n_steps, settings));
  }
  return reports;
}

/// Which sign of λλ_x = s·λ_t the reference solutions satisfy (fixed fields,
/// order-4 differences with h = 1e-4).
inline std::vector<audit::SignFinding> run_sign_conventions(const RunConfig& c) {
  ResidualScheme scheme;
  scheme.mode = DerivativeMode::finite_difference;
  scheme.order = 4;
  scheme.step = 1e-4;
  auto grid = [](double x0, double x1, double t0, double t1) {
    Grid g;
    g.x = {x0, x1};
    g.t = {t0, t1};
    g.nx = 5;
    g.nt = 5;
    return g;
  };
  SolutionParams fairlie;
  fairlie.a = 1.0;
  SolutionParams leznov;
  leznov.gauge = GaugeFunction::real({0.0, 1.0});
  leznov.scan = c.roots;
  const double tol = c.audit.sign_tolerance;
  return {
      audit::sign_convention(builtin_solution("fairlie", fairlie), grid(-1, 1, 0, 0.5), scheme, tol),
      audit::sign_convention(builtin_solution("hyperbola"), grid(-1, 1, 0.5, 1.5), scheme, tol),
      audit::sign_convention(builtin_solution("leznov", leznov), grid(-1, 1, 0, 1), scheme, tol),
  };
}

inline CommandOutput cmd_audit(const RunConfig& c) {
  const auto reports = run_audits(c);
  CommandOutput out;
  Json list = Json::array();
  Table table{"audit", {"audit_name", "verdict", "sup_deviation", "tolerance_used", "samples_used"}, {}};
  for (const auto& r : reports) {
    list.push_back(detail::report_json(r));
    if (r.verdict == audit::Verdict::violated) out.any_violation = true;
    table.rows.push_back({r.audit_name, audit::to_string(r.verdict), detail::cell(r.sup_deviation),
                          detail::cell(r.tolerance_used), detail::cell(r.samples_used)});
    out.plain.push_back(r.audit_name + ": " + audit::to_string(r.verdict) +
                        " (sup deviation " + detail::cell(r.sup_deviation) + ")");
    for (const auto& n : r.notes) out.plain.push_back("    " + n);
  }
  out.results["reports"] = list;
  if (c.audit.name == "all") {
    Json signs = Json::array();
    for (const auto& s : run_sign_conventions(c)) {
      signs.push_back(detail::sign_json(s));
      out.plain.push_back("sign convention " + s.label + ": satisfied_sign = " + std::to_string(s.satisfied_sign) +
                          " (sup plus " + detail::cell(s.sup_plus) + ", sup minus " + detail::cell(s.sup_minus) +
                          ")");
    }
    out.results["sign_conventions"] = signs;
  }
  out.tables.push_back(std::move(table));
  return out;
}

/// λ profiles at fixed t (every branch, indexed from the smallest root) and
/// characteristic lines x = ξ − G(ξ)·t.
inline CommandOutput cmd_plot_data(const RunConfig& c) {
  const auto profile = detail::require_profile(c);
  const auto& p = c.plot;
  CommandOutput out;
  Table profiles{"profiles", {"t", "x", "branch", "lambda"}, {}};
  Table characteristics{"characteristics", {"xi", "t", "x"}, {}};
  Json prof_rows = Json::array(), char_rows = Json::array();
  for (double t : p.t_slices) {
    for (double x : detail::linspace(p.x, p.nx)) {
      const auto roots = solve_whitham(profile, x, t, c.roots);
      for (std::size_t b = 0; b < roots.size(); ++b) {
        prof_rows.push_back({{"t", t}, {"x", x}, {"branch", static_cast<int>(b)}, {"lambda", roots[b]}});
        profiles.rows.push_back({detail::cell(t), detail::cell(x), std::to_string(b), detail::cell(roots[b])});
      }
    }
  }
  for (double xi : detail::linspace(p.xi, p.n_xi)) {
    const double g = profile.value(xi);
    for (double t : detail::linspace({0.0, p.t_max}, p.nt)) {
      const double x = xi - g * t;
      char_rows.push_back({{"xi", xi}, {"t", t}, {"x", x}});
      characteristics.rows.push_back({detail::cell(xi), detail::cell(t), detail::cell(x)});
    }
  }
  out.results = {{"profile", profile.family_name()}, {"profiles", prof_rows}, {"characteristics", char_rows}};
  out.plain.push_back(std::to_string(profiles.rows.size()) + " profile rows, " +
                      std::to_string(characteristics.rows.size()) + " characteristic rows");
  out.tables.push_back(std::move(profiles));
  out.tables.push_back(std::move(characteristics));
  return out;
}

inline CommandOutput run_command(const RunConfig& c) {
  if (c.command == "elliptic") return cmd_elliptic(c);
  if (c.command == "residual") return cmd_residual(c);
  if (c.command == "solve") return cmd_solve(c);
  if (c.command == "breaking-time") return cmd_breaking_time(c);
  if (c.command == "audit") return cmd_audit(c);
  if (c.command == "plot-data") return cmd_plot_data(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

/// The JSON envelope. Timing sits last and apart so comparisons can drop it.
inline Json envelope(const RunConfig& c, const CommandOutput& out, double elapsed_ms) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["config_echo"] = c.to_json();
  j["results"] = out.results;
  j["timing"] = {{"elapsed_ms", elapsed_ms}};
  return j;
}

}  // namespace monge::cli

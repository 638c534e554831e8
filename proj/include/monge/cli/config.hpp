#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monge/cli/json_out.hpp"
#include "monge/errors.hpp"
#include "monge/field.hpp"
#include "monge/grid.hpp"
#include "monge/implicit.hpp"
#include "monge/profile.hpp"
#include "monge/residual.hpp"

namespace monge::cli {

/// Malformed or inconsistent configuration (unknown key, wrong type, bad value).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

namespace detail {

/// Reads one JSON object, remembering which keys were consumed so that
/// anything left over can be reported by its dotted path.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("config key '" + display() + "' must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const Json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  /// Consumes an absent or null key.
  void accept_null(const std::string& key) { used_.insert(key); }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double number(const std::string& key, double fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    return as_number(j_.at(key), child(key));
  }

  std::optional<double> optional_number(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return as_number(j_.at(key), child(key));
  }

  int integer(const std::string& key, int fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError("config key '" + child(key) + "' must be an integer");
    return v.get<int>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError("config key '" + child(key) + "' must be a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError("config key '" + child(key) + "' must be true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError("config key '" + child(key) + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(as_number(e, child(key)));
    return out;
  }

  Interval interval(const std::string& key, Interval fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const auto v = numbers(key, {});
    if (v.size() != 2) throw ConfigError("config key '" + child(key) + "' must be a [lo, hi] pair");
    return {v[0], v[1]};
  }

  /// Throws on the first key that was never consumed.
  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) throw ConfigError("unknown config key '" + child(k) + "'");
    }
  }

 private:
  std::string display() const { return path_.empty() ? "<root>" : path_; }

  static double as_number(const Json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError("config key '" + where + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("config key '" + where + "' must be finite");
    return d;
  }

  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

inline Json interval_json(const Interval& r) { return Json::array({r.lo, r.hi}); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace detail

/// Initial profile G(ξ) as written in a config file.
struct ProfileSpec {
  std::string family = "affine";
  double a = 0.0, b = 0.0;          // affine
  std::vector<double> coeffs;       // polynomial, exp_series
  double rate = 0.0;                // exp_series
  double amplitude = 1.0, scale = 1.0;  // tanh
  double value = 0.0;               // constant

  InitialProfile build() const {
    if (family == "affine") return InitialProfile::affine(a, b);
    if (family == "polynomial") return InitialProfile::polynomial(coeffs);
    if (family == "exp_series") return InitialProfile::exp_series(coeffs, rate);
    if (family == "tanh") return InitialProfile::tanh(amplitude, scale);
    if (family == "constant") return InitialProfile::constant(value);
    throw ConfigError("unknown profile family '" + family + "'");
  }

  static ProfileSpec parse(const Json& j, const std::string& path) {
    detail::ObjectReader r(j, path);
    ProfileSpec p;
    p.family = r.text("family", "");
    if (p.family == "affine") {
      p.a = r.number("a", 0.0);
      p.b = r.number("b", 0.0);
    } else if (p.family == "polynomial") {
      p.coeffs = r.numbers("coeffs", {});
    } else if (p.family == "exp_series") {
      p.coeffs = r.numbers("coeffs", {});
      p.rate = r.number("rate", 0.0);
    } else if (p.family == "tanh") {
      p.amplitude = r.number("amplitude", 1.0);
      p.scale = r.number("scale", 1.0);
    } else if (p.family == "constant") {
      p.value = r.number("value", 0.0);
    } else {
      throw ConfigError("config key '" + r.child("family") + "' must be one of affine, polynomial, exp_series, "
                        "tanh, constant (got '" + p.family + "')");
    }
    r.finish();
    p.build();  // surface invalid parameters at parse time
    return p;
  }

  Json to_json() const {
    Json j;
    j["family"] = family;
    if (family == "affine") {
      j["a"] = a;
      j["b"] = b;
    } else if (family == "polynomial") {
      j["coeffs"] = coeffs;
    } else if (family == "exp_series") {
      j["coeffs"] = coeffs;
      j["rate"] = rate;
    } else if (family == "tanh") {
      j["amplitude"] = amplitude;
      j["scale"] = scale;
    } else {
      j["value"] = value;
    }
    return j;
  }
};

struct SolutionSpec {
  std::string name = "zero";
  std::optional<double> a;
  std::optional<double> c;
  std::optional<ProfileSpec> profile;
  std::optional<std::vector<std::complex<double>>> gauge;
  double margin = 1e-3;

  SolutionParams params(const RootScan& scan) const {
    SolutionParams p;
    p.a = a;
    p.c = c;
    if (profile) p.profile = profile->build();
    if (gauge) p.gauge = GaugeFunction(*gauge);
    p.margin = margin;
    p.scan = scan;
    return p;
  }

  static SolutionSpec parse(const Json& j, const std::string& path) {
    detail::ObjectReader r(j, path);
    SolutionSpec s;
    s.name = r.text("name", s.name);
    s.a = r.optional_number("a");
    s.c = r.optional_number("c");
    if (r.has("profile")) s.profile = ProfileSpec::parse(r.raw("profile"), r.child("profile"));
    else r.accept_null("profile");
    if (r.has("gauge")) {
      const Json& g = r.raw("gauge");
      const std::string where = r.child("gauge");
      if (!g.is_array()) throw ConfigError("config key '" + where + "' must be an array of [re, im] pairs");
      std::vector<std::complex<double>> coeffs;
      for (const auto& e : g) {
        if (e.is_number()) {
          coeffs.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
          coeffs.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
          throw ConfigError("config key '" + where + "' entries must be numbers or [re, im] pairs");
        }
      }
      s.gauge = std::move(coeffs);
    } else {
      r.accept_null("gauge");
    }
    s.margin = r.number("margin", s.margin);
    r.finish();
    if (!(s.margin > 0.0)) throw ConfigError("config key '" + r.child("margin") + "' must be positive");
    return s;
  }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["a"] = detail::optional_json(a);
    j["c"] = detail::optional_json(c);
    j["profile"] = profile ? profile->to_json() : Json(nullptr);
    if (gauge) {
      Json g = Json::array();
      for (const auto& z : *gauge) g.push_back(Json::array({z.real(), z.imag()}));
      j["gauge"] = g;
    } else {
      j["gauge"] = nullptr;
    }
    j["margin"] = margin;
    return j;
  }
};

struct EllipticSpec {
  std::string kind = "F";
  double beta = 0.0;
  double k = 0.0;
};

struct BreakingSpec {
  Interval xi{-5.0, 5.0};
  int n_samples = 1001;
};

struct AntiderivativeSpec {
  double phi_lo = 0.2;
  double phi_hi = std::numbers::pi / 2;
  int n = 33;
  double quad_tol = 1e-13;
};

struct PlusBranchSpec {
  double phi0 = std::numbers::pi / 2;
  double x_span = 0.2;
  double t_span = 0.2;
  int n_steps = 256;
};

struct AuditSpec {
  std::string name = "all";
  double tolerance = 1e-6;
  int min_samples = 4;
  AntiderivativeSpec antiderivative;
  double gradient_product_h = 1e-4;
  double mixed_partials_h = 1e-3;
  int mixed_partials_order = 4;
  PlusBranchSpec plus_branch;
  double sign_tolerance = 1e-8;
};

struct PlotSpec {
  std::vector<double> t_slices{0.0, 0.5};
  Interval x{-1.0, 1.0};
  int nx = 41;
  Interval xi{-2.0, 2.0};
  int n_xi = 21;
  double t_max = 1.0;
  int nt = 11;
};

struct OutputSpec {
  std::string format = "json";
  std::optional<std::string> path;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"elliptic", "residual",   "solve",
                                                 "breaking-time", "audit", "plot-data"};
  return names;
}

inline const std::vector<std::string>& audit_names() {
  static const std::vector<std::string> names = {
      "antiderivative-first", "antiderivative-second", "gradient-product", "mixed-partials",
      "separability-a12",     "separability-a14",      "plus-branch",      "all"};
  return names;
}

/// Everything one invocation needs. Every field has a default, and the echo
/// written by to_json() parses back to an equal configuration.
struct RunConfig {
  std::string command;
  std::optional<SolutionSpec> solution;
  std::optional<Grid> grid;
  ResidualScheme scheme;
  RootScan roots;
  EllipticSpec elliptic;
  BreakingSpec breaking;
  AuditSpec audit;
  PlotSpec plot;
  OutputSpec output;
  bool fail_on_violation = false;

  void validate() const;
  Json to_json() const;
  static RunConfig parse(const Json& j);
  static RunConfig load(const std::string& path);
};

namespace detail {

inline void check_positive(double v, const std::string& key) {
  if (!(v > 0.0)) throw ConfigError("config key '" + key + "' must be positive");
}
inline void check_count(int v, int min, const std::string& key) {
  if (v < min) throw ConfigError("config key '" + key + "' must be >= " + std::to_string(min));
}
inline void check_one_of(const std::string& v, const std::vector<std::string>& options, const std::string& key) {
  for (const auto& o : options) {
    if (o == v) return;
  }
  std::string list;
  for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
  throw ConfigError("config key '" + key + "' must be one of " + list + " (got '" + v + "')");
}

inline Grid parse_grid(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  Grid g;
  g.x = r.interval("x", g.x);
  g.t = r.interval("t", g.t);
  g.nx = r.integer("nx", g.nx);
  g.nt = r.integer("nt", g.nt);
  r.finish();
  try {
    g.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("config key '" + path + "': " + e.what());
  }
  return g;
}

inline Json grid_json(const Grid& g) {
  Json j;
  j["x"] = interval_json(g.x);
  j["t"] = interval_json(g.t);
  j["nx"] = g.nx;
  j["nt"] = g.nt;
  return j;
}

}  // namespace detail

inline void RunConfig::validate() const {
  using namespace detail;
  if (!command.empty()) check_one_of(command, command_names(), "command");
  check_one_of(scheme.mode == DerivativeMode::analytic ? "analytic" : "finite_difference",
               {"analytic", "finite_difference"}, "scheme.mode");
  if (scheme.order != 2 && scheme.order != 4) throw ConfigError("config key 'scheme.order' must be 2 or 4");
  if (scheme.step) check_positive(*scheme.step, "scheme.h");
  if (scheme.sign != 1 && scheme.sign != -1) throw ConfigError("config key 'scheme.sign' must be 1 or -1");
  if (!(roots.bracket.lo < roots.bracket.hi)) throw ConfigError("config key 'roots.bracket' must satisfy lo < hi");
  check_positive(roots.tol, "roots.tol");
  check_count(roots.subintervals, 1, "roots.subintervals");
  check_one_of(elliptic.kind, {"F", "E"}, "elliptic.kind");
  if (!(breaking.xi.lo < breaking.xi.hi)) throw ConfigError("config key 'breaking.xi' must satisfy lo < hi");
  check_count(breaking.n_samples, 2, "breaking.n_samples");
  check_one_of(audit.name, audit_names(), "audit.name");
  check_positive(audit.tolerance, "audit.tolerance");
  check_count(audit.min_samples, 1, "audit.min_samples");
  check_positive(audit.antiderivative.quad_tol, "audit.antiderivative.quad_tol");
  check_count(audit.antiderivative.n, 8, "audit.antiderivative.n");
  check_positive(audit.gradient_product_h, "audit.gradient_product.h");
  check_positive(audit.mixed_partials_h, "audit.mixed_partials.h");
  if (audit.mixed_partials_order != 2 && audit.mixed_partials_order != 4) {
    throw ConfigError("config key 'audit.mixed_partials.order' must be 2 or 4");
  }
  check_count(audit.plus_branch.n_steps, 16, "audit.plus_branch.n_steps");
  check_positive(audit.sign_tolerance, "audit.sign_tolerance");
  if (!(plot.x.lo <= plot.x.hi)) throw ConfigError("config key 'plot.x' must satisfy lo <= hi");
  if (!(plot.xi.lo <= plot.xi.hi)) throw ConfigError("config key 'plot.xi' must satisfy lo <= hi");
  check_count(plot.nx, 1, "plot.nx");
  check_count(plot.n_xi, 1, "plot.n_xi");
  check_count(plot.nt, 1, "plot.nt");
  if (!(plot.t_max >= 0.0)) throw ConfigError("config key 'plot.t_max' must be non-negative");
  check_one_of(output.format, {"json", "csv", "plain"}, "output.format");
}

inline Json RunConfig::to_json() const {
  using namespace detail;
  Json j;
  j["command"] = command;
  j["solution"] = solution ? solution->to_json() : Json(nullptr);
  j["grid"] = grid ? grid_json(*grid) : Json(nullptr);
  j["scheme"] = {{"mode", scheme.mode == DerivativeMode::analytic ? "analytic" : "finite_difference"},
                 {"order", scheme.order},
                 {"h", optional_json(scheme.step)},
                 {"sign", scheme.sign}};
  j["roots"] = {{"bracket", interval_json(roots.bracket)}, {"tol", roots.tol}, {"subintervals", roots.subintervals}};
  j["elliptic"] = {{"kind", elliptic.kind}, {"beta", elliptic.beta}, {"k", elliptic.k}};
  j["breaking"] = {{"xi", interval_json(breaking.xi)}, {"n_samples", breaking.n_samples}};
  Json a;
  a["name"] = audit.name;
  a["tolerance"] = audit.tolerance;
  a["min_samples"] = audit.min_samples;
  a["antiderivative"] = {{"phi_lo", audit.antiderivative.phi_lo},
                         {"phi_hi", audit.antiderivative.phi_hi},
                         {"n", audit.antiderivative.n},
                         {"quad_tol", audit.antiderivative.quad_tol}};
  a["gradient_product"] = {{"h", audit.gradient_product_h}};
  a["mixed_partials"] = {{"h", audit.mixed_partials_h}, {"order", audit.mixed_partials_order}};
  a["plus_branch"] = {{"phi0", audit.plus_branch.phi0},
                      {"x_span", audit.plus_branch.x_span},
                      {"t_span", audit.plus_branch.t_span},
                      {"n_steps", audit.plus_branch.n_steps}};
  a["sign_tolerance"] = audit.sign_tolerance;
  j["audit"] = a;
  j["plot"] = {{"t_slices", plot.t_slices}, {"x", interval_json(plot.x)}, {"nx", plot.nx},
               {"xi", interval_json(plot.xi)}, {"n_xi", plot.n_xi},      {"t_max", plot.t_max},
               {"nt", plot.nt}};
  j["output"] = {{"format", output.format}, {"path", optional_json(output.path)}};
  j["fail_on_violation"] = fail_on_violation;
  return j;
}

inline RunConfig RunConfig::parse(const Json& j) {
  using detail::ObjectReader;
  ObjectReader r(j, "");
  RunConfig c;
  c.command = r.text("command", "");
  if (r.has("solution")) c.solution = SolutionSpec::parse(r.raw("solution"), "solution");
  else r.accept_null("solution");
  if (r.has("grid")) c.grid = detail::parse_grid(r.raw("grid"), "grid");
  else r.accept_null("grid");

  if (r.has("scheme")) {
    ObjectReader s(r.raw("scheme"), "scheme");
    const std::string mode = s.text("mode", "analytic");
    detail::check_one_of(mode, {"analytic", "finite_difference"}, "scheme.mode");
    c.scheme.mode = mode == "analytic" ? DerivativeMode::analytic : DerivativeMode::finite_difference;
    c.scheme.order = s.integer("order", c.scheme.order);
    c.scheme.step = s.optional_number("h");
    c.scheme.sign = s.integer("sign", c.scheme.sign);
    s.finish();
  } else {
    r.accept_null("scheme");
  }
  if (r.has("roots")) {
    ObjectReader s(r.raw("roots"), "roots");
    c.roots.bracket = s.interval("bracket", c.roots.bracket);
    c.roots.tol = s.number("tol", c.roots.tol);
    c.roots.subintervals = s.integer("subintervals", c.roots.subintervals);
    s.finish();
  } else {
    r.accept_null("roots");
  }
  if (r.has("elliptic")) {
    ObjectReader s(r.raw("elliptic"), "elliptic");
    c.elliptic.kind = s.text("kind", c.elliptic.kind);
    c.elliptic.beta = s.number("beta", c.elliptic.beta);
    c.elliptic.k = s.number("k", c.elliptic.k);
    s.finish();
  } else {
    r.accept_null("elliptic");
  }
  if (r.has("breaking")) {
    ObjectReader s(r.raw("breaking"), "breaking");
    c.breaking.xi = s.interval("xi", c.breaking.xi);
    c.breaking.n_samples = s.integer("n_samples", c.breaking.n_samples);
    s.finish();
  } else {
    r.accept_null("breaking");
  }
  if (r.has("audit")) {
    ObjectReader s(r.raw("audit"), "audit");
    auto& a = c.audit;
    a.name = s.text("name", a.name);
    a.tolerance = s.number("tolerance", a.tolerance);
    a.min_samples = s.integer("min_samples", a.min_samples);
    if (s.has("antiderivative")) {
      ObjectReader t(s.raw("antiderivative"), "audit.antiderivative");
      a.antiderivative.phi_lo = t.number("phi_lo", a.antiderivative.phi_lo);
      a.antiderivative.phi_hi = t.number("phi_hi", a.antiderivative.phi_hi);
      a.antiderivative.n = t.integer("n", a.antiderivative.n);
      a.antiderivative.quad_tol = t.number("quad_tol", a.antiderivative.quad_tol);
      t.finish();
    } else {
      s.accept_null("antiderivative");
    }
    if (s.has("gradient_product")) {
      ObjectReader t(s.raw("gradient_product"), "audit.gradient_product");
      a.gradient_product_h = t.number("h", a.gradient_product_h);
      t.finish();
    } else {
      s.accept_null("gradient_product");
    }
    if (s.has("mixed_partials")) {
      ObjectReader t(s.raw("mixed_partials"), "audit.mixed_partials");
      a.mixed_partials_h = t.number("h", a.mixed_partials_h);
      a.mixed_partials_order = t.integer("order", a.mixed_partials_order);
      t.finish();
    } else {
      s.accept_null("mixed_partials");
    }
    if (s.has("plus_branch")) {
      ObjectReader t(s.raw("plus_branch"), "audit.plus_branch");
      a.plus_branch.phi0 = t.number("phi0", a.plus_branch.phi0);
      a.plus_branch.x_span = t.number("x_span", a.plus_branch.x_span);
      a.plus_branch.t_span = t.number("t_span", a.plus_branch.t_span);
      a.plus_branch.n_steps = t.integer("n_steps", a.plus_branch.n_steps);
      t.finish();
    } else {
      s.accept_null("plus_branch");
    }
    a.sign_tolerance = s.number("sign_tolerance", a.sign_tolerance);
    s.finish();
  } else {
    r.accept_null("audit");
  }
  if (r.has("plot")) {
    ObjectReader s(r.raw("plot"), "plot");
    c.plot.t_slices = s.numbers("t_slices", c.plot.t_slices);
    c.plot.x = s.interval("x", c.plot.x);
    c.plot.nx = s.integer("nx", c.plot.nx);
    c.plot.xi = s.interval("xi", c.plot.xi);
    c.plot.n_xi = s.integer("n_xi", c.plot.n_xi);
    c.plot.t_max = s.number("t_max", c.plot.t_max);
    c.plot.nt = s.integer("nt", c.plot.nt);
    s.finish();
  } else {
    r.accept_null("plot");
  }
  if (r.has("output")) {
    ObjectReader s(r.raw("output"), "output");
    c.output.format = s.text("format", c.output.format);
    if (s.has("path")) c.output.path = s.text("path", "");
    else s.accept_null("path");
    s.finish();
  } else {
    r.accept_null("output");
  }
  c.fail_on_violation = r.boolean("fail_on_violation", false);
  r.finish();
  c.validate();
  return c;
}

inline RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse(j);
}

}  // namespace monge::cli

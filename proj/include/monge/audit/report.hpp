#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace monge::audit {

enum class Verdict { consistent, violated, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct AuditSettings {
  /// Deviation at or below which a claim is judged consistent.
  double tolerance = 1e-6;
  /// Fewer valid samples than this make the verdict inconclusive.
  int min_samples = 4;
};

/// Location of the largest deviation: a grid point (x,t) or an angle φ.
struct WorstPoint {
  enum class Kind { xt, phi };
  Kind kind = Kind::xt;
  double x = 0.0;
  double t = 0.0;
  double phi = 0.0;

  static WorstPoint at(double x, double t) { return {Kind::xt, x, t, 0.0}; }
  static WorstPoint angle(double phi) { return {Kind::phi, 0.0, 0.0, phi}; }
};

/// Findings of one audit. `sup_deviation` measures the audited claim;
/// `metrics` carries the other measured quantities that give it context.
struct AuditReport {
  std::string audit_name;
  double sup_deviation = 0.0;
  std::vector<std::pair<std::string, std::complex<double>>> fitted_constants;
  std::optional<WorstPoint> worst_point;
  int samples_used = 0;
  Verdict verdict = Verdict::inconclusive;
  double tolerance_used = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;

  std::optional<double> metric(const std::string& name) const {
    for (const auto& [k, v] : metrics) {
      if (k == name) return v;
    }
    return std::nullopt;
  }

  std::optional<std::complex<double>> constant(const std::string& name) const {
    for (const auto& [k, v] : fitted_constants) {
      if (k == name) return v;
    }
    return std::nullopt;
  }

  /// Applies the minimum-samples rule, then compares against the tolerance.
  void decide(const AuditSettings& settings) {
    tolerance_used = settings.tolerance;
    if (samples_used < settings.min_samples) {
      verdict = Verdict::inconclusive;
    } else {
      verdict = sup_deviation <= settings.tolerance ? Verdict::consistent : Verdict::violated;
    }
  }
};

}  // namespace monge::audit

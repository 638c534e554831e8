#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "monge/errors.hpp"
#include "monge/profile.hpp"

namespace monge {

/// Controls for the sign-sweep root search.
struct RootScan {
  Interval bracket{-10.0, 10.0};
  /// Polished roots satisfy |r(λ)| < tol.
  double tol = 1e-12;
  int subintervals = 256;
};

namespace detail {

inline void check_scan(const RootScan& scan, double x, double t) {
  if (!std::isfinite(x) || !std::isfinite(t)) throw DomainError("implicit solve: x and t must be finite");
  if (!std::isfinite(scan.bracket.lo) || !std::isfinite(scan.bracket.hi) ||
      !(scan.bracket.lo < scan.bracket.hi)) {
    throw DomainError("implicit solve: bracket must be a finite interval with lo < hi");
  }
  if (!(scan.tol > 0.0)) throw DomainError("implicit solve: tol must be positive");
  if (scan.subintervals < 1) throw DomainError("implicit solve: subintervals must be >= 1");
}

// Safeguarded Newton on a sign-changing bracket; falls back to bisection
// whenever the Newton step leaves the bracket or fails to shrink |r|.
template <class R, class DR>
double polish(const R& r, const DR& dr, double lo, double hi, double r_lo, double tol) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double x = 0.5 * (lo + hi);
  double fx = r(x);
  for (int iter = 0; iter < 200; ++iter) {
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (r_lo < 0.0)) {
      lo = x;
      r_lo = fx;
    } else {
      hi = x;
    }
    if (std::abs(fx) < tol) {
      // Converged; one more Newton step squeezes out the remaining rounding.
      const double d = dr(x);
      if (d != 0.0 && std::isfinite(d)) {
        const double nx = x - fx / d;
        if (nx >= lo && nx <= hi) {
          const double fn = r(nx);
          if (std::abs(fn) <= std::abs(fx)) return nx;
        }
      }
      return x;
    }
    if (hi - lo <= 4 * eps * std::max(1.0, std::abs(x))) return x;

    const double d = dr(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double fnext = r(next);
    if (std::abs(fnext) > 0.5 * std::abs(fx)) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = r(mid);
      if (std::abs(fmid) < std::abs(fnext)) {
        x = mid;
        fx = fmid;
        continue;
      }
    }
    x = next;
    fx = fnext;
  }
  return x;
}

}  // namespace detail

/// All roots of r on the bracket found by an N-interval sign sweep followed by
/// safeguarded Newton/bisection polishing. Sorted ascending. Tangential
/// (even-multiplicity) roots that produce no sign change are not reported.
template <class R, class DR>
std::vector<double> scan_roots(const R& r, const DR& dr, const RootScan& scan) {
  const int n = scan.subintervals;
  const double lo = scan.bracket.lo, step = scan.bracket.width() / n;
  std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
  std::vector<double> values(nodes.size());
  for (int i = 0; i <= n; ++i) {
    nodes[i] = (i == n) ? scan.bracket.hi : lo + step * i;
    values[i] = r(nodes[i]);
    if (!std::isfinite(values[i])) {
      throw DomainError("implicit solve: residual is not finite at lambda = " + std::to_string(nodes[i]));
    }
  }
  std::vector<double> roots;
  for (int i = 0; i <= n; ++i) {
    if (values[i] == 0.0) roots.push_back(nodes[i]);
    if (i < n && values[i] != 0.0 && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0)) {
      roots.push_back(detail::polish(r, dr, nodes[i], nodes[i + 1], values[i], scan.tol));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Roots λ of λ = G(x + λt) on the scan bracket.
inline std::vector<double> solve_whitham(const InitialProfile& profile, double x, double t,
                                         const RootScan& scan = {}) {
  detail::check_scan(scan, x, t);
  auto r = [&](double lam) { return lam - profile.value(x + lam * t); };
  auto dr = [&](double lam) { return 1.0 - t * profile.slope(x + lam * t); };
  return scan_roots(r, dr, scan);
}

/// Roots λ of x − λt = f(λ) on the scan bracket; f must have real coefficients.
inline std::vector<double> solve_leznov(const GaugeFunction& gauge, double x, double t,
                                        const RootScan& scan = {}) {
  detail::check_scan(scan, x, t);
  if (!gauge.is_real()) throw DomainError("solve_leznov: gauge function must have real coefficients");
  auto r = [&](double lam) { return x - lam * t - gauge(lam).real(); };
  auto dr = [&](double lam) { return -t - gauge.derivative(lam).real(); };
  return scan_roots(r, dr, scan);
}

struct BreakingTime {
  /// First t > 0 at which 1 − t·G′(ξ) vanishes.
  double time = 0.0;
  /// Characteristic foot ξ where G′ peaks.
  double xi = 0.0;
  double max_slope = 0.0;
};

/// Gradient-catastrophe time t* = 1 / max G′(ξ) over the interval, or nullopt
/// when G′ ≤ 0 everywhere sampled (characteristics never cross for t > 0).
inline std::optional<BreakingTime> breaking_time(const InitialProfile& profile, Interval xi,
                                                 int n_samples) {
  if (n_samples < 2) throw DomainError("breaking_time: n_samples must be >= 2");
  if (!std::isfinite(xi.lo) || !std::isfinite(xi.hi) || !(xi.lo <= xi.hi)) {
    throw DomainError("breaking_time: interval must be finite with lo <= hi");
  }
  const double step = xi.width() / (n_samples - 1);
  int best = 0;
  double best_slope = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const double s = profile.slope(i == n_samples - 1 ? xi.hi : xi.lo + step * i);
    if (!std::isfinite(s)) throw DomainError("breaking_time: G' is not finite on the interval");
    if (s > best_slope) {
      best_slope = s;
      best = i;
    }
  }
  double best_xi = best == n_samples - 1 ? xi.hi : xi.lo + step * best;

  // Golden-section refinement on the neighbouring cells.
  double a = std::max(xi.lo, best_xi - step), b = std::min(xi.hi, best_xi + step);
  const double ratio = (std::sqrt(5.0) - 1) / 2;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = profile.slope(c), fd = profile.slope(d);
  for (int iter = 0; iter < 200 && b - a > 1e-15 * std::max(1.0, std::abs(best_xi)); ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = profile.slope(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = profile.slope(d);
    }
  }
  const double refined_xi = 0.5 * (a + b);
  const double refined = profile.slope(refined_xi);
  if (std::isfinite(refined) && refined > best_slope) {
    best_slope = refined;
    best_xi = refined_xi;
  }
  if (!(best_slope > 0.0)) return std::nullopt;
  return BreakingTime{1.0 / best_slope, best_xi, best_slope};
}

}  // namespace monge

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "monge/errors.hpp"

namespace monge {

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Parametric initial data G(ξ) for the characteristics relation λ = G(x + λt).
class InitialProfile {
 public:
  /// G(ξ) = a + bξ
  struct Affine {
    double a = 0.0;
    double b = 0.0;
  };
  /// G(ξ) = Σ coeffs[n] ξⁿ
  struct Polynomial {
    std::vector<double> coeffs;
  };
  /// G(ξ) = Σ coeffs[n] e^{n·rate·ξ}
  struct ExpSeries {
    std::vector<double> coeffs;
    double rate = 0.0;
  };
  /// G(ξ) = amplitude · tanh(scale · ξ)
  struct Tanh {
    double amplitude = 1.0;
    double scale = 1.0;
  };
  using Family = std::variant<Affine, Polynomial, ExpSeries, Tanh>;

  InitialProfile() : family_(Affine{}) {}
  InitialProfile(Family family) : family_(std::move(family)) { validate(); }  // NOLINT

  static InitialProfile affine(double a, double b) { return Family{Affine{a, b}}; }
  static InitialProfile polynomial(std::vector<double> coeffs) {
    return Family{Polynomial{std::move(coeffs)}};
  }
  static InitialProfile exp_series(std::vector<double> coeffs, double rate) {
    return Family{ExpSeries{std::move(coeffs), rate}};
  }
  static InitialProfile tanh(double amplitude, double scale) {
    return Family{Tanh{amplitude, scale}};
  }
  static InitialProfile constant(double c) { return affine(c, 0.0); }

  const Family& family() const { return family_; }

  std::string family_name() const {
    return std::visit(
        [](const auto& f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Affine>) return "affine";
          else if constexpr (std::is_same_v<T, Polynomial>) return "polynomial";
          else if constexpr (std::is_same_v<T, ExpSeries>) return "exp_series";
          else return "tanh";
        },
        family_);
  }

  /// G(ξ)
  double value(double xi) const {
    return std::visit(
        [xi](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Affine>) {
            return f.a + f.b * xi;
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            double acc = 0.0;
            for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * xi + *it;
            return acc;
          } else if constexpr (std::is_same_v<T, ExpSeries>) {
            const double e = std::exp(f.rate * xi);
            double acc = 0.0;
            for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * e + *it;
            return acc;
          } else {
            return f.amplitude * std::tanh(f.scale * xi);
          }
        },
        family_);
  }

  /// G′(ξ)
  double slope(double xi) const {
    return std::visit(
        [xi](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Affine>) {
            return f.b;
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            double acc = 0.0;
            for (std::size_t n = f.coeffs.size(); n-- > 1;) {
              acc = acc * xi + static_cast<double>(n) * f.coeffs[n];
            }
            return acc;
          } else if constexpr (std::is_same_v<T, ExpSeries>) {
            const double e = std::exp(f.rate * xi);
            double acc = 0.0;
            for (std::size_t n = f.coeffs.size(); n-- > 1;) {
              acc = acc * e + static_cast<double>(n) * f.rate * f.coeffs[n];
            }
            return acc * e;
          } else {
            const double s = 1.0 / std::cosh(f.scale * xi);
            return f.amplitude * f.scale * s * s;
          }
        },
        family_);
  }

 private:
  void validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Affine>) {
            if (!finite(f.a) || !finite(f.b)) throw InvalidArgument("affine profile: non-finite parameter");
          } else if constexpr (std::is_same_v<T, Polynomial>) {
            if (f.coeffs.empty()) throw InvalidArgument("polynomial profile needs at least one coefficient");
            for (double c : f.coeffs) {
              if (!finite(c)) throw InvalidArgument("polynomial profile: non-finite coefficient");
            }
          } else if constexpr (std::is_same_v<T, ExpSeries>) {
            if (f.coeffs.empty()) throw InvalidArgument("exp_series profile needs at least one coefficient");
            if (!finite(f.rate)) throw InvalidArgument("exp_series profile: rate must be finite");
            for (double c : f.coeffs) {
              if (!finite(c)) throw InvalidArgument("exp_series profile: non-finite coefficient");
            }
          } else {
            if (!finite(f.amplitude) || !finite(f.scale)) throw InvalidArgument("tanh profile: non-finite parameter");
          }
        },
        family_);
  }

  Family family_;
};

/// Polynomial of degree ≤ 8 in one real variable with complex coefficients.
class GaugeFunction {
 public:
  using complex = std::complex<double>;
  static constexpr std::size_t kMaxDegree = 8;

  explicit GaugeFunction(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidArgument("gauge function needs at least one coefficient");
    if (coeffs_.size() > kMaxDegree + 1) {
      throw InvalidArgument("gauge function degree exceeds " + std::to_string(kMaxDegree));
    }
    for (const auto& c : coeffs_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw InvalidArgument("gauge function: non-finite coefficient");
      }
    }
  }

  static GaugeFunction real(const std::vector<double>& coeffs) {
    return GaugeFunction(std::vector<complex>(coeffs.begin(), coeffs.end()));
  }

  const std::vector<complex>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }

  bool is_real() const {
    for (const auto& c : coeffs_) {
      if (c.imag() != 0.0) return false;
    }
    return true;
  }

  complex operator()(double v) const {
    complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  complex derivative(double v) const {
    complex acc{};
    for (std::size_t n = coeffs_.size(); n-- > 1;) acc = acc * v + static_cast<double>(n) * coeffs_[n];
    return acc;
  }

 private:
  std::vector<complex> coeffs_;
};

}  // namespace monge

#pragma once

#include <cmath>
#include <string>

#include "monge/errors.hpp"
#include "monge/profile.hpp"

namespace monge {

/// Rectangular tensor grid over x × t with uniformly spaced nodes.
/// A single node along an axis sits at that axis' lower bound.
struct Grid {
  Interval x{0.0, 1.0};
  Interval t{0.0, 1.0};
  int nx = 11;
  int nt = 11;

  void validate() const {
    if (nx < 1 || nt < 1) throw InvalidArgument("grid counts must be >= 1");
    for (double v : {x.lo, x.hi, t.lo, t.hi}) {
      if (!std::isfinite(v)) throw InvalidArgument("grid ranges must be finite");
    }
    if (x.lo > x.hi || t.lo > t.hi) throw InvalidArgument("grid ranges must satisfy lo <= hi");
  }

  double x_at(int i) const { return node(x, nx, i); }
  double t_at(int j) const { return node(t, nt, j); }
  int size() const { return nx * nt; }

  bool operator==(const Grid&) const = default;

 private:
  static double node(const Interval& r, int n, int i) {
    if (n == 1) return r.lo;
    if (i == n - 1) return r.hi;
    return r.lo + r.width() * i / (n - 1);
  }
};

}  // namespace monge

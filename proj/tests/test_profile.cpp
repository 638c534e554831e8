#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "monge/profile.hpp"

namespace {

using monge::GaugeFunction;
using monge::InitialProfile;

double central_slope(const InitialProfile& g, double xi) {
  const double h = 1e-5;
  return (g.value(xi + h) - g.value(xi - h)) / (2 * h);
}

TEST(InitialProfile, FamilyValues) {
  EXPECT_DOUBLE_EQ(InitialProfile::affine(1, 2).value(3), 7);
  EXPECT_DOUBLE_EQ(InitialProfile::polynomial({1, 0, 3}).value(2), 13);
  EXPECT_DOUBLE_EQ(InitialProfile::tanh(2, 0.5).value(0), 0);
  // F(0) = c0 + c1 + c2 for the exponential series.
  EXPECT_DOUBLE_EQ(InitialProfile::exp_series({1, 2, 3}, 0.7).value(0), 6);
  EXPECT_NEAR(InitialProfile::exp_series({1, 2, 3}, 0.7).value(1.0),
              1 + 2 * std::exp(0.7) + 3 * std::exp(1.4), 1e-14);
}

TEST(InitialProfile, SlopeMatchesDifferenceQuotient) {
  const std::vector<InitialProfile> profiles = {
      InitialProfile::affine(0.3, -1.5), InitialProfile::polynomial({0.5, -1, 0.25, 0.1}),
      InitialProfile::exp_series({0.2, -0.4, 0.3}, -0.8), InitialProfile::tanh(1.7, 0.6)};
  for (const auto& g : profiles) {
    for (double xi = -2.0; xi <= 2.0; xi += 0.25) {
      EXPECT_NEAR(g.slope(xi), central_slope(g, xi), 1e-8) << g.family_name() << " at " << xi;
    }
  }
}

TEST(InitialProfile, Validation) {
  EXPECT_THROW(InitialProfile::exp_series({}, 1.0), monge::InvalidArgument);
  EXPECT_THROW(InitialProfile::exp_series({1.0}, INFINITY), monge::InvalidArgument);
  EXPECT_THROW(InitialProfile::polynomial({}), monge::InvalidArgument);
  EXPECT_THROW(InitialProfile::affine(NAN, 1), monge::InvalidArgument);
}

TEST(GaugeFunction, ComplexPolynomialArithmetic) {
  using c = std::complex<double>;
  const GaugeFunction f({c{1, 1}, c{0, -2}, c{3, 0}});
  EXPECT_EQ(f(2.0), c(13, -3));
  EXPECT_EQ(f.derivative(2.0), c(12, -2));
  EXPECT_EQ(f.degree(), 2u);
  EXPECT_FALSE(f.is_real());
  EXPECT_TRUE(GaugeFunction::real({0, 1}).is_real());
}

TEST(GaugeFunction, Validation) {
  EXPECT_THROW(GaugeFunction({}), monge::InvalidArgument);
  EXPECT_THROW(GaugeFunction::real(std::vector<double>(10, 1.0)), monge::InvalidArgument);
  EXPECT_NO_THROW(GaugeFunction::real(std::vector<double>(9, 1.0)));
}

}  // namespace

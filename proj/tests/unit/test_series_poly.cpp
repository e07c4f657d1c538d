#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cyclide/iso.hpp"
#include "cyclide/series_poly.hpp"
#include "support/reference_values.hpp"

using cyclide::SeriesPoly;
using S = SeriesPoly<double>;

TEST(SeriesPoly, Arithmetic) {
  const S f(3, {1.0, 2.0, 3.0, 4.0});
  const S g(3, {2.0, -1.0});
  const S p = f * g;
  EXPECT_DOUBLE_EQ(p[0], 2.0);
  EXPECT_DOUBLE_EQ(p[1], 3.0);
  EXPECT_DOUBLE_EQ(p[2], 4.0);
  EXPECT_DOUBLE_EQ(p[3], 5.0);
  const S d = f - 2.0 * f;
  EXPECT_DOUBLE_EQ(d[3], -4.0);
  EXPECT_DOUBLE_EQ((1.0 + g)[0], 3.0);
}

TEST(SeriesPoly, ProductTruncatesToSmallerOrder) {
  const S f(5, {1.0, 1.0});
  const S g(2, {1.0, 1.0});
  EXPECT_EQ((f * g).order(), 2u);
  EXPECT_EQ((f + g).order(), 2u);
}

TEST(SeriesPoly, ReciprocalOfGeometric) {
  const S r = (1.0 - S::variable(10)).reciprocal();
  for (std::size_t k = 0; k <= 10; ++k) EXPECT_DOUBLE_EQ(r[k], 1.0);
  EXPECT_THROW(S::variable(3).reciprocal(), std::domain_error);
}

TEST(SeriesPoly, RealPowerSquaresBack) {
  const S f(8, {2.0, 1.0, -0.5, 0.25});
  const S h = f.pow(0.5);
  const S back = h * h;
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_NEAR(back[k], f[k], 1e-14);
  const S binom = (1.0 + S::variable(6)).pow(-0.75);
  // (1 + t)^(-3/4): 1, -3/4, 21/32, -77/128
  EXPECT_DOUBLE_EQ(binom[1], -0.75);
  EXPECT_DOUBLE_EQ(binom[2], 21.0 / 32.0);
  EXPECT_DOUBLE_EQ(binom[3], -77.0 / 128.0);
  EXPECT_THROW((S::variable(3) + (-1.0)).pow(0.5), std::domain_error);
}

TEST(SeriesPoly, IntegerPower) {
  const S f = (1.0 + S::variable(4)).pow(3u);
  EXPECT_DOUBLE_EQ(f[0], 1.0);
  EXPECT_DOUBLE_EQ(f[1], 3.0);
  EXPECT_DOUBLE_EQ(f[2], 3.0);
  EXPECT_DOUBLE_EQ(f[3], 1.0);
  EXPECT_DOUBLE_EQ(f[4], 0.0);
}

TEST(SeriesPoly, ComposeWithEvenSeries) {
  // 1/(1 - u) with u = t^2 gives sum t^(2k).
  const S outer = (1.0 - S::variable(8)).reciprocal();
  const S t = S::variable(8);
  const S c = outer.compose(t * t);
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_DOUBLE_EQ(c[k], k % 2 == 0 ? 1.0 : 0.0);
  EXPECT_THROW(outer.compose(1.0 + t), std::domain_error);
}

TEST(SeriesPoly, DerivativeAndEvaluate) {
  const S f(3, {1.0, 2.0, 3.0, 4.0});
  const S df = f.derivative();
  EXPECT_EQ(df.order(), 2u);
  EXPECT_DOUBLE_EQ(df[2], 12.0);
  EXPECT_DOUBLE_EQ(f.evaluate(0.5), 1.0 + 1.0 + 0.75 + 0.5);
  EXPECT_DOUBLE_EQ(f.coeff(7), 0.0);
}

// The u_n recursion against series arithmetic on the generating function.
TEST(SeriesPoly, GeneratingFunctionMatchesRecurrence) {
  for (double R : {1.2, 1.5, 2.0, 3.0}) {
    const auto u = cyclide::iso::u_seq(R, 8);
    const S gen = cyclide::iso::u_generating_series(R, 8);
    // Series arithmetic in double loses about (R^2 - 1)^n eps to cancellation.
    for (std::size_t n = 0; n <= 8; ++n)
      EXPECT_NEAR(gen[n] / u[n], 1.0, n <= 6 ? 1e-10 : 1e-8) << "R=" << R << " n=" << n;
  }
  const auto u2 = cyclide::iso::u_seq(2.0, 6);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_NEAR(u2[n], ref::kU2[n], 1e-15 * ref::kU2[n]);
}

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cyclide/hypergeom.hpp"
#include "support/elliptic_oracle.hpp"
#include "support/reference_values.hpp"

using namespace cyclide;
using namespace cyclide::hypergeom;

namespace {

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

// The library elliptic integrals are good to a few 1e-14 near k = 1.
TEST(Hypergeom, AreaKernelMatchesEllipticForm) {
  for (double x : {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-6})
    EXPECT_NEAR(HGKernel::area()(x), oracle::area_kernel(x), 1e-13) << "x=" << x;
}

TEST(Hypergeom, FrozenValues) {
  EXPECT_NEAR(eval_2f1(-0.5, -0.5, 1.0, 0.5), ref::kArea_0_5, 2e-15);
  EXPECT_NEAR(eval_2f1(-1.5, -1.5, 1.0, 0.5), ref::kAux32_0_5, 2e-15);
  EXPECT_NEAR(eval_2f1(-0.5, -0.5, 2.0, 0.5), ref::kAux122_0_5, 2e-15);
  EXPECT_NEAR(eval_2f1(0.5, 0.25, 1.5, 0.7), ref::kGeneric, 2e-15);
  EXPECT_NEAR(eval_2f1(-2.0, 3.0, 1.0, 0.4), ref::kPolynomial, 1e-15);
  EXPECT_NEAR(eval_2f1(1.0, 1.0, 2.0, 0.5), 2.0 * std::log(2.0), 2e-15);
}

TEST(Hypergeom, NearOneWithoutSwitchingToBoundaryValue) {
  EXPECT_NEAR(HGKernel::area()(0.99), ref::kArea_0_99, 2e-15);
  EXPECT_NEAR(HGKernel::area()(1.0 - 1e-6), ref::kArea_1m1e6, 2e-15);
  EXPECT_NEAR(HGKernel::area()(1.0 - std::ldexp(1.0, -30)), ref::kArea_1m2p30, 2e-15);
}

TEST(Hypergeom, BoundaryValues) {
  using std::numbers::pi;
  EXPECT_DOUBLE_EQ(HGKernel::area()(1.0), 4.0 / pi);
  EXPECT_DOUBLE_EQ(HGKernel::aux_32()(1.0), 32.0 / (3.0 * pi));
  EXPECT_DOUBLE_EQ(HGKernel::aux_12_2()(1.0), 32.0 / (9.0 * pi));
  for (double R : {1.1, std::numbers::sqrt2, 2.0, 10.0})
    EXPECT_DOUBLE_EQ(eval_vol3f2(R, 1.0), 16.0 * R * R / (3.0 * pi));
  // Gauss summation agrees with the fixed values.
  EXPECT_NEAR(eval_2f1(-0.5, -0.5, 1.0, 1.0), 4.0 / pi, 1e-15);
  EXPECT_NEAR(eval_2f1(-1.5, -1.5, 1.0, 1.0), 32.0 / (3.0 * pi), 1e-14);
  EXPECT_NEAR(eval_2f1(-0.5, -0.5, 2.0, 1.0), 32.0 / (9.0 * pi), 1e-15);
}

TEST(Hypergeom, KernelsAgreeWithGeneric2F1) {
  for (double x : {0.0, 0.3, 0.6, 0.95}) {
    EXPECT_NEAR(HGKernel::aux_32()(x), eval_2f1(-1.5, -1.5, 1.0, x), 1e-15);
    EXPECT_NEAR(HGKernel::aux_12_2()(x), eval_2f1(-0.5, -0.5, 2.0, x), 1e-15);
  }
}

TEST(Hypergeom, VolumeKernelFrozenValues) {
  for (const auto& row : ref::kF3)
    EXPECT_NEAR(eval_vol3f2(row.R, row.x), row.value, 4e-15 * row.value) << "R=" << row.R << " x=" << row.x;
}

TEST(Hypergeom, VolumeKernelAtSquareTorusReduces) {
  const auto k = HGKernel::volume(std::numbers::sqrt2);
  EXPECT_TRUE(k.degenerate());
  EXPECT_FALSE(k.e().has_value());
  for (double x : {0.1, 0.5, 0.9}) EXPECT_DOUBLE_EQ(eval_vol3f2(std::numbers::sqrt2, x), eval_2f1(-1.5, -1.5, 1.0, x));
}

TEST(Hypergeom, VolumeKernelParameters) {
  const auto k = HGKernel::volume(2.0);
  ASSERT_TRUE(k.e().has_value());
  EXPECT_DOUBLE_EQ(*k.e(), 0.75);
  EXPECT_DOUBLE_EQ(k.inv_e(), 4.0 / 3.0);
  EXPECT_NEAR(*HGKernel::volume(std::sqrt(13.0 / 8.0)).e(), -4.0, 1e-14);
}

TEST(Hypergeom, IdentityResidual) {
  for (double R : {1.2, 1.5, std::sqrt(13.0 / 8.0), 2.0, 3.0})
    for (int i = 1; i <= 9; ++i) EXPECT_LE(check_3f2_identity(R, 0.1 * i), 1e-13) << R << " " << 0.1 * i;
  expect_code(ErrorCode::DomainError, [] { check_3f2_identity(std::numbers::sqrt2, 0.5); });
  expect_code(ErrorCode::DomainError, [] { check_3f2_identity(2.0, 1.0); });
}

TEST(Hypergeom, TailBoundIsHonoured) {
  const double xs[] = {0.5, 0.9, 0.999, 0.999999};
  const double refs[] = {ref::kArea_0_5, ref::kArea_0_9, ref::kArea_0_999, ref::kArea_1m1e6};
  for (double tol : {1e-6, 1e-10, 1e-15}) {
    for (int i = 0; i < 4; ++i) {
      const auto acc = hypergeom::detail::sum_weighted(-0.5L, -0.5L, 1.0L, 0.0L, xs[i], tol);
      EXPECT_LE(acc.tail_bound, tol);
      EXPECT_NEAR(static_cast<double>(acc.value()), refs[i], tol + 1e-15) << xs[i];
    }
  }
}

TEST(Hypergeom, TerminatingSeriesHasZeroTail) {
  const auto acc = hypergeom::detail::sum_weighted(-2.0L, 3.0L, 1.0L, 0.0L, 0.4L, 1e-15);
  EXPECT_EQ(acc.tail_bound, 0.0L);
  EXPECT_EQ(acc.n, 3u);
}

TEST(Hypergeom, Errors) {
  expect_code(ErrorCode::DivergentParameters, [] { eval_2f1(0.5, 0.5, 0.0, 0.5); });
  expect_code(ErrorCode::DivergentParameters, [] { eval_2f1(0.5, 0.5, -2.0, 0.5); });
  expect_code(ErrorCode::DivergentParameters, [] { eval_2f1(1.0, 1.0, 1.0, 1.0); });
  expect_code(ErrorCode::DomainError, [] { eval_2f1(0.5, 0.5, 1.0, -0.1); });
  expect_code(ErrorCode::DomainError, [] { eval_2f1(0.5, 0.5, 1.0, 1.5); });
  expect_code(ErrorCode::DomainError, [] { HGKernel::area()(std::nan("")); });
  expect_code(ErrorCode::DomainError, [] { HGKernel::volume(1.0); });
}

TEST(Hypergeom, SlowSeriesHitsTermCap) {
  // s = c + 1 - a - b = 0.5: terms decay like n^-1/2 at x close to 1.
  expect_code(ErrorCode::NoConvergence, [] { eval_2f1(0.5, 0.5, 0.5, 1.0 - 1e-9, 1e-15); });
}

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cyclide/iso.hpp"
#include "cyclide/quadrature.hpp"
#include "support/reference_values.hpp"

using namespace cyclide;
using namespace cyclide::iso;
using std::numbers::pi;

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

TEST(Iso, PointArgument) {
  const auto p = IsoPoint::make(2.0, 0.5);
  EXPECT_NEAR(p.x, 1.0 / (2.75 * 2.75), 1e-16);
  EXPECT_NEAR(p.one_minus_x, 1.0 - p.x, 1e-16);
  const auto edge = IsoPoint::make(2.0, 1.0);
  EXPECT_EQ(edge.x, 1.0);
  EXPECT_EQ(edge.one_minus_x, 0.0);
  double prev = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double x = IsoPoint::make(3.0, 2.0 * i / 100.0).x;
    EXPECT_GT(x, prev);
    EXPECT_LT(x, 1.0);
    prev = x;
  }
  expect_code(ErrorCode::DomainError, [] { IsoPoint::make(2.0, 1.1); });
}

TEST(Iso, ClosedFormsFrozen) {
  for (const auto& row : ref::kIso) {
    EXPECT_NEAR(area_closed(row.R, row.z) / row.area, 1.0, 1e-14) << row.R;
    EXPECT_NEAR(volume_closed(row.R, row.z) / row.volume, 1.0, 1e-14) << row.R;
    EXPECT_NEAR(iso_closed(row.R, row.z) / row.iso, 1.0, 1e-14) << row.R;
  }
  EXPECT_NEAR(iso_closed(2.0, 0.999), ref::kIso_2_0999, 1e-14);
  EXPECT_NEAR(iso_closed(3.0, 1.9), ref::kIso_3_19, 1e-14);
  EXPECT_NEAR(iso_closed(1.2, 0.1), ref::kIso_12_01, 1e-14);
}

TEST(Iso, ValuesAtZero) {
  for (double R : {1.1, 2.0, 7.0}) {
    const double k = R * R - 1.0;
    EXPECT_NEAR(area_closed(R, 0.0) / (4.0 * pi * pi * R / (k * k)), 1.0, 1e-15);
    EXPECT_NEAR(volume_closed(R, 0.0) / (2.0 * R * pi * pi / (k * k * k)), 1.0, 1e-15);
    EXPECT_NEAR(iso_closed(R, 0.0), 1.5 / std::sqrt(pi * R), 1e-15);
  }
}

TEST(Iso, RoundSphereEndpointIsExact) {
  for (double R : {1.1, std::numbers::sqrt2, 2.0, 10.0}) EXPECT_NEAR(iso_closed(R, R - 1.0), 1.0, 1e-15);
  expect_code(ErrorCode::DomainError, [] { area_closed(2.0, 1.0); });
  expect_code(ErrorCode::DomainError, [] { volume_closed(2.0, 1.0); });
}

TEST(Iso, AgreesWithQuadrature) {
  const quadrature::QuadratureSpec spec;
  for (double R : {1.2, 2.0}) {
    const quadrature::InvertedTorusIntegrand f(R, 0.45 * (R - 1.0));
    EXPECT_NEAR(area_closed(R, f.rho()) / quadrature::area_oracle(f, spec), 1.0, 1e-10);
    EXPECT_NEAR(volume_closed(R, f.rho()) / quadrature::volume_oracle(f, spec), 1.0, 1e-10);
  }
}

TEST(Iso, FullDomain) {
  EXPECT_NEAR(iso_full_domain(2.0, std::sqrt(3.0)), ref::kIsoAtZero_dualR2, 1e-14);
  EXPECT_NEAR(iso_full_domain(std::numbers::sqrt2, 1.0), 1.5 / std::sqrt(pi * std::numbers::sqrt2), 1e-14);
  EXPECT_EQ(iso_full_domain(2.0, 1.0), 1.0);
  EXPECT_NEAR(iso_full_domain(2.0, 1.5), ref::kIso_2_15, 1e-14);
  EXPECT_DOUBLE_EQ(iso_full_domain(2.0, 0.5), iso_closed(2.0, 0.5));
  expect_code(ErrorCode::DomainError, [] { iso_full_domain(2.0, 1.8); });
}

TEST(Iso, TaylorCoefficients) {
  const double pi2 = pi * pi;
  const auto a = taylor_coeffs_area(2.0);
  const auto v = taylor_coeffs_volume(2.0);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_NEAR(a[0] / (8.0 * pi2 / 9.0), 1.0, 1e-14);
  EXPECT_NEAR(a[2] / (168.0 * pi2 / 81.0), 1.0, 1e-14);
  EXPECT_NEAR(v[4] / (6.0 * pi2 * 1207.0 / 4374.0), 1.0, 1e-14);
  EXPECT_EQ(a[1], 0.0);
  EXPECT_EQ(v[3], 0.0);
}

// Finite-difference cross-check of the series route at higher order.
TEST(Iso, TaylorSeriesReproducesClosedForm) {
  for (double R : {1.5, 3.0}) {
    const auto a = taylor_coeffs_area(R, 8);
    const auto v = taylor_coeffs_volume(R, 8);
    const double z = 0.02 * (R - 1.0);
    double sa = 0.0, sv = 0.0;
    for (std::size_t k = 9; k-- > 0;) {
      sa = sa * z + a[k];
      sv = sv * z + v[k];
    }
    EXPECT_NEAR(sa / area_closed(R, z), 1.0, 1e-13);
    EXPECT_NEAR(sv / volume_closed(R, z), 1.0, 1e-13);
  }
}

TEST(Iso, FGH) {
  EXPECT_DOUBLE_EQ(f_eval(0.0), 1.0);
  EXPECT_DOUBLE_EQ(g_eval(2.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(h_eval(2.0, 0.0), 1.0);
  for (double R : {1.2, 2.0, 5.0}) {
    double pf = 0.0, pg = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double x = i / 100.0;
      const double f = f_eval(x), g = g_eval(R, x);
      EXPECT_NEAR(h_eval(R, x), f * f * f * g * g, 1e-13 * h_eval(R, x));
      if (i > 1) {
        EXPECT_GT(f, pf);
        EXPECT_GT(g, pg);
      }
      pf = f;
      pg = g;
    }
  }
  expect_code(ErrorCode::DomainError, [] { f_eval(1.0); });
}

TEST(Iso, PPolynomial) {
  for (double R : {1.01, 1.5, 2.0, 7.0}) {
    EXPECT_NEAR(p_poly(0, R), 3.0 - 3.0 * R * R, 1e-14 * R * R);
    const double t = 2.0 * R * R - 3.5;
    EXPECT_NEAR(p_lower_bound(1, R), t * t + 0.75, 1e-13 * (t * t + 0.75));
    for (std::size_t n = 1; n < 200; ++n) {
      EXPECT_GT(p_poly(n, R), p_lower_bound(n, R));
      EXPECT_GE(p_lower_bound(n + 1, R), p_lower_bound(n, R));
    }
  }
  for (std::size_t n = 1; n <= 10000; ++n) ASSERT_GT(p_poly(n, 2.0), 0.0);
}

TEST(Iso, USequence) {
  for (double R : {1.01, 2.0, 10.0}) {
    const auto u = u_seq(R, 1000);
    EXPECT_EQ(u[0], 1.0);
    EXPECT_NEAR(u[1], -p_poly(1, R) / (8.0 * p_poly(0, R)), 1e-15 * u[1]);
    for (double x : u) EXPECT_GT(x, 0.0);
  }
  expect_code(ErrorCode::DomainError, [] { u_seq(1.0, 3); });
}

TEST(Iso, MonotonicityReport) {
  for (double R : {1.05, std::numbers::sqrt2, 2.0}) {
    const auto rep = monotonicity_check(R, 1000, 10000, 1000);
    EXPECT_TRUE(rep.pass) << R;
    EXPECT_EQ(rep.grid.size(), 1000u);
    EXPECT_GT(rep.min_forward_difference, 0.0);
    EXPECT_EQ(rep.p_positive_through, 10000u);
    EXPECT_EQ(rep.u_positive_through, 1000u);
    EXPECT_NEAR(rep.grid.back(), (R - 1.0) * (1.0 - 1e-6), 1e-15);
  }
}

TEST(Iso, OverlapInterval) {
  const auto o = overlap_interval(2.0);
  EXPECT_NEAR(o.lower, ref::kIsoAtZero_dualR2, 1e-15);
  EXPECT_EQ(o.upper, 1.0);
  EXPECT_NEAR(overlap_interval(std::numbers::sqrt2).lower, 1.5 / std::sqrt(pi * std::numbers::sqrt2), 1e-15);
}

TEST(Iso, FindIsoMatches) {
  const auto m = find_iso_matches(2.0, 0.9);
  EXPECT_GT(m.below.rho, 0.0);
  EXPECT_LT(m.below.rho, 1.0);
  EXPECT_GT(m.above.rho, 1.0);
  EXPECT_LT(m.above.rho, std::sqrt(3.0));
  EXPECT_NEAR(m.below.iso, 0.9, 1e-10);
  EXPECT_NEAR(m.above.iso, 0.9, 1e-10);
  EXPECT_FALSE(geometry::shapes_equal(m.below.shape, m.above.shape, 1e-9));
  EXPECT_GT(geometry::maxwell_distance(m.below.maxwell, m.above.maxwell), 1e-6);
  // The Maxwell ratio of the inside branch matches that of its canonical form.
  EXPECT_NEAR(geometry::maxwell_distance(m.above.maxwell, geometry::maxwell_of(m.above.shape)), 0.0, 1e-12);

  expect_code(ErrorCode::OutOfRange, [] { find_iso_matches(2.0, 0.5); });
  expect_code(ErrorCode::OutOfRange, [] { find_iso_matches(2.0, 1.0); });
  expect_code(ErrorCode::RejectSquare, [] { find_iso_matches(std::numbers::sqrt2, 0.9); });
  expect_code(ErrorCode::RejectSquare, [] { find_iso_matches(1.4142135624, 0.9); });
}

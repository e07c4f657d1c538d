#ifndef CYCLIDE_GEOMETRY_HPP
#define CYCLIDE_GEOMETRY_HPP

// Shape space of toroidal Dupin cyclides i_x(T_R).
//
// Every inversion centre x lies on exactly one torus T(rho; R) of a family
// indexed by rho in [0, sqrt(R^2 - 1)], and all centres on that torus give
// homothetic cyclides. The shapes for rho > R - 1 coincide with shapes of the
// dual torus T_R' for a parameter below R' - 1, and rho = R - 1 (centre on
// T_R itself) gives a round sphere. Canonical coordinates (R, rho) with
// rho in [0, R - 1) label each remaining shape exactly once.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "cyclide/error.hpp"

namespace cyclide::geometry {

using Vec3 = std::array<double, 3>;

/// Tolerance band (relative to R) within which a centre counts as on T_R.
inline constexpr double kOnTorusTol = 1e-12;

/// Canonical label of a Euclidean shape, or the round-sphere sentinel.
class ShapeClass {
 public:
  static ShapeClass make(double R, double rho) {
    if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "shape class needs R > 1");
    if (!(rho >= 0.0 && rho < R - 1.0))
      throw Error(ErrorCode::DomainError, "canonical rho must lie in [0, R - 1)");
    return ShapeClass(R, rho, false);
  }
  static ShapeClass round_sphere() { return ShapeClass(0.0, 0.0, true); }

  double R() const { return R_; }
  double rho() const { return rho_; }
  bool is_round_sphere() const { return round_; }

 private:
  ShapeClass(double R, double rho, bool round) : R_(R), rho_(rho), round_(round) {}
  double R_;
  double rho_;
  bool round_;
};

/// Projective triple r1 : r2 : d of a symmetry-plane cross-section,
/// stored with r1 = 1.
class RatioTriple {
 public:
  static RatioTriple from_raw(double r1, double r2, double d) {
    if (!(r2 > 0.0 && r1 >= r2 && d > 0.0))
      throw Error(ErrorCode::DomainError, "ratio triple needs r1 >= r2 > 0 and d > 0");
    return RatioTriple(r2 / r1, d / r1);
  }

  double r1() const { return 1.0; }
  double r2() const { return r2_; }
  double d() const { return d_; }

  RatioTriple normalized() const { return *this; }

  /// True when this triple equals r1 : r2 : d up to scale, component-wise to tol.
  bool proportional_to(double r1, double r2, double d, double tol) const {
    return std::fabs(r2_ - r2 / r1) <= tol && std::fabs(d_ - d / r1) <= tol;
  }

 private:
  RatioTriple(double r2, double d) : r2_(r2), d_(d) {}
  double r2_;
  double d_;
};

/// a : f : (L - a) with a = d/2, f = (r1 - r2)/2, L = (r1 + r2 + d)/2,
/// normalized so a = 1 (or so the largest entry is 1 when a = 0).
struct MaxwellRatio {
  double a;
  double f;
  double l_minus_a;
};

struct PlanePoint {
  double rho_coord;
  double z_coord;
};

inline PlanePoint to_plane_point(const Vec3& x) { return {std::hypot(x[0], x[1]), x[2]}; }

namespace detail {

inline void check_R(double R) {
  if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
}

// Accepts rho up to a few ulps past sqrt(R^2 - 1), so that the far endpoint
// survives a round trip through dual_params, and clamps it back.
inline double check_family_rho(double R, double rho) {
  check_R(R);
  const double top = std::sqrt((R - 1.0) * (R + 1.0));
  if (!(rho >= 0.0 && rho <= top * (1.0 + 1e-14)))
    throw Error(ErrorCode::DomainError, "rho must lie in [0, sqrt(R^2 - 1)]");
  return std::min(rho, top);
}

// One-dimensional inversion about the unit "circle" centred at rho.
inline double invert_1d(double x, double rho) { return rho + 1.0 / (x - rho); }

}  // namespace detail

/// P1-ratio of i_[rho,0,0](T_R) for rho in [0, R - 1).
inline RatioTriple p1_ratio_outside(double R, double rho) {
  detail::check_R(R);
  if (!(rho >= 0.0 && rho < R - 1.0)) throw Error(ErrorCode::DomainError, "outside branch needs rho in [0, R - 1)");
  const double r1 = (R + rho) * (R + rho) - 1.0;
  const double r2 = (R - rho - 1.0) * (R - rho + 1.0);
  const double d = 2.0 * R * (R * R - rho * rho - 1.0);
  // r1 - r2 = 4R rho, zero at the round-sphere end.
  return RatioTriple::from_raw(r1, std::min(r2, r1), d);
}

/// P1-ratio of i_[rho,0,0](T_R) for rho in (R - 1, sqrt(R^2 - 1)].
inline RatioTriple p1_ratio_inside(double R, double rho) {
  detail::check_R(R);
  if (!(rho > R - 1.0)) throw Error(ErrorCode::DomainError, "inside branch needs rho in (R - 1, sqrt(R^2 - 1)]");
  rho = detail::check_family_rho(R, rho);
  const double r1 = (R - 1.0) * ((R + 1.0) * (R + 1.0) - rho * rho);
  const double r2 = (R + 1.0) * (rho - R + 1.0) * (rho + R - 1.0);
  const double d = 4.0 * R * rho;
  // r1 - r2 = 2R(R^2 - 1 - rho^2) >= 0; equality at the far end can round either way.
  return RatioTriple::from_raw(r1, std::min(r2, r1), d);
}

enum class Branch { Outside, Inside };

/// P1-ratio assembled from the images of the cross-section circles under the
/// 1-D inversion x -> rho + 1/(x - rho).
inline RatioTriple ratios_from_1d_inversions(double R, double rho, Branch branch) {
  using detail::invert_1d;
  detail::check_R(R);
  double r1, r2, d;
  if (branch == Branch::Outside) {
    if (!(rho >= 0.0 && rho < R - 1.0)) throw Error(ErrorCode::DomainError, "outside branch needs rho in [0, R - 1)");
    // P1 cross-section of T_R: circles on [R-1, R+1] and [-(R+1), -(R-1)].
    const double a = invert_1d(R - 1.0, rho), b = invert_1d(R + 1.0, rho);
    const double c = invert_1d(-(R + 1.0), rho), e = invert_1d(-(R - 1.0), rho);
    r1 = (a - b) / 2.0;
    r2 = (c - e) / 2.0;
    d = (a + b) / 2.0 - (c + e) / 2.0;
    r2 = std::min(r2, r1);
  } else {
    if (!(rho > R - 1.0)) throw Error(ErrorCode::DomainError, "inside branch needs rho in (R - 1, sqrt(R^2 - 1)]");
    rho = detail::check_family_rho(R, rho);
    // P2 cross-section of T_R: concentric circles of radii R-1 and R+1.
    const double a = invert_1d(-(R - 1.0), rho), b = invert_1d(R - 1.0, rho);
    const double c = invert_1d(R + 1.0, rho), e = invert_1d(-(R + 1.0), rho);
    r1 = (a - b) / 2.0;
    r2 = (c - e) / 2.0;
    d = std::fabs((c + e) / 2.0 - (a + b) / 2.0);
    r2 = std::min(r2, r1);
  }
  return RatioTriple::from_raw(r1, r2, d);
}

/// Raw P2 values r1~ : r2~ : d~ of the same cyclide. d~ = 0 is legal here
/// (concentric circles), so this is not a RatioTriple.
struct P2Values {
  double r1;
  double r2;
  double d;
};

/// r1~ = (d + r1 + r2)/2, r2~ = (d - r1 - r2)/2, d~ = r1 - r2, computed from
/// the stored (normalized) triple.
inline P2Values p2_from_p1(const RatioTriple& t) {
  const double sum = t.r1() + t.r2();
  if (!(t.d() > sum))
    throw Error(ErrorCode::DegenerateConfiguration, "P1 circles must be exterior to each other (d > r1 + r2)");
  return {(t.d() + sum) / 2.0, (t.d() - sum) / 2.0, t.r1() - t.r2()};
}

inline MaxwellRatio maxwell_from_p1(const RatioTriple& t) {
  const double a = t.d() / 2.0;
  const double f = (t.r1() - t.r2()) / 2.0;
  const double l_minus_a = (t.r1() + t.r2()) / 2.0;
  if (a > 0.0) return {1.0, f / a, l_minus_a / a};
  const double scale = std::max(std::fabs(f), std::fabs(l_minus_a));
  return {0.0, f / scale, l_minus_a / scale};
}

/// Largest component-wise difference of two Maxwell ratios.
inline double maxwell_distance(const MaxwellRatio& m1, const MaxwellRatio& m2) {
  return std::max({std::fabs(m1.a - m2.a), std::fabs(m1.f - m2.f), std::fabs(m1.l_minus_a - m2.l_minus_a)});
}

struct DualPair {
  double R;
  double rho;
};

/// (R', rho') = (R, (s - rho)/(s + rho)) / s with s = sqrt(R^2 - 1).
/// An involution with i_rho(T_R) = i_rho'(T_R').
inline DualPair dual_params(double R, double rho) {
  rho = detail::check_family_rho(R, rho);
  const double s = std::sqrt((R - 1.0) * (R + 1.0));
  return {R / s, (s - rho) / ((s + rho) * s)};
}

/// Family parameter rho of the torus T(rho; R) through x, or nullopt when
/// x lies on T_R itself (its image is a round sphere).
inline std::optional<double> classify_center(const Vec3& x, double R) {
  detail::check_R(R);
  const PlanePoint p = to_plane_point(x);
  const double dist = std::fabs(std::hypot(p.rho_coord - R, p.z_coord) - 1.0);
  if (dist <= kOnTorusTol * R) return std::nullopt;
  // The z-axis is T(0; R).
  if (p.rho_coord == 0.0) return 0.0;
  const double k = R * R - 1.0;
  const double c = (p.rho_coord * p.rho_coord + p.z_coord * p.z_coord + k) / (2.0 * p.rho_coord);
  // Smaller root of rho^2 - 2 c rho + k = 0, in cancellation-free form.
  const double disc = std::sqrt(std::max(0.0, c * c - k));
  return std::min(k / (c + disc), std::sqrt(k));
}

/// Canonical ShapeClass for a family parameter rho in [0, sqrt(R^2 - 1)].
inline ShapeClass canonicalize(double R, double rho) {
  rho = detail::check_family_rho(R, rho);
  const double edge = R - 1.0;
  if (std::fabs(rho - edge) <= kOnTorusTol * R) return ShapeClass::round_sphere();
  if (rho < edge) return ShapeClass::make(R, rho);
  const DualPair d = dual_params(R, rho);
  return ShapeClass::make(d.R, std::min(d.rho, std::nextafter(d.R - 1.0, 0.0)));
}

inline ShapeClass classify_shape(const Vec3& x, double R) {
  const auto rho = classify_center(x, R);
  if (!rho) return ShapeClass::round_sphere();
  return canonicalize(R, *rho);
}

/// phi(R, rho) = (2 rho / D, (R^2 + rho^2 - 1) / (R D)), D = R^2 - rho^2 - 1;
/// the Maxwell ratio coordinates of the canonical shape.
inline std::pair<double, double> phi(double R, double rho) {
  detail::check_R(R);
  if (!(rho >= 0.0 && rho < R - 1.0)) throw Error(ErrorCode::DomainError, "phi needs rho in [0, R - 1)");
  const double D = R * R - rho * rho - 1.0;
  return {2.0 * rho / D, (R * R + rho * rho - 1.0) / (R * D)};
}

/// Inverse of phi on {a in [0, 1), b in (a, 1)}.
///
/// R = sqrt(1 - a^2) / sqrt(b^2 - a^2) and rho solves a rho^2 + 2 rho - a (R^2 - 1) = 0;
/// the root is written as a (R^2 - 1) / (1 + sqrt(1 + a^2 (R^2 - 1))), which
/// tends to 0 as a -> 0.
inline std::pair<double, double> phi_inv(double a, double b) {
  if (!(a >= 0.0 && a < 1.0 && b > a && b < 1.0))
    throw Error(ErrorCode::DomainError, "phi_inv needs a in [0, 1) and b in (a, 1)");
  const double gap = (b - a) * (b + a);
  const double R = std::sqrt((1.0 - a) * (1.0 + a) / gap);
  const double k = (1.0 - b) * (1.0 + b) / gap;  // R^2 - 1
  const double rho = a * k / (1.0 + std::sqrt(1.0 + a * a * k));
  return {R, rho};
}

/// Major radius of the torus whose inversions are homothetic to the
/// stereographic images of the Clifford torus with parameter alpha.
inline double alpha_to_R(double alpha) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2.0))
    throw Error(ErrorCode::DomainError, "alpha must lie in (0, pi/2)");
  return 1.0 / std::sin(alpha);
}

inline double R_to_alpha(double R) {
  detail::check_R(R);
  return std::asin(1.0 / R);
}

/// Equality of canonical shapes: both round spheres, or |dR| <= tol R and
/// |drho| <= tol max(rho, 1).
inline bool shapes_equal(const ShapeClass& s1, const ShapeClass& s2, double tol) {
  if (s1.is_round_sphere() || s2.is_round_sphere()) return s1.is_round_sphere() && s2.is_round_sphere();
  return std::fabs(s1.R() - s2.R()) <= tol * s1.R() &&
         std::fabs(s1.rho() - s2.rho()) <= tol * std::max(s1.rho(), 1.0);
}

/// Maxwell ratio of a canonical (non-spherical) shape.
inline MaxwellRatio maxwell_of(const ShapeClass& s) {
  if (s.is_round_sphere()) throw Error(ErrorCode::DomainError, "a round sphere has no Maxwell ratio");
  return maxwell_from_p1(p1_ratio_outside(s.R(), s.rho()));
}

}  // namespace cyclide::geometry

#endif  // CYCLIDE_GEOMETRY_HPP

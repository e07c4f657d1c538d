#ifndef CYCLIDE_ISO_HPP
#define CYCLIDE_ISO_HPP

// Closed forms for the area, volume and isoperimetric ratio of
// i_[z,0,0](T_R), z in [0, R - 1):
//
//   A_R(z) = 4 pi^2 R ((R^2-1)^2 - z^4) / (((R-1)^2 - z^2)^2 ((R+1)^2 - z^2)^2) * F2(x)
//   V_R(z) = 2 R pi^2 (R^2-1-z^2)^3 / (((R-1)^2 - z^2)^3 ((R+1)^2 - z^2)^3) * F3(x)
//
// with x = 4 z^2 / (R^2 - 1 - z^2)^2, F2 = 2F1(-1/2,-1/2;1;x) and F3 the
// volume 3F2 kernel. The ratio
//
//   Iso_R(z)^2 = 9/(4 pi R) * F3^2 / F2^3 * ((R^2 - z^2 - 1)/(R^2 + z^2 - 1))^3
//
// runs from 3/(2 sqrt(pi R)) at z = 0 to 1 at z = R - 1, where x = 1.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cyclide/error.hpp"
#include "cyclide/geometry.hpp"
#include "cyclide/hypergeom.hpp"
#include "cyclide/parallel.hpp"
#include "cyclide/series_poly.hpp"

namespace cyclide::iso {

using hypergeom::kDefaultTol;

/// A point z of the canonical parameter range together with the
/// hypergeometric argument x(z). 1 - x is kept separately so x = 1 is exact
/// at z = R - 1.
struct IsoPoint {
  double R;
  double z;
  double x;
  double one_minus_x;

  static IsoPoint make(double R, double z) {
    if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
    if (!(z >= 0.0 && z <= R - 1.0)) throw Error(ErrorCode::DomainError, "z must lie in [0, R - 1]");
    const double D = (R - 1.0) * (R + 1.0) - z * z;
    // 1 - x = (R-1-z)(R+1+z)(R+1-z)(R-1+z) / D^2
    const double omx = (R - 1.0 - z) * (R + 1.0 + z) * (R + 1.0 - z) * (R - 1.0 + z) / (D * D);
    double x = 2.0 * z / D;
    x *= x;
    if (omx == 0.0)
      x = 1.0;
    else
      x = std::min(x, std::nextafter(1.0, 0.0));
    return {R, z, x, omx};
  }
};

inline double area_closed(double R, double z, double tol = kDefaultTol) {
  using std::numbers::pi;
  if (!(z < R - 1.0)) throw Error(ErrorCode::DomainError, "area needs z in [0, R - 1)");
  const IsoPoint p = IsoPoint::make(R, z);
  const double k = (R - 1.0) * (R + 1.0);
  const double inner = (R - 1.0 - z) * (R - 1.0 + z);
  const double outer = (R + 1.0 - z) * (R + 1.0 + z);
  const double pref = 4.0 * pi * pi * R * (k - z * z) * (k + z * z) / (inner * inner * outer * outer);
  return pref * hypergeom::HGKernel::area()(p.x, tol);
}

inline double volume_closed(double R, double z, double tol = kDefaultTol) {
  using std::numbers::pi;
  if (!(z < R - 1.0)) throw Error(ErrorCode::DomainError, "volume needs z in [0, R - 1)");
  const IsoPoint p = IsoPoint::make(R, z);
  const double D = (R - 1.0) * (R + 1.0) - z * z;
  const double inner = (R - 1.0 - z) * (R - 1.0 + z);
  const double outer = (R + 1.0 - z) * (R + 1.0 + z);
  const double ratio = D / (inner * outer);
  return 2.0 * R * pi * pi * ratio * ratio * ratio * hypergeom::eval_vol3f2(R, p.x, tol);
}

/// Isoperimetric ratio 6 sqrt(pi) V / A^(3/2) on z in [0, R - 1].
inline double iso_closed(double R, double z, double tol = kDefaultTol) {
  using std::numbers::pi;
  const IsoPoint p = IsoPoint::make(R, z);
  const double f2 = hypergeom::HGKernel::area()(p.x, tol);
  const double f3 = hypergeom::eval_vol3f2(R, p.x, tol);
  const double k = (R - 1.0) * (R + 1.0);
  const double shape = (k - z * z) / (k + z * z);
  return std::sqrt(9.0 / (4.0 * pi * R)) * f3 / std::pow(f2, 1.5) * std::pow(shape, 1.5);
}

/// Isoperimetric ratio of i_rho(T_R) over the whole family rho in
/// [0, sqrt(R^2 - 1)]; the part past R - 1 is evaluated on the dual torus.
inline double iso_full_domain(double R, double rho, double tol = kDefaultTol) {
  rho = geometry::detail::check_family_rho(R, rho);
  if (std::fabs(rho - (R - 1.0)) <= geometry::kOnTorusTol * R) return 1.0;
  if (rho < R - 1.0) return iso_closed(R, rho, tol);
  const auto dual = geometry::dual_params(R, rho);
  return iso_closed(dual.R, std::min(dual.rho, dual.R - 1.0), tol);
}

// ---------------------------------------------------------------------------
// Taylor coefficients

namespace detail {

/// sum_{n<=order} h_n (1 + n lambda) t^n for the kernel parameters.
inline SeriesPoly<double> kernel_series(const hypergeom::HGKernel& kernel, std::size_t order) {
  SeriesPoly<double> s(order);
  const double lambda = kernel.kind() == hypergeom::KernelKind::Vol3F2 ? kernel.inv_e() : 0.0;
  double h = 1.0;
  for (std::size_t n = 0; n <= order; ++n) {
    const double dn = static_cast<double>(n);
    s[n] = h * (1.0 + dn * lambda);
    h *= (kernel.a() + dn) * (kernel.b() + dn) / ((kernel.c() + dn) * (dn + 1.0));
  }
  return s;
}

struct WSeries {
  SeriesPoly<double> w, x, inner, outer;
  double k;
};

// Series in w = z^2 shared by both closed forms.
inline WSeries w_series(double R, std::size_t order) {
  const auto w = SeriesPoly<double>::variable(order);
  const double k = (R - 1.0) * (R + 1.0);
  const auto D = k - w;
  auto x = 4.0 * w * (D * D).reciprocal();
  return {w, std::move(x), (R - 1.0) * (R - 1.0) - w, (R + 1.0) * (R + 1.0) - w, k};
}

inline std::vector<double> to_z_coefficients(const SeriesPoly<double>& in_w, std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  for (std::size_t k = 0; 2 * k <= order; ++k) c[2 * k] = in_w.coeff(k);
  return c;
}

}  // namespace detail

/// Taylor coefficients c_0..c_order of A_R(z) at z = 0 (odd ones vanish),
/// by series arithmetic on the closed form.
inline std::vector<double> taylor_coeffs_area(double R, std::size_t order = 4) {
  using std::numbers::pi;
  if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
  const std::size_t m = order / 2;
  const auto s = detail::w_series(R, m);
  const auto num = 4.0 * pi * pi * R * (s.k * s.k - s.w * s.w);
  const auto den = (s.inner * s.outer).pow(2u);
  const auto kernel = detail::kernel_series(hypergeom::HGKernel::area(), m).compose(s.x);
  return detail::to_z_coefficients(num * den.reciprocal() * kernel, order);
}

/// Taylor coefficients c_0..c_order of V_R(z) at z = 0.
inline std::vector<double> taylor_coeffs_volume(double R, std::size_t order = 4) {
  using std::numbers::pi;
  if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
  const std::size_t m = order / 2;
  const auto s = detail::w_series(R, m);
  const auto num = 2.0 * R * pi * pi * (s.k - s.w).pow(3u);
  const auto den = (s.inner * s.outer).pow(3u);
  const auto kernel = detail::kernel_series(hypergeom::HGKernel::volume(R), m).compose(s.x);
  return detail::to_z_coefficients(num * den.reciprocal() * kernel, order);
}

// ---------------------------------------------------------------------------
// Monotonicity certificate

namespace detail {

inline void check_unit_interval(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw Error(ErrorCode::DomainError, "x must lie in [0, 1)");
}

}  // namespace detail

/// f(x) = (1 + x)^(1/2) / 2F1(-1/2,-1/2;1;x).
inline double f_eval(double x, double tol = kDefaultTol) {
  detail::check_unit_interval(x);
  return std::sqrt(1.0 + x) / hypergeom::HGKernel::area()(x, tol);
}

/// g_R(x) = 3F2(...; x) / ((1 + x)^(3/4) (1 + (R^2 - 1) x)^(3/4)).
inline double g_eval(double R, double x, double tol = kDefaultTol) {
  detail::check_unit_interval(x);
  const double k = (R - 1.0) * (R + 1.0);
  return hypergeom::eval_vol3f2(R, x, tol) / std::pow((1.0 + x) * (1.0 + k * x), 0.75);
}

/// h_R(x) = 3F2^2 / 2F1^3 * (1 + (R^2 - 1) x)^(-3/2), which equals f^3 g_R^2.
inline double h_eval(double R, double x, double tol = kDefaultTol) {
  detail::check_unit_interval(x);
  const double k = (R - 1.0) * (R + 1.0);
  const double f3 = hypergeom::eval_vol3f2(R, x, tol);
  const double f2 = hypergeom::HGKernel::area()(x, tol);
  return f3 * f3 / (f2 * f2 * f2) * std::pow(1.0 + k * x, -1.5);
}

/// p_n(R) = 4(R^4+4R^2-4) n^3 + 6(R^4+R^2-2) n^2 + (2R^4-13R^2+10) n - 3R^2 + 3.
inline double p_poly(std::size_t n, double R) {
  const double r2 = R * R;
  const double r4 = r2 * r2;
  const double dn = static_cast<double>(n);
  return ((4.0 * (r4 + 4.0 * r2 - 4.0) * dn + 6.0 * (r4 + r2 - 2.0)) * dn + (2.0 * r4 - 13.0 * r2 + 10.0)) * dn -
         3.0 * r2 + 3.0;
}

/// Lower bound 4R^4 n^3 + (10 - 11R^2) n + 3 - 3R^2 < p_n(R) for n >= 1, R > 1.
/// Increasing in n >= 1, with value (2R^2 - 7/2)^2 + 3/4 at n = 1.
inline double p_lower_bound(std::size_t n, double R) {
  const double r2 = R * R;
  const double dn = static_cast<double>(n);
  return 4.0 * r2 * r2 * dn * dn * dn + (10.0 - 11.0 * r2) * dn + 3.0 - 3.0 * r2;
}

/// u_0 .. u_N from u_0 = 1 and
///   u_{n+1} / u_n = (2n-1)(2n+1) p_{n+1}(R) / (4 (n+2)(n+1) p_n(R)).
inline std::vector<double> u_seq(double R, std::size_t N) {
  if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
  std::vector<double> u(N + 1);
  u[0] = 1.0;
  double p_curr = p_poly(0, R);
  for (std::size_t n = 0; n < N; ++n) {
    const double p_next = p_poly(n + 1, R);
    if (p_curr == 0.0) throw Error(ErrorCode::ZeroDenominator, "p_n(R) vanished in the u_n recursion");
    const double dn = static_cast<double>(n);
    u[n + 1] = u[n] * (2.0 * dn - 1.0) * (2.0 * dn + 1.0) * p_next / (4.0 * (dn + 2.0) * (dn + 1.0) * p_curr);
    p_curr = p_next;
  }
  return u;
}

/// Power series of 4 g_R'(x) (1+x)^(7/4) (1+(R^2-1)x)^(7/4) / (3 (1-x)^2 (R^2-1))
/// to the given order, from series arithmetic on g_R. Its coefficients are
/// the u_n(R).
inline SeriesPoly<double> u_generating_series(double R, std::size_t order) {
  if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
  const double k = (R - 1.0) * (R + 1.0);
  const auto x = SeriesPoly<double>::variable(order + 1);
  const auto one_x = 1.0 + x;
  const auto one_kx = 1.0 + k * x;
  const auto g = detail::kernel_series(hypergeom::HGKernel::volume(R), order + 1) * one_x.pow(-0.75) *
                 one_kx.pow(-0.75);
  const auto one_x_short = 1.0 + SeriesPoly<double>::variable(order);
  const auto one_kx_short = 1.0 + k * SeriesPoly<double>::variable(order);
  const auto one_minus_x = 1.0 - SeriesPoly<double>::variable(order);
  return (4.0 / (3.0 * k)) * (g.derivative() * one_x_short.pow(1.75) * one_kx_short.pow(1.75) *
                              (one_minus_x * one_minus_x).reciprocal());
}

struct MonotonicityReport {
  double R = 0.0;
  std::vector<double> grid;
  std::vector<double> iso_values;
  double min_forward_difference = 0.0;
  /// Largest n with p_1..p_n > 0 (checked up to p_horizon).
  std::size_t p_positive_through = 0;
  std::size_t p_horizon = 0;
  /// Largest n with u_0..u_n > 0 (checked up to u_horizon).
  std::size_t u_positive_through = 0;
  std::size_t u_horizon = 0;
  bool pass = false;
};

/// Forward differences of Iso_R on a uniform grid of [0, R - 1 - 1e-6 (R - 1)]
/// plus positivity of p_n (n >= 1) and u_n up to the given horizons.
inline MonotonicityReport monotonicity_check(double R, std::size_t grid_size = 1000, std::size_t p_horizon = 10000,
                                             std::size_t u_horizon = 1000, double tol = kDefaultTol) {
  if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
  if (grid_size < 2) throw Error(ErrorCode::DomainError, "grid needs at least two points");
  MonotonicityReport rep;
  rep.R = R;
  const double top = (R - 1.0) * (1.0 - 1e-6);
  rep.grid.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i)
    rep.grid[i] = top * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  rep.iso_values = parallel_map(grid_size, [&](std::size_t i) { return iso_closed(R, rep.grid[i], tol); });
  rep.min_forward_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < grid_size; ++i)
    rep.min_forward_difference = std::min(rep.min_forward_difference, rep.iso_values[i] - rep.iso_values[i - 1]);

  rep.p_horizon = p_horizon;
  for (std::size_t n = 1; n <= p_horizon && p_poly(n, R) > 0.0; ++n) rep.p_positive_through = n;

  rep.u_horizon = u_horizon;
  const auto u = u_seq(R, u_horizon);
  std::size_t n = 0;
  while (n < u.size() && u[n] > 0.0) ++n;
  rep.u_positive_through = n == 0 ? 0 : n - 1;

  rep.pass = rep.min_forward_difference > 0.0 && rep.p_positive_through == p_horizon &&
             n == u.size();
  return rep;
}

// ---------------------------------------------------------------------------
// Non-uniqueness

inline constexpr double kSquareBand = 1e-9;

struct OverlapInterval {
  double lower;  // max(3/(2 sqrt(pi R)), 3/(2 sqrt(pi R')))
  double upper;  // 1 (excluded)
};

inline OverlapInterval overlap_interval(double R) {
  using std::numbers::pi;
  if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "R must exceed 1");
  const double dual_R = R / std::sqrt((R - 1.0) * (R + 1.0));
  return {std::max(1.5 / std::sqrt(pi * R), 1.5 / std::sqrt(pi * dual_R)), 1.0};
}

struct IsoMatch {
  double rho;
  double iso;
  geometry::ShapeClass shape;
  geometry::MaxwellRatio maxwell;
};

struct IsoMatches {
  IsoMatch below;  // rho in [0, R - 1)
  IsoMatch above;  // rho in (R - 1, sqrt(R^2 - 1)]
};

namespace detail {

template <class F>
double bisect(F&& f, double lo, double hi, double target, bool increasing) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool below = f(mid) < target;
    if (below == increasing)
      lo = mid;
    else
      hi = mid;
  }
  const double flo = f(lo), fhi = f(hi);
  return std::fabs(flo - target) <= std::fabs(fhi - target) ? lo : hi;
}

}  // namespace detail

/// Two distinct shapes i_rho1(T_R), i_rho2(T_R) with isoperimetric ratio v,
/// one on each side of the round sphere at rho = R - 1.
inline IsoMatches find_iso_matches(double R, double v, double tol = kDefaultTol) {
  if (std::fabs(R - std::numbers::sqrt2) <= kSquareBand)
    throw Error(ErrorCode::RejectSquare, "R = sqrt(2): the isoperimetric ratio determines the shape");
  const OverlapInterval range = overlap_interval(R);
  if (!(v >= range.lower && v < range.upper))
    throw Error(ErrorCode::OutOfRange, "v must lie in [max(3/(2 sqrt(pi R)), 3/(2 sqrt(pi R'))), 1)");

  const double edge = R - 1.0;
  const double top = std::sqrt((R - 1.0) * (R + 1.0));
  const double rho1 = detail::bisect([&](double z) { return iso_closed(R, z, tol); }, 0.0, edge, v, true);
  const double rho2 = detail::bisect([&](double z) { return iso_full_domain(R, z, tol); }, edge, top, v, false);

  IsoMatches m{
      {rho1, iso_closed(R, rho1, tol), geometry::canonicalize(R, rho1),
       geometry::maxwell_from_p1(geometry::p1_ratio_outside(R, rho1))},
      {rho2, iso_full_domain(R, rho2, tol), geometry::canonicalize(R, rho2),
       geometry::maxwell_from_p1(geometry::p1_ratio_inside(R, rho2))},
  };
  return m;
}

}  // namespace cyclide::iso

#endif  // CYCLIDE_ISO_HPP

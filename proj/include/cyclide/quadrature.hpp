#ifndef CYCLIDE_QUADRATURE_HPP
#define CYCLIDE_QUADRATURE_HPP

// Brute-force area and volume of the inverted torus i_[rho,0,0](T_R).
//
// The inversion about the unit sphere centred at a = [rho, 0, 0] scales
// lengths by 1/Q with Q = |x - a|^2, so
//
//   A = int_0^2pi int_0^2pi (R + sin v) / Q(u, v, 1)^2 du dv
//   V = int_0^1 int_0^2pi int_0^2pi r (R + r sin v) / Q(u, v, r)^3 du dv dr
//
// with x(u, v, r) = [(R + r sin v) cos u, (R + r sin v) sin u, r cos v].
//
// Both angular directions use the periodic trapezoid rule. The integrand
// has complex poles close to the inner equator point (u = 0, v = -pi/2) when
// the inversion centre approaches the torus or the torus is thin, so each
// angular variable is first passed through a Moebius reparametrisation of
// the circle that clusters nodes around that point. The reparametrised
// integrand is still smooth and periodic, so the rule stays spectrally
// accurate. The radial direction uses Gauss-Legendre on [0, 1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "cyclide/error.hpp"

namespace cyclide::quadrature {

/// The inverted-torus integrand for major radius R (minor radius 1) and
/// inversion centre [rho, 0, 0] with rho in [0, R - 1).
class InvertedTorusIntegrand {
 public:
  InvertedTorusIntegrand(double R, double rho) : R_(R), rho_(rho) {
    if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "integrand needs R > 1");
    if (!(rho >= 0.0 && rho < R - 1.0))
      throw Error(ErrorCode::DomainError, "integrand needs rho in [0, R - 1)");
  }

  double R() const { return R_; }
  double rho() const { return rho_; }

  /// |x(u, v, r)|^2 = R^2 + r^2 + 2 R r sin v.
  double norm_sq(double sin_v, double r) const { return R_ * R_ + r * r + 2.0 * R_ * r * sin_v; }

  /// Q(rho; x) = rho^2 - 2 x_1 rho + |x|^2, the reciprocal conformal factor.
  double q(double cos_u, double sin_v, double r) const {
    const double x1 = (R_ + r * sin_v) * cos_u;
    return rho_ * rho_ - 2.0 * x1 * rho_ + norm_sq(sin_v, r);
  }

  std::pair<double, double> distance_to_poles() const;

 private:
  double R_;
  double rho_;
};

struct QuadratureSpec {
  int n_angular = 256;
  int n_radial = 64;
  double target_tol = 1e-10;

  void validate() const {
    if (n_angular < 8 || n_angular % 2 != 0)
      throw Error(ErrorCode::DomainError, "n_angular must be an even integer >= 8");
    if (n_radial < 4) throw Error(ErrorCode::DomainError, "n_radial must be >= 4");
    if (!(target_tol > 0.0)) throw Error(ErrorCode::DomainError, "target_tol must be positive");
  }
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
inline std::vector<std::pair<double, double>> gauss_legendre_unit(int n) {
  std::vector<std::pair<double, double>> rule(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
    rule[static_cast<std::size_t>(n - 1 - i)] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return rule;
}

/// Trapezoid nodes on the circle after the Moebius map
///   theta(w) = centre + w - 2 atan2(beta sin w, 1 + beta cos w),
/// which concentrates nodes near theta = centre for beta in [0, 1).
struct ClusteredCircleRule {
  std::vector<double> angle;
  std::vector<double> weight;

  ClusteredCircleRule(int n, double centre, double beta) : angle(n), weight(n) {
    const double h = 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
      const double w = h * k;
      angle[k] = centre + w - 2.0 * std::atan2(beta * std::sin(w), 1.0 + beta * std::cos(w));
      weight[k] = h * (1.0 - beta * beta) / (1.0 + 2.0 * beta * std::cos(w) + beta * beta);
    }
  }
};

namespace detail {

// With beta = 1 - sigma a pole pair at imaginary distance t << sigma moves
// to distance about 2t/sigma, while distant poles end up no closer than about
// sigma. sigma = sqrt(t/2) leans towards the near pair, which dominates the
// error for thin tori and centres close to the surface.
inline double clustering_for(double pole_distance) {
  if (!std::isfinite(pole_distance) || pole_distance >= 2.0) return 0.0;
  return 1.0 - std::sqrt(0.5 * pole_distance);
}

// Radial nodes on [0, 1]. The integrand has a pole at r = R - rho, just past
// r = 1; for a close pole the sinh substitution 1 - r = gap sinh(a t) spreads
// it out.
inline std::vector<std::pair<double, double>> radial_rule(int n, double gap) {
  auto rule = gauss_legendre_unit(n);
  if (gap >= 0.5) return rule;
  const double a = std::asinh(1.0 / gap);
  for (auto& [r, w] : rule) {
    const double t = r;
    r = 1.0 - gap * std::sinh(a * t);
    w *= gap * a * std::cosh(a * t);
  }
  return rule;
}

}  // namespace detail

/// Imaginary distances of the nearest poles in u (around u = 0) and in
/// v (around v = -pi/2) for r = 1.
inline std::pair<double, double> InvertedTorusIntegrand::distance_to_poles() const {
  double du = std::numeric_limits<double>::infinity();
  if (rho_ > 0.0) {
    const double gap = R_ - 1.0 - rho_;
    du = std::acosh(1.0 + gap * gap / (2.0 * rho_ * (R_ - 1.0)));
  }
  const double m = R_ - rho_;
  const double dv = std::acosh((m * m + 1.0) / (2.0 * m));
  return {du, dv};
}

namespace detail {

struct AngularGrid {
  std::vector<double> cos_u, w_u, sin_v, w_v;
};

inline AngularGrid angular_grid(const InvertedTorusIntegrand& f, int n) {
  const auto [du, dv] = f.distance_to_poles();
  ClusteredCircleRule ru(n, 0.0, clustering_for(du));
  ClusteredCircleRule rv(n, -0.5 * std::numbers::pi, clustering_for(dv));
  AngularGrid g;
  g.cos_u.resize(n);
  g.sin_v.resize(n);
  for (int k = 0; k < n; ++k) {
    g.cos_u[k] = std::cos(ru.angle[k]);
    g.sin_v[k] = std::sin(rv.angle[k]);
  }
  g.w_u = std::move(ru.weight);
  g.w_v = std::move(rv.weight);
  return g;
}

template <int Power>
inline double shell_integral(const InvertedTorusIntegrand& f, const AngularGrid& g, double r) {
  const double R = f.R();
  const double rho = f.rho();
  const std::size_t n = g.cos_u.size();
  long double total = 0.0L;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = g.sin_v[j];
    const double radius = R + r * s;
    const double base = rho * rho + R * R + r * r + 2.0 * R * r * s;
    double row = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = base - 2.0 * rho * radius * g.cos_u[i];
      if (!(q > 0.0)) throw Error(ErrorCode::SingularIntegrand, "Q vanishes on the quadrature grid");
      double qp = q * q;
      if constexpr (Power == 3) qp *= q;
      row += g.w_u[i] / qp;
    }
    total += static_cast<long double>(row * radius * g.w_v[j]);
  }
  return static_cast<double>(total);
}

}  // namespace detail

/// Area of i_[rho,0,0](T_R).
inline double area_oracle(const InvertedTorusIntegrand& f, const QuadratureSpec& q) {
  q.validate();
  const auto grid = detail::angular_grid(f, q.n_angular);
  return detail::shell_integral<2>(f, grid, 1.0);
}

/// Enclosed volume of i_[rho,0,0](T_R).
inline double volume_oracle(const InvertedTorusIntegrand& f, const QuadratureSpec& q) {
  q.validate();
  const auto grid = detail::angular_grid(f, q.n_angular);
  long double total = 0.0L;
  for (const auto& [r, w] : detail::radial_rule(q.n_radial, f.R() - f.rho() - 1.0))
    total += static_cast<long double>(w * r * detail::shell_integral<3>(f, grid, r));
  return static_cast<double>(total);
}

/// 6 sqrt(pi) V / A^(3/2).
inline double iso_oracle(const InvertedTorusIntegrand& f, const QuadratureSpec& q) {
  const double area = area_oracle(f, q);
  const double volume = volume_oracle(f, q);
  return 6.0 * std::sqrt(std::numbers::pi) * volume / std::pow(area, 1.5);
}

struct ConvergenceRow {
  int n_angular;
  int n_radial;
  double area;
  double volume;
  double iso;
  double delta;  // max relative change of area and volume vs. the previous row
};

struct ConvergenceLimits {
  int max_n_angular = 2048;
  int max_n_radial = 256;
};

/// Doubles both resolutions until successive rows differ by less than
/// q.target_tol (relative). Throws NoConvergence past the limits.
inline std::vector<ConvergenceRow> convergence_report(const InvertedTorusIntegrand& f, QuadratureSpec q,
                                                      ConvergenceLimits limits = {}) {
  q.validate();
  std::vector<ConvergenceRow> rows;
  while (true) {
    const double area = area_oracle(f, q);
    const double volume = volume_oracle(f, q);
    ConvergenceRow row{q.n_angular, q.n_radial, area, volume,
                       6.0 * std::sqrt(std::numbers::pi) * volume / std::pow(area, 1.5),
                       std::numeric_limits<double>::infinity()};
    if (!rows.empty()) {
      const auto& prev = rows.back();
      row.delta = std::max(std::fabs(area / prev.area - 1.0), std::fabs(volume / prev.volume - 1.0));
    }
    rows.push_back(row);
    if (row.delta < q.target_tol) return rows;
    if (q.n_angular * 2 > limits.max_n_angular)
      throw Error(ErrorCode::NoConvergence, "quadrature did not converge within the resolution cap");
    q.n_angular *= 2;
    q.n_radial = std::min(q.n_radial * 2, limits.max_n_radial);
  }
}

}  // namespace cyclide::quadrature

#endif  // CYCLIDE_QUADRATURE_HPP

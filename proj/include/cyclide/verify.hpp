#ifndef CYCLIDE_VERIFY_HPP
#define CYCLIDE_VERIFY_HPP

// Invariant suites shared by `cyclide verify` and the acceptance binary.
// Each suite reports its worst residual against a threshold; thresholds are
// multiplied by VerifyOptions::threshold_scale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cyclide/error.hpp"
#include "cyclide/geometry.hpp"
#include "cyclide/hypergeom.hpp"
#include "cyclide/iso.hpp"
#include "cyclide/parallel.hpp"
#include "cyclide/quadrature.hpp"

namespace cyclide::verify {

struct VerifyOptions {
  int n_angular = 256;
  int n_radial = 64;
  double threshold_scale = 1.0;
  std::size_t sweep_points = 201;
  std::size_t random_points = 1000;
  unsigned seed = 20240917u;
};

struct SuiteResult {
  int id = 0;
  std::string name;
  /// Largest residual seen, or the number of violations for sign checks.
  double worst = 0.0;
  double threshold = 0.0;
  double seconds = 0.0;
  bool pass = false;
  std::string detail;
};

namespace detail {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double rel_err(double value, double ref) { return std::fabs(value / ref - 1.0); }

inline SuiteResult finish(SuiteResult r, const Timer& t, bool extra_ok = true) {
  r.seconds = t.seconds();
  r.pass = extra_ok && std::isfinite(r.worst) && r.worst <= r.threshold;
  return r;
}

inline const std::vector<double>& oracle_R_grid() {
  static const std::vector<double> g{1.2, std::numbers::sqrt2, 2.0, 3.0};
  return g;
}

}  // namespace detail

/// Closed form vs quadrature: relative error of area, volume and iso on
/// R in {1.2, sqrt 2, 2, 3} x rho/(R - 1) in {0, 0.3, 0.6, 0.9}, within 60 s.
inline SuiteResult oracle_agreement(const VerifyOptions& opt) {
  detail::Timer timer;
  SuiteResult r{1, "oracle agreement", 0.0, 1e-8 * opt.threshold_scale, 0.0, false, {}};
  struct Case {
    double R, rho;
  };
  std::vector<Case> cases;
  for (double R : detail::oracle_R_grid())
    for (double f : {0.0, 0.3, 0.6, 0.9}) cases.push_back({R, f * (R - 1.0)});
  const quadrature::QuadratureSpec spec{opt.n_angular, opt.n_radial};
  const auto errs = parallel_map(cases.size(), [&](std::size_t i) {
    const auto [R, rho] = cases[i];
    const quadrature::InvertedTorusIntegrand f(R, rho);
    const double a = quadrature::area_oracle(f, spec);
    const double v = quadrature::volume_oracle(f, spec);
    const double s = 6.0 * std::sqrt(std::numbers::pi) * v / std::pow(a, 1.5);
    return std::max({detail::rel_err(iso::area_closed(R, rho), a), detail::rel_err(iso::volume_closed(R, rho), v),
                     detail::rel_err(iso::iso_closed(R, rho), s)});
  });
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < errs.size(); ++i)
    if (!(errs[i] <= errs[worst_i])) worst_i = i;
  r.worst = errs[worst_i];
  std::ostringstream os;
  os << "worst at R=" << cases[worst_i].R << " rho=" << cases[worst_i].rho << ", n_angular=" << opt.n_angular
     << ", n_radial=" << opt.n_radial;
  r.detail = os.str();
  const bool in_time = timer.seconds() <= 60.0;
  if (!in_time) r.detail += ", over the 60 s budget";
  return detail::finish(r, timer, in_time);
}

/// Iso at z = 0 and z = R - 1, plus the x = 1 kernel values.
inline SuiteResult endpoint_identities(const VerifyOptions& opt) {
  detail::Timer timer;
  using std::numbers::pi;
  SuiteResult r{2, "endpoint identities", 0.0, 1e-12 * opt.threshold_scale, 0.0, false, {}};
  for (double R : {1.1, std::numbers::sqrt2, 2.0, 10.0}) {
    r.worst = std::max(r.worst, std::fabs(iso::iso_closed(R, 0.0) - 1.5 / std::sqrt(pi * R)));
    r.worst = std::max(r.worst, std::fabs(iso::iso_closed(R, R - 1.0) - 1.0));
    r.worst = std::max(r.worst, detail::rel_err(hypergeom::eval_vol3f2(R, 1.0), 16.0 * R * R / (3.0 * pi)));
    r.worst = std::max(r.worst, detail::rel_err(hypergeom::HGKernel::area()(1.0), 4.0 / pi));
  }
  r.detail = "R in {1.1, sqrt2, 2, 10}";
  return detail::finish(r, timer);
}

/// Printed closed forms of the z^0, z^2, z^4 Taylor coefficients.
struct PrintedTaylor {
  double area[3];
  double volume[3];
};

inline PrintedTaylor printed_taylor(double R) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double k = R * R - 1.0;
  const double R2 = R * R, R4 = R2 * R2;
  return {{4.0 * pi2 * R / std::pow(k, 2), 4.0 * pi2 * R * (4.0 * R2 + 5.0) / std::pow(k, 4),
           9.0 * pi2 * R * (4.0 * R4 + 16.0 * R2 + 5.0) / std::pow(k, 6)},
          {2.0 * R * pi2 / std::pow(k, 3), 6.0 * R * pi2 * (3.0 * R2 + 2.0) / std::pow(k, 5),
           3.0 * R * pi2 * (48.0 * R4 + 104.0 * R2 + 23.0) / (2.0 * std::pow(k, 7))}};
}

inline SuiteResult taylor_coefficients(const VerifyOptions& opt) {
  detail::Timer timer;
  SuiteResult r{3, "Taylor coefficients", 0.0, 1e-10 * opt.threshold_scale, 0.0, false, {}};
  for (double R : {1.5, 2.0, 3.0}) {
    const auto a = iso::taylor_coeffs_area(R, 4);
    const auto v = iso::taylor_coeffs_volume(R, 4);
    const auto p = printed_taylor(R);
    for (int i = 0; i < 3; ++i) {
      r.worst = std::max(r.worst, detail::rel_err(a[2 * i], p.area[i]));
      r.worst = std::max(r.worst, detail::rel_err(v[2 * i], p.volume[i]));
    }
  }
  r.detail = "c0, c2, c4 of area and volume at R in {1.5, 2, 3}";
  return detail::finish(r, timer);
}

/// Strictly increasing iso on 1000-point grids, within 10 s.
inline SuiteResult monotonicity(const VerifyOptions&) {
  detail::Timer timer;
  SuiteResult r{4, "monotonicity", 0.0, 0.0, 0.0, false, {}};
  double min_diff = std::numeric_limits<double>::infinity();
  for (double R : {1.05, 1.1, 1.5, std::numbers::sqrt2, 2.0, 5.0, 20.0}) {
    const auto rep = iso::monotonicity_check(R, 1000, 0, 0);
    for (std::size_t i = 1; i < rep.iso_values.size(); ++i)
      if (!(rep.iso_values[i] > rep.iso_values[i - 1])) r.worst += 1.0;
    min_diff = std::min(min_diff, rep.min_forward_difference);
  }
  std::ostringstream os;
  os << "non-increasing steps counted; smallest forward difference " << min_diff;
  r.detail = os.str();
  const bool in_time = timer.seconds() <= 10.0;
  if (!in_time) r.detail += ", over the 10 s budget";
  return detail::finish(r, timer, in_time);
}

/// 3F2 = 2F1(-3/2,-3/2;1;x) + (3/2)(R^2-2) x 2F1(-1/2,-1/2;2;x).
inline SuiteResult hypergeometric_identity(const VerifyOptions& opt) {
  detail::Timer timer;
  SuiteResult r{5, "3F2 identity", 0.0, 1e-12 * opt.threshold_scale, 0.0, false, {}};
  for (double R : {1.2, 1.5, std::sqrt(13.0 / 8.0), 2.0, 3.0})
    for (int i = 1; i <= 9; ++i) r.worst = std::max(r.worst, hypergeom::check_3f2_identity(R, 0.1 * i));
  r.detail = "R in {1.2, 1.5, sqrt(13/8), 2, 3}, x in {0.1, ..., 0.9}";
  return detail::finish(r, timer);
}

/// p_n > 0 for n = 1..1e4 and u_n > 0 for n = 0..1e3. The closed value
/// (2R^2 - 7/2)^2 + 3/4 belongs to the cubic lower bound of p_n at n = 1, so
/// it is checked there, together with p_n > bound.
inline SuiteResult positivity(const VerifyOptions& opt) {
  detail::Timer timer;
  SuiteResult r{6, "p_n / u_n positivity", 0.0, 0.0, 0.0, false, {}};
  double bound_residual = 0.0;
  std::size_t below_bound = 0;
  for (double R : {1.01, 1.2, std::numbers::sqrt2, 2.0, 10.0}) {
    for (std::size_t n = 1; n <= 10000; ++n) {
      if (!(iso::p_poly(n, R) > 0.0)) r.worst += 1.0;
      if (!(iso::p_poly(n, R) > iso::p_lower_bound(n, R))) ++below_bound;
    }
    for (double u : iso::u_seq(R, 1000))
      if (!(u > 0.0)) r.worst += 1.0;
  }
  double p1_gap = 0.0;
  for (double R : {1.01, 1.3, std::numbers::sqrt2, 2.5, 10.0}) {
    const double t = 2.0 * R * R - 3.5;
    bound_residual = std::max(bound_residual, detail::rel_err(iso::p_lower_bound(1, R), t * t + 0.75));
    p1_gap = std::max(p1_gap, detail::rel_err(iso::p_poly(1, R), t * t + 0.75));
  }
  std::ostringstream os;
  os << "sign violations counted; bound at n=1 vs (2R^2-7/2)^2+3/4 residual " << bound_residual << ", "
     << below_bound << " n with p_n <= bound; p_1 itself differs from that value by up to " << p1_gap
     << " (relative)";
  r.detail = os.str();
  return detail::finish(r, timer, bound_residual <= 1e-14 * opt.threshold_scale && below_bound == 0);
}

/// Involution, inside/outside ratio consistency, iso mirror symmetry and
/// phi round trips on random points.
inline SuiteResult duality(const VerifyOptions& opt) {
  detail::Timer timer;
  SuiteResult r{7, "duality", 0.0, 1e-12 * opt.threshold_scale, 0.0, false, {}};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double inv = 0.0, ratio = 0.0, mirror = 0.0, phi = 0.0, phi_forward = 0.0;
  for (std::size_t i = 0; i < opt.random_points; ++i) {
    const double R = 1.05 + 4.95 * unit(rng);
    const double top = std::sqrt((R - 1.0) * (R + 1.0));
    const double rho = top * unit(rng);
    const auto d = geometry::dual_params(R, rho);
    const auto dd = geometry::dual_params(d.R, d.rho);
    inv = std::max({inv, std::fabs(dd.R - R) / R, std::fabs(dd.rho - rho) / std::max(1.0, rho)});
    mirror = std::max(mirror, std::fabs(iso::iso_full_domain(R, rho) - iso::iso_full_domain(d.R, d.rho)));

    const double out = (R - 1.0) * unit(rng);
    const auto od = geometry::dual_params(R, out);
    const auto p_out = geometry::p1_ratio_outside(R, out);
    const auto p_in = geometry::p1_ratio_inside(od.R, od.rho);
    ratio = std::max({ratio, std::fabs(p_out.r2() - p_in.r2()), std::fabs(p_out.d() - p_in.d()) / p_out.d()});

    // phi_inv loses about eps/(1 - a) near the round sphere (a, b -> 1), so
    // the gate is the backward round trip; the forward one is reported.
    const auto [a, b] = geometry::phi(R, out);
    const auto [R_back, rho_back] = geometry::phi_inv(a, b);
    const auto [a_back, b_back] = geometry::phi(R_back, rho_back);
    phi = std::max({phi, std::fabs(a_back - a), std::fabs(b_back - b)});
    phi_forward = std::max({phi_forward, std::fabs(R_back - R) / R, std::fabs(rho_back - out) / std::max(1.0, out)});
  }
  r.worst = std::max({inv, ratio, mirror, phi});
  std::ostringstream os;
  os << "involution " << inv << ", ratios " << ratio << ", iso mirror " << mirror << ", phi(phi_inv) " << phi
     << " (phi_inv(phi) " << phi_forward << ") on "
     << opt.random_points << " points";
  r.detail = os.str();
  return detail::finish(r, timer);
}

/// Two distinct shapes with the same iso at the overlap midpoint; refusal at
/// R = sqrt 2.
inline SuiteResult non_uniqueness(const VerifyOptions& opt) {
  detail::Timer timer;
  SuiteResult r{8, "non-uniqueness witnesses", 0.0, 1e-10 * opt.threshold_scale, 0.0, false, {}};
  double min_gap = std::numeric_limits<double>::infinity();
  bool distinct = true;
  for (double R : {1.2, 2.0, 3.0}) {
    const auto range = iso::overlap_interval(R);
    const double v = 0.5 * (range.lower + range.upper);
    const auto m = iso::find_iso_matches(R, v);
    r.worst = std::max({r.worst, std::fabs(m.below.iso - v), std::fabs(m.above.iso - v)});
    min_gap = std::min(min_gap, geometry::maxwell_distance(m.below.maxwell, m.above.maxwell));
    distinct = distinct && !geometry::shapes_equal(m.below.shape, m.above.shape, 1e-9);
  }
  bool refused = false;
  try {
    iso::find_iso_matches(std::numbers::sqrt2, 0.9);
  } catch (const Error& e) {
    refused = e.code() == ErrorCode::RejectSquare;
  }
  std::ostringstream os;
  os << "smallest Maxwell gap " << min_gap << (refused ? ", R = sqrt2 refused" : ", R = sqrt2 NOT refused");
  r.detail = os.str();
  return detail::finish(r, timer, min_gap > 1e-6 && distinct && refused);
}

struct SweepRow {
  double rho;
  double iso;
};

/// Uniform grid over [0, sqrt(R^2 - 1)] with R - 1 inserted exactly.
inline std::vector<double> sweep_grid(double R, std::size_t n_points) {
  if (n_points < 2) throw Error(ErrorCode::DomainError, "a sweep needs at least two points");
  const double top = std::sqrt((R - 1.0) * (R + 1.0));
  std::vector<double> g(n_points);
  for (std::size_t i = 0; i < n_points; ++i) g[i] = top * static_cast<double>(i) / static_cast<double>(n_points - 1);
  g.back() = top;
  const double edge = R - 1.0;
  const auto pos = std::lower_bound(g.begin(), g.end(), edge);
  if (pos == g.end() || *pos != edge) g.insert(pos, edge);
  return g;
}

inline std::vector<SweepRow> sweep(double R, std::size_t n_points, double tol = hypergeom::kDefaultTol) {
  geometry::detail::check_R(R);
  const auto grid = sweep_grid(R, n_points);
  const auto values = parallel_map(grid.size(), [&](std::size_t i) { return iso::iso_full_domain(R, grid[i], tol); });
  std::vector<SweepRow> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = {grid[i], values[i]};
  return rows;
}

/// Rise to 1 at R - 1, fall to the dual endpoint value, mirror symmetry at sqrt 2.
inline SuiteResult full_domain_curve(const VerifyOptions& opt) {
  detail::Timer timer;
  using std::numbers::pi;
  SuiteResult r{9, "full-domain curve", 0.0, 1e-12 * opt.threshold_scale, 0.0, false, {}};
  std::size_t shape_violations = 0;
  for (double R : {1.2, std::numbers::sqrt2, 2.0}) {
    const auto rows = sweep(R, opt.sweep_points);
    const double edge = R - 1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const bool rising = rows[i].rho <= edge;
      const double step = rows[i].iso - rows[i - 1].iso;
      if (rising ? !(step > 0.0) : !(step < 0.0)) ++shape_violations;
    }
    for (const auto& row : rows)
      if (row.rho == edge) r.worst = std::max(r.worst, std::fabs(row.iso - 1.0));
    const double dual_R = R / std::sqrt((R - 1.0) * (R + 1.0));
    r.worst = std::max(r.worst, std::fabs(rows.back().iso - 1.5 / std::sqrt(pi * dual_R)));
    if (R == std::numbers::sqrt2)
      for (const auto& row : rows) {
        const double mirror = std::clamp((1.0 - row.rho) / (1.0 + row.rho), 0.0, rows.back().rho);
        r.worst = std::max(r.worst, std::fabs(row.iso - iso::iso_full_domain(R, mirror)));
      }
  }
  std::ostringstream os;
  os << shape_violations << " monotonicity violations on " << opt.sweep_points << "-point sweeps";
  r.detail = os.str();
  return detail::finish(r, timer, shape_violations == 0);
}

inline std::vector<SuiteResult> run_all(const VerifyOptions& opt) {
  return {oracle_agreement(opt), endpoint_identities(opt), taylor_coefficients(opt),
          monotonicity(opt),     hypergeometric_identity(opt), positivity(opt),
          duality(opt),          non_uniqueness(opt),          full_domain_curve(opt)};
}

}  // namespace cyclide::verify

#endif  // CYCLIDE_VERIFY_HPP

#ifndef CYCLIDE_HYPERGEOM_HPP
#define CYCLIDE_HYPERGEOM_HPP

// Hypergeometric kernels of the area and volume closed forms.
//
// Only the handful of kernels that occur for inverted tori are covered:
//
//   Area2F1      2F1(-1/2, -1/2; 1; x)
//   Vol3F2       3F2(-3/2, -3/2, e+1; 1, e; x),  e = 3 / (2R^2 - 4)
//   Aux2F1_32    2F1(-3/2, -3/2; 1; x)
//   Aux2F1_12_2  2F1(-1/2, -1/2; 2; x)
//
// on the closed interval x in [0, 1]. Series are summed directly in long
// double with compensated summation. On x = 1 the Gauss summation value is
// used; everywhere else summation stops only once a certified tail bound
// falls below the requested absolute tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>

#include "cyclide/error.hpp"

namespace cyclide::hypergeom {

inline constexpr double kDefaultTol = 1e-15;
inline constexpr std::size_t kTermCap = 10'000'000;

/// Running state of a series summation (Neumaier compensated sum).
struct SeriesAccumulator {
  long double partial_sum = 0.0L;
  long double term = 0.0L;
  std::size_t n = 0;
  long double tail_bound = std::numeric_limits<long double>::infinity();

  void add(long double t) {
    const long double s = partial_sum + t;
    if (std::fabs(partial_sum) >= std::fabs(t))
      compensation_ += (partial_sum - s) + t;
    else
      compensation_ += (t - s) + partial_sum;
    partial_sum = s;
  }

  long double value() const { return partial_sum + compensation_; }

 private:
  long double compensation_ = 0.0L;
};

namespace detail {

inline bool is_nonpositive_integer(long double v) {
  return v <= 0 && v == std::floor(v);
}

// Bound on sum_{k>=1} (N/(N+k))^p x^k, valid for any real p.
inline long double geometric_part(long double x, long double p, long double N) {
  const long double y = x * std::exp(std::max(0.0L, -p) / N);
  if (y >= 1) return std::numeric_limits<long double>::infinity();
  return y / (1 - y);
}

// Bound on sum_{m>N} (N/m)^p by integral comparison.
inline long double integral_part(long double p, long double N) {
  if (p <= 1) return std::numeric_limits<long double>::infinity();
  return N / (p - 1);
}

// Sums  sum_n h_n (1 + n lambda),  h_n = (a)_n (b)_n / ((c)_n n!) x^n.
//
// Tail certificate: with s = c + 1 - a - b the term ratio behaves like
// x (1 - s/n + O(1/n^2)). Past a settling index the ratio is bounded by
// x (m/(m+1))^p with p = (s+1)/2 (or s - 1/2 for s <= 1), which is checked
// at the truncation index. This gives
//   |h_m| <= |h_N| (N/m)^p x^(m-N)   for m >= N,
// and the remaining sum is bounded by the smaller of a geometric and an
// integral-comparison estimate.
inline SeriesAccumulator sum_weighted(long double a, long double b, long double c,
                                      long double lambda, long double x, double tol) {
  const long double s = c + 1 - a - b;
  const long double p = s > 1 ? (s + 1) / 2 : s - 0.5L;
  const long double margin = s - p;
  const long double spread = 1 + std::fabs(a) + std::fabs(b) + std::fabs(c);
  const auto settle = static_cast<std::size_t>(std::ceil(4 * spread * spread / margin));
  const long double abs_lambda = std::fabs(lambda);

  SeriesAccumulator acc;
  long double h = 1;
  for (std::size_t n = 0;; ++n) {
    if (n >= kTermCap)
      throw Error(ErrorCode::NoConvergence, "hypergeometric series hit the term cap");
    const auto nl = static_cast<long double>(n);
    acc.term = h * (1 + nl * lambda);
    acc.add(acc.term);
    acc.n = n + 1;

    const long double next = h * ((a + nl) * (b + nl) / ((c + nl) * (nl + 1))) * x;
    if (next == 0) {
      acc.tail_bound = 0;
      return acc;
    }
    h = next;

    const std::size_t first_omitted = n + 1;
    if (first_omitted < settle) continue;
    const auto N = static_cast<long double>(first_omitted);
    const long double ratio =
        std::fabs((a + N) * (b + N) / ((c + N) * (N + 1))) * std::pow((N + 1) / N, p);
    if (ratio > 1) continue;

    const long double plain = std::min(geometric_part(x, p, N), integral_part(p, N));
    long double bound = 1 + N * abs_lambda + plain;
    if (abs_lambda > 0)
      bound += abs_lambda * N * std::min(geometric_part(x, p - 1, N), integral_part(p - 1, N));
    bound *= std::fabs(h);
    if (bound <= tol) {
      acc.tail_bound = bound;
      return acc;
    }
  }
}

// Gauss summation 2F1(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b)).
inline double gauss_sum(double a, double b, double c) {
  if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) return 0.0;
  return std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
}

inline void check_argument(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw Error(ErrorCode::DomainError, "hypergeometric argument outside [0, 1]");
}

}  // namespace detail

/// 2F1(a, b; c; x) for x in [0, 1] with absolute error at most `tol`.
inline double eval_2f1(double a, double b, double c, double x, double tol = kDefaultTol) {
  if (detail::is_nonpositive_integer(c))
    throw Error(ErrorCode::DivergentParameters, "c is a nonpositive integer");
  detail::check_argument(x);
  if (x == 1.0) {
    if (!(c - a - b > 0))
      throw Error(ErrorCode::DivergentParameters, "series diverges at x = 1 (c - a - b <= 0)");
    return detail::gauss_sum(a, b, c);
  }
  return static_cast<double>(detail::sum_weighted(a, b, c, 0.0L, x, tol).value());
}

enum class KernelKind { Area2F1, Vol3F2, Aux2F1_32, Aux2F1_12_2 };

/// One of the four fixed kernels. The volume kernel stores 1/e rather than e,
/// so R = sqrt(2) (where e has a pole) is represented by 1/e = 0.
class HGKernel {
 public:
  static HGKernel area() { return HGKernel(KernelKind::Area2F1, -0.5, -0.5, 1.0); }
  static HGKernel aux_32() { return HGKernel(KernelKind::Aux2F1_32, -1.5, -1.5, 1.0); }
  static HGKernel aux_12_2() { return HGKernel(KernelKind::Aux2F1_12_2, -0.5, -0.5, 2.0); }

  static HGKernel volume(double R) {
    if (!(R > 1.0)) throw Error(ErrorCode::DomainError, "volume kernel needs R > 1");
    HGKernel k(KernelKind::Vol3F2, -1.5, -1.5, 1.0);
    k.R_ = R;
    const double twice_gap = 2.0 * R * R - 4.0;
    // Within a few ulps of R = sqrt(2), e is not representable.
    if (std::fabs(twice_gap) <= 8.0 * std::numeric_limits<double>::epsilon()) {
      k.inv_e_ = 0.0;
      k.degenerate_ = true;
    } else {
      k.inv_e_ = twice_gap / 3.0;
    }
    return k;
  }

  KernelKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  std::optional<double> R() const { return R_; }
  double inv_e() const { return inv_e_; }
  bool degenerate() const { return degenerate_; }

  std::optional<double> e() const {
    if (kind_ != KernelKind::Vol3F2 || degenerate_) return std::nullopt;
    return 1.0 / inv_e_;
  }

  /// Value at x = 1.
  double boundary_value() const {
    using std::numbers::pi;
    switch (kind_) {
      case KernelKind::Area2F1: return 4.0 / pi;
      case KernelKind::Vol3F2: return 16.0 * (*R_) * (*R_) / (3.0 * pi);
      case KernelKind::Aux2F1_32: return 32.0 / (3.0 * pi);
      case KernelKind::Aux2F1_12_2: return 32.0 / (9.0 * pi);
    }
    return 0.0;
  }

  double operator()(double x, double tol = kDefaultTol) const {
    detail::check_argument(x);
    if (x == 1.0) return boundary_value();
    const long double lambda = kind_ == KernelKind::Vol3F2 ? inv_e_ : 0.0;
    return static_cast<double>(detail::sum_weighted(a_, b_, c_, lambda, x, tol).value());
  }

 private:
  HGKernel(KernelKind kind, double a, double b, double c) : kind_(kind), a_(a), b_(b), c_(c) {}

  KernelKind kind_;
  double a_, b_, c_;
  std::optional<double> R_;
  double inv_e_ = 0.0;
  bool degenerate_ = false;
};

/// 3F2(-3/2, -3/2, e+1; 1, e; x) with e = 3/(2R^2 - 4).
///
/// The parameter pair (e+1)_n / (e)_n is reduced to (e+n)/e = 1 + n/e before
/// summation, so negative integer e (which happens for some R < sqrt(2)) is
/// harmless and R = sqrt(2) reduces to 2F1(-3/2, -3/2; 1; x).
inline double eval_vol3f2(double R, double x, double tol = kDefaultTol) {
  const HGKernel kernel = HGKernel::volume(R);
  detail::check_argument(x);
  if (kernel.degenerate()) return eval_2f1(-1.5, -1.5, 1.0, x, tol);
  return kernel(x, tol);
}

/// |3F2(...; x) - [2F1(-3/2,-3/2;1;x) + (3/2)(R^2-2) x 2F1(-1/2,-1/2;2;x)]|.
inline double check_3f2_identity(double R, double x, double tol = kDefaultTol) {
  if (HGKernel::volume(R).degenerate())
    throw Error(ErrorCode::DomainError, "identity check needs R != sqrt(2)");
  if (!(x >= 0.0 && x < 1.0))
    throw Error(ErrorCode::DomainError, "identity check needs x in [0, 1)");
  const double lhs = eval_vol3f2(R, x, tol);
  const double rhs =
      eval_2f1(-1.5, -1.5, 1.0, x, tol) + 1.5 * (R * R - 2.0) * x * eval_2f1(-0.5, -0.5, 2.0, x, tol);
  return std::fabs(lhs - rhs);
}

}  // namespace cyclide::hypergeom

#endif  // CYCLIDE_HYPERGEOM_HPP

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>

#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"

namespace cheb1 {

/// Solution of min over t of max_i |a_i - t v_i| for a vector v with
/// nonzero components. The witness indices both attain the maximal
/// deviation and their deviations, weighted by v, have opposite signs
/// (unless the error is zero).
struct MinimaxFit {
  double value = 0.0;
  double error = 0.0;
  std::size_t witness_pos = 0;  // sign(v_i (a_i - t v_i)) > 0 side
  std::size_t witness_neg = 0;
};

namespace detail {

inline double fit_error(std::span<const double> a, std::span<const double> v, double t) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - t * v[i]));
  return e;
}

// Picks the witness pair for a computed optimum. At the exact optimum both
// a positive-weighted and a negative-weighted deviation attain the maximum;
// in floating point we look within a small relative band and widen it if
// rounding pushed one side out.
inline MinimaxFit finalize_fit(std::span<const double> a, std::span<const double> v, double t) {
  MinimaxFit fit;
  fit.value = t;
  fit.error = fit_error(a, v, t);
  double scale = std::max(1.0, inf_norm(a));
  if (fit.error <= 1e-15 * scale) {
    fit.witness_pos = 0;
    fit.witness_neg = 1;
    return fit;
  }
  for (double band : {1e-12, 1e-9, 1e-7}) {
    std::size_t pos = a.size(), neg = a.size();
    double cutoff = fit.error * (1.0 - band);
    for (std::size_t i = 0; i < a.size(); ++i) {
      double r = a[i] - t * v[i];
      if (std::abs(r) < cutoff) continue;
      if (v[i] * r > 0.0) {
        if (pos == a.size()) pos = i;
      } else if (neg == a.size()) {
        neg = i;
      }
    }
    if (pos != a.size() && neg != a.size()) {
      fit.witness_pos = pos;
      fit.witness_neg = neg;
      return fit;
    }
  }
  // Degenerate data; report the two largest deviations.
  std::size_t first = 0, second = 1;
  double r0 = -1.0, r1 = -1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = std::abs(a[i] - t * v[i]);
    if (r > r0) {
      second = first;
      r1 = r0;
      first = i;
      r0 = r;
    } else if (r > r1) {
      second = i;
      r1 = r;
    }
  }
  fit.witness_pos = first;
  fit.witness_neg = second;
  return fit;
}

// Exact search over all pairwise balance points
//   t_ij = (s_i a_i + s_j a_j) / (|v_i| + |v_j|),   s_i = sign(v_i),
// plus the per-component roots a_i / v_i. The minimizer of the piecewise
// linear objective is always one of these candidates.
inline MinimaxFit minimax_by_pairs(std::span<const double> a, std::span<const double> v) {
  const std::size_t k = a.size();
  double best_t = a[0] / v[0];
  double best_e = fit_error(a, v, best_t);
  auto consider = [&](double t) {
    double e = fit_error(a, v, t);
    if (e < best_e) {
      best_e = e;
      best_t = t;
    }
  };
  for (std::size_t i = 1; i < k; ++i) consider(a[i] / v[i]);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    double si = v[i] > 0.0 ? 1.0 : -1.0;
    double wi = si * v[i];
    for (std::size_t j = i + 1; j < k; ++j) {
      double sj = v[j] > 0.0 ? 1.0 : -1.0;
      consider((si * a[i] + sj * a[j]) / (wi + sj * v[j]));
    }
  }
  return finalize_fit(a, v, best_t);
}

// Root find on the signed gap between the steepest rising and falling
// deviations. Writing r_i(t) = a_i - t v_i and s_i = sign(v_i),
//   rising_i(t)  = -s_i r_i(t)   (increasing in t)
//   falling_i(t) = +s_i r_i(t)   (decreasing in t)
// the objective equals max(max_i rising_i, max_i falling_i) and its
// minimizer is the unique root of gap(t) = max rising - max falling.
// A bracketing loop with the active-pair balance point as the preferred
// step collapses the bracket; the final answer is the exact balance point
// of the surviving pair, the same value the pairwise search would select.
inline MinimaxFit minimax_by_bracket(std::span<const double> a, std::span<const double> v) {
  const std::size_t k = a.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < k; ++i) {
    double c = a[i] / v[i];
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  if (lo == hi) return finalize_fit(a, v, lo);

  struct Sides {
    double rise, fall;
    std::size_t p, q;
  };
  auto sides = [&](double t) {
    Sides s{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0,
            0};
    for (std::size_t i = 0; i < k; ++i) {
      double sr = v[i] > 0.0 ? a[i] - t * v[i] : t * v[i] - a[i];  // falling_i(t)
      if (sr > s.fall) {
        s.fall = sr;
        s.q = i;
      }
      if (-sr > s.rise) {
        s.rise = -sr;
        s.p = i;
      }
    }
    return s;
  };
  auto balance = [&](std::size_t p, std::size_t q) {
    double sp = v[p] > 0.0 ? 1.0 : -1.0;
    double sq = v[q] > 0.0 ? 1.0 : -1.0;
    return (sp * a[p] + sq * a[q]) / (sp * v[p] + sq * v[q]);
  };

  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 2400; ++iter) {
    Sides s = sides(t);
    double gap = s.rise - s.fall;
    if (gap == 0.0) {
      lo = hi = t;
      break;
    }
    if (gap < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    double width = hi - lo;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() *
                     std::max({1.0, std::abs(lo), std::abs(hi)})) {
      break;
    }
    // Balance step when it lands inside the bracket, with a forced
    // bisection every other iteration so the bracket provably collapses.
    double next = (iter & 1) ? 0.5 * (lo + hi) : balance(s.p, s.q);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) {
      lo = hi = t;
      break;
    }
    t = next;
  }
  Sides at_hi = sides(hi);
  Sides at_lo = sides(lo);
  double t_star = balance(at_hi.p, at_lo.q);
  if (!(t_star >= lo && t_star <= hi)) t_star = 0.5 * (lo + hi);
  // Guard against a stale pair: keep whichever candidate scores better.
  double mid = 0.5 * (lo + hi);
  if (fit_error(a, v, mid) < fit_error(a, v, t_star)) t_star = mid;
  return finalize_fit(a, v, t_star);
}

// Above this length the bracketing method takes over; both methods return
// the same balance point up to rounding.
inline constexpr std::size_t kPairwiseCutoff = 16;

inline MinimaxFit minimax_impl(std::span<const double> a, std::span<const double> v) {
  return a.size() <= kPairwiseCutoff ? minimax_by_pairs(a, v) : minimax_by_bracket(a, v);
}

}  // namespace detail

/// Unique minimizer of max_i |a_i - t v_i| together with its error and a
/// witness pair of indices certifying optimality.
inline MinimaxFit minimax_coeff(std::span<const double> a, const ChebVector& v) {
  if (a.size() != v.size()) throw DimensionMismatch("vector lengths differ");
  return detail::minimax_impl(a, v.span());
}

/// Checks the two-index optimality characterization at t: some pair of
/// deviations must both lie within tol*max(1,||a||_inf) of the maximum and
/// have opposite signs when weighted by v. A zero-residual fit passes
/// vacuously.
inline bool verify_minimax_coeff(std::span<const double> a, const ChebVector& v, double t,
                                 double tol) {
  if (a.size() != v.size()) throw DimensionMismatch("vector lengths differ");
  double err = detail::fit_error(a, v.span(), t);
  double slack = tol * std::max(1.0, inf_norm(a));
  if (err <= slack) return true;
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = a[i] - t * v[i];
    if (std::abs(r) < err - slack) continue;
    (v[i] * r > 0.0 ? pos : neg) = true;
    if (pos && neg) return true;
  }
  return false;
}

/// Checks the magnitude and sign bounds that the optimal coefficient for an
/// alternance-free vector a must satisfy:
///   peak_gap(a) / (2 ||v||_inf) <= |t| <= 2 ||a||_inf / ||v||_inf
/// and sign(t) = sign(a_p v_p) at the peak position p of a.
inline bool check_coeff_bounds(std::span<const double> a, const ChebVector& v, double t) {
  std::size_t p = argmax_abs(a);  // throws AlternanceTie when not unique
  double gap = peak_gap(a);
  double vinf = v.inf_norm();
  double lower = gap / (2.0 * vinf);
  double upper = 2.0 * inf_norm(a) / vinf;
  double mag = std::abs(t);
  constexpr double kRelSlack = 1e-12;
  if (mag < lower * (1.0 - kRelSlack)) return false;
  if (mag > upper * (1.0 + kRelSlack)) return false;
  double want = a[p] * v[p];
  return t != 0.0 && ((t > 0.0) == (want > 0.0));
}

}  // namespace cheb1

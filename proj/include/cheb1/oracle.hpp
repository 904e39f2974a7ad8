#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cheb1/altmin.hpp"
#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"
#include "cheb1/minimax.hpp"

namespace cheb1 {

/// Brute-force reference: limit errors of alternating minimization from one
/// representative of every +-pair of sign classes.
struct OracleResult {
  double error = 0.0;
  SignVector best_pattern;
  std::vector<std::pair<SignVector, double>> per_class_errors;  // 2^(n-1) entries
};

/// Runs alternating minimization from every sign class whose first
/// component is +1 (the negated class has the same limit) and returns the
/// minimum. Guarded to n <= limit starting classes.
inline OracleResult exhaustive_optimize(const DenseMatrix& a, const AltMinOptions& opts = {},
                                        std::size_t limit = 16) {
  const std::size_t n = a.cols();
  if (n > limit) {
    throw TooLarge("exhaustive search limited to " + std::to_string(limit) + " columns, got " +
                   std::to_string(n));
  }
  detail::require_pc(a);

  OracleResult result{0.0, SignVector::from_mask(~std::uint64_t{0}, n), {}};
  const std::uint64_t classes = std::uint64_t{1} << (n - 1);
  result.per_class_errors.reserve(classes);
  for (std::uint64_t free = 0; free < classes; ++free) {
    SignVector t = SignVector::from_mask((free << 1) | 1u, n);
    double e = estimate_limit_error(a, t, opts);
    if (free == 0 || e < result.error) {
      result.error = e;
      result.best_pattern = t;
    }
    result.per_class_errors.emplace_back(std::move(t), e);
  }
  return result;
}

/// Grid scan plus golden-section refinement for min_t max_i |a_i - t v_i|.
/// The objective is convex and piecewise linear, so the refinement pins the
/// minimizer once the grid brackets it. Independent of minimax_coeff.
inline double minimax_coeff_grid(std::span<const double> a, const ChebVector& v, double lo,
                                 double hi, double step) {
  if (a.size() != v.size()) throw DimensionMismatch("vector lengths differ");
  auto f = [&](double t) { return detail::fit_error(a, v.span(), t); };

  double best_t = lo;
  double best_f = f(lo);
  for (double t = lo + step; t <= hi; t += step) {
    double ft = f(t);
    if (ft < best_f) {
      best_f = ft;
      best_t = t;
    }
  }

  double left = std::max(lo, best_t - step);
  double right = std::min(hi, best_t + step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - inv_phi * (right - left);
  double x2 = left + inv_phi * (right - left);
  double f1 = f(x1), f2 = f(x2);
  while (right - left > 1e-12) {
    if (f1 < f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - inv_phi * (right - left);
      f1 = f(x1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + inv_phi * (right - left);
      f2 = f(x2);
    }
  }
  return 0.5 * (left + right);
}

}  // namespace cheb1

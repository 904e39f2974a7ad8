#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "cheb1/core.hpp"
#include "cheb1/errors.hpp"
#include "cheb1/minimax.hpp"

namespace cheb1 {

struct AltMinOptions {
  std::size_t max_sweeps = 10000;
  // A sweep that reduces the error by less than conv_tol * max(1, ||A||_C)
  // while keeping the signs of v fixed counts as converged.
  double conv_tol = 1e-12;
};

/// Trajectory summary of one alternating minimization run. `errors` holds
/// the interleaved half-step errors ||A - u^(k) (v^(k-1))^T||_C,
/// ||A - u^(k) (v^(k))^T||_C, ...; the sequence is non-increasing. The final
/// v is normalized to unit max-norm with u rescaled to match, so u v^T is
/// unchanged.
struct AltMinRun {
  ChebVector u;
  ChebVector v;
  std::vector<double> errors;
  std::size_t sweeps = 0;
  SignVector stabilized_signs;
  double limit_error = 0.0;
  bool converged = false;
};

namespace detail {

// u_i = best coefficient for row i against v; also returns the largest
// per-row error, which equals ||A - u v^T||_C for the returned u.
inline std::pair<std::vector<double>, double> fit_rows_raw(const DenseMatrix& a,
                                                           std::span<const double> v) {
  std::vector<double> u(a.rows());
  double err = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    MinimaxFit f = minimax_impl(a.row(i), v);
    u[i] = f.value;
    err = std::max(err, f.error);
  }
  return {std::move(u), err};
}

inline void require_pc(const DenseMatrix& a) {
  auto rep = preserves_chebyshev(a);
  if (!rep.pc) throw NotPC("matrix has a row or column with tied maxima");
}

inline bool same_signs(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((x[i] > 0.0) != (y[i] > 0.0)) return false;
  }
  return true;
}

}  // namespace detail

/// Row-wise best response: component i minimizes max_j |a_ij - u_i v_j|.
inline ChebVector fit_rows(const DenseMatrix& a, const ChebVector& v) {
  detail::require_pc(a);
  if (v.size() != a.cols()) throw DimensionMismatch("v length must equal the column count");
  return ChebVector(detail::fit_rows_raw(a, v.span()).first);
}

/// Column-wise best response; equals fit_rows on the transpose.
inline ChebVector fit_cols(const DenseMatrix& a, const ChebVector& u) {
  detail::require_pc(a);
  if (u.size() != a.rows()) throw DimensionMismatch("u length must equal the row count");
  return ChebVector(detail::fit_rows_raw(a.transposed(), u.span()).first);
}

/// Alternates row fits and column fits from v0 until the error plateaus
/// with stable signs, an exact fixed point is reached, or max_sweeps runs
/// out (converged = false in that case; the best pair so far is returned).
inline AltMinRun run_altmin(const DenseMatrix& a, const ChebVector& v0,
                            const AltMinOptions& opts = {}) {
  detail::require_pc(a);
  if (v0.size() != a.cols()) throw DimensionMismatch("v0 length must equal the column count");

  const DenseMatrix at = a.transposed();
  const double scale = std::max(1.0, cheb_norm(a));

  std::vector<double> v = v0.values();
  {
    double s = inf_norm(v);
    for (double& x : v) x /= s;
  }
  std::vector<double> u;
  std::vector<double> errors;
  errors.reserve(64);
  double prev_err = 0.0;
  bool converged = false;
  std::size_t sweeps = 0;
  const std::size_t sweep_cap = std::max<std::size_t>(1, opts.max_sweeps);

  while (sweeps < sweep_cap) {
    ++sweeps;
    auto [u_raw, e1] = detail::fit_rows_raw(a, v);
    auto [v_raw, e2] = detail::fit_rows_raw(at, u_raw);
    errors.push_back(e1);
    errors.push_back(e2);

    double s = inf_norm(v_raw);
    std::vector<double> v_new(v_raw);
    for (double& x : v_new) x /= s;
    for (double& x : u_raw) x *= s;

    // An exact normalized fixed point repeats forever, so it converges on
    // the spot; otherwise require a sweep-over-sweep plateau with the
    // signs of v already settled.
    bool fixed_point = (v_new == v);
    bool signs_stable = detail::same_signs(v_new, v);
    double decrease = prev_err - e2;
    bool plateau = sweeps >= 2 && signs_stable && decrease < opts.conv_tol * scale;
    prev_err = e2;
    v = std::move(v_new);
    u = std::move(u_raw);
    if (fixed_point || plateau) {
      converged = true;
      break;
    }
  }

  SignVector signs = SignVector::from_reals(v);
  const double limit = errors.back();
  return AltMinRun{ChebVector(std::move(u)),
                   ChebVector(std::move(v)),
                   std::move(errors),
                   sweeps,
                   std::move(signs),
                   limit,
                   converged};
}

/// Limit of the error sequence started from the all-magnitude-one vector
/// with the given signs. When the run hits the sweep cap before settling,
/// the flag pointed to by `converged` (if any) is cleared and the last
/// error is still returned.
inline double estimate_limit_error(const DenseMatrix& a, const SignVector& t,
                                   const AltMinOptions& opts = {}, bool* converged = nullptr) {
  if (t.size() != a.cols()) throw DimensionMismatch("sign vector length must equal columns");
  AltMinRun run = run_altmin(a, ChebVector(t.as_reals()), opts);
  if (converged) *converged = run.converged;
  return run.limit_error;
}

}  // namespace cheb1

#pragma once

// The log-integrable F-norm on step functions and the machinery around it:
// the induced metric, the Orlicz F-norm it is equivalent to, truncation,
// L1 approximation and decreasing rearrangement.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "logint/error.hpp"
#include "logint/step_function.hpp"

namespace logint {

/// log(1 + t) for t >= 0.
inline double log1p_abs(double t) noexcept { return std::log1p(t); }

/// ||f||_log = \int log(1 + |f|) dnu.
inline double lognorm(const StepFunction& f) noexcept {
  double sum = 0.0;
  for (const auto& p : f.pieces()) sum += (p.right - p.left) * std::log1p(std::abs(p.value));
  return sum;
}

/// d_log(f, g) = ||f - g||_log.
inline double dlog(const StepFunction& f, const StepFunction& g) { return lognorm(f - g); }

inline double l1norm(const StepFunction& f) noexcept {
  double sum = 0.0;
  for (const auto& p : f.pieces()) sum += (p.right - p.left) * std::abs(p.value);
  return sum;
}

struct OrliczOptions {
  double abs_tol = 1e-12;
  int max_iterations = 200;
};

/// ||f||_phi = inf{ lambda > 0 : ||f / lambda||_log <= lambda }.
///
/// lambda -> ||f/lambda||_log - lambda is strictly decreasing for f != 0, so
/// the infimum is the unique crossing point. Located by bisection; the upper
/// end of the final bracket is returned, so the defining inequality holds at
/// the returned value.
inline double orlicz_fnorm(const StepFunction& f, OrliczOptions opt = {}) {
  if (f.is_zero()) return 0.0;
  auto admissible = [&](double lambda) { return lognorm(f.scaled(1.0 / lambda)) <= lambda; };

  double lo = 0.0;
  double hi = std::max(1.0, lognorm(f));
  while (!admissible(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < opt.max_iterations && hi - lo > opt.abs_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (admissible(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// f_M: f where |f| <= M, zero elsewhere. Ties at |f| = M are kept.
inline StepFunction truncate(const StepFunction& f, double cutoff) {
  if (!(cutoff > 0.0)) fail(ErrorCode::invalid_parameter, "truncation level must be positive");
  std::vector<Piece> kept;
  for (const auto& p : f.pieces())
    if (std::abs(p.value) <= cutoff) kept.push_back(p);
  return StepFunction::from_pieces(std::move(kept), f.total_measure());
}

/// Constant K_M = M / log(1 + M) with t <= K_M log(1 + t) on [0, M].
inline double l1_log_constant(double cutoff) { return cutoff / std::log1p(cutoff); }

struct L1Approximation {
  StepFunction approximant;
  double cutoff = 0.0;    // the power of two used as truncation level
  double distance = 0.0;  // dlog(f, approximant)
};

/// Truncates f at the smallest M = 2^k, k >= 0, with dlog(f, f_M) < eps.
/// The result is bounded, hence integrable.
inline L1Approximation approximate_in_l1(const StepFunction& f, double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::invalid_parameter, "eps must be positive");
  for (double cutoff = 1.0;; cutoff *= 2.0) {
    StepFunction g = truncate(f, cutoff);
    const double d = dlog(f, g);
    // Once the cutoff dominates sup|f| the truncation is f itself and d = 0.
    if (d < eps) return {std::move(g), cutoff, d};
  }
}

/// Decreasing rearrangement of |f|: magnitudes sorted nonincreasing with the
/// measure of the set on which each is attained. The zero part is omitted.
inline SingularStep decreasing_rearrangement(const StepFunction& f) {
  std::vector<Step> steps;
  steps.reserve(f.pieces().size());
  for (const auto& p : f.pieces()) steps.push_back({p.right - p.left, std::abs(p.value)});
  return SingularStep(std::move(steps));
}

/// \int log(1 + mu) over a singular-step profile.
inline double lognorm(const SingularStep& mu) {
  return mu.integral([](double h) { return std::log1p(h); });
}

}  // namespace logint

#pragma once

// Executable constructions behind the negative results and the completeness
// argument: neighborhoods of 0 that are not bounded, the convex split that
// rules out local convexity, a sequence separating the log topology from the
// measure topology, and Cauchy-limit extraction.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "logint/error.hpp"
#include "logint/fnorm.hpp"
#include "logint/step_function.hpp"

namespace logint::witness {

/// f = K chi_[0, eta) with ||f||_log < eps and ||f / N||_log >= eps / 2,
/// so f lies in V_eps but not in N V_{eps/2}.
struct Unboundedness {
  double eps = 0.0;
  int N = 1;
  double K = 0.0;
  double eta = 0.0;
  double norm_f = 0.0;
  double norm_f_over_N = 0.0;
  StepFunction f;

  bool holds() const noexcept { return norm_f < eps && norm_f_over_N >= eps / 2.0; }
};

/// K doubles from 1 until 2 log(1 + K/N) > log(1 + K) and the admissible
/// window for eta fits inside [0, ambient_measure); eta is the window midpoint.
inline Unboundedness unboundedness_witness(double eps, int N, double ambient_measure = 1.0) {
  if (!(eps > 0.0)) fail(ErrorCode::invalid_parameter, "eps must be positive");
  if (N < 1) fail(ErrorCode::invalid_parameter, "N must be >= 1");
  if (!(ambient_measure > 0.0)) fail(ErrorCode::invalid_parameter, "ambient measure must be positive");

  const double n = static_cast<double>(N);
  double K = 1.0;
  auto separated = [&](double k) { return 2.0 * std::log1p(k / n) > std::log1p(k); };
  auto fits = [&](double k) { return eps / std::log1p(k) <= ambient_measure; };
  while (!(separated(K) && fits(K))) {
    K *= 2.0;
    if (!std::isfinite(K)) fail(ErrorCode::invalid_parameter, "no admissible K found");
  }
  const double lower = eps / (2.0 * std::log1p(K / n));
  const double upper = eps / std::log1p(K);

  Unboundedness w;
  w.eps = eps;
  w.N = N;
  w.K = K;
  w.eta = 0.5 * (lower + upper);
  w.f = StepFunction::constant(K, 0.0, w.eta, ambient_measure);
  w.norm_f = lognorm(w.f);
  w.norm_f_over_N = lognorm(w.f.scaled(1.0 / n));
  return w;
}

/// f = (1/n)(f_1 + ... + f_n) with every f_j = n f chi_[x_{j-1}, x_j) of
/// log-norm ||n f||_log / n < eps.
struct ConvexSplit {
  int n = 1;
  double eps = 0.0;
  double piece_norm = 0.0;  // ||n f||_log / n
  std::vector<double> breakpoints;
  std::vector<StepFunction> pieces;

  /// (1/n) sum_j f_j.
  StepFunction average() const {
    StepFunction sum(1.0);
    for (const auto& p : pieces) sum = sum + p;
    return sum.scaled(1.0 / static_cast<double>(n));
  }
};

/// Leftmost x in [0, 1] with \int_0^x log(1 + n|f|) = target, where the
/// integrand is piecewise constant so the antiderivative is piecewise linear.
inline double invert_cumulative(const StepFunction& f, double n, double target) {
  double acc = 0.0;
  for (const auto& p : f.pieces()) {
    const double rate = std::log1p(n * std::abs(p.value));
    const double mass = (p.right - p.left) * rate;
    if (acc + mass >= target) {
      const double x = p.left + (target - acc) / rate;
      return std::clamp(x, p.left, p.right);
    }
    acc += mass;
  }
  return f.pieces().empty() ? 0.0 : f.pieces().back().right;
}

inline ConvexSplit convex_split(const StepFunction& f, double eps, int max_n = 10'000'000) {
  if (!(eps > 0.0)) fail(ErrorCode::invalid_parameter, "eps must be positive");
  if (f.total_measure() != 1.0) fail(ErrorCode::invalid_parameter, "convex split needs f on [0, 1) with total_measure 1");

  ConvexSplit out;
  out.eps = eps;
  int n = 1;
  // log(1 + n t) / n decreases in n and tends to 0.
  while (lognorm(f.scaled(static_cast<double>(n))) / n >= eps) {
    if (++n > max_n) fail(ErrorCode::invalid_parameter, "convex split needs more than max_n pieces");
  }
  out.n = n;
  const double dn = static_cast<double>(n);
  const StepFunction nf = f.scaled(dn);
  const double total = lognorm(nf);
  out.piece_norm = total / dn;

  out.breakpoints.resize(static_cast<std::size_t>(n) + 1);
  out.breakpoints.front() = 0.0;
  out.breakpoints.back() = 1.0;
  for (int j = 1; j < n; ++j)
    out.breakpoints[static_cast<std::size_t>(j)] = invert_cumulative(f, dn, total * j / dn);

  out.pieces.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    out.pieces.push_back(nf.restricted(out.breakpoints[static_cast<std::size_t>(j)],
                                       out.breakpoints[static_cast<std::size_t>(j) + 1]));
  return out;
}

/// f_k = e^{k^2} chi_[0, 1/k): measure of support 1/k but log-norm about k.
struct Separation {
  int k = 1;
  double height_log = 0.0;  // log of the height, k^2
  double support_measure = 0.0;
  double lognorm_value = 0.0;
  double dominant = 0.0;    // k
  double correction = 0.0;  // log(1 + e^{-k^2}) / k

  /// nu{|f_k| >= delta}.
  double measure_at_least(double delta) const noexcept {
    return std::log(delta) <= height_log ? support_measure : 0.0;
  }
};

inline Separation separation_sequence(int k) {
  if (k < 1) fail(ErrorCode::invalid_parameter, "k must be >= 1");
  const double kk = static_cast<double>(k);
  Separation s;
  s.k = k;
  s.height_log = kk * kk;
  s.support_measure = 1.0 / kk;
  s.dominant = kk;
  s.correction = std::log1p(std::exp(-kk * kk)) / kk;
  // log(1 + e^{k^2}) = k^2 + log(1 + e^{-k^2})
  s.lognorm_value = (kk * kk + std::log1p(std::exp(-kk * kk))) / kk;
  return s;
}

/// f_k as a step function, while e^{k^2} is representable.
inline StepFunction separation_function(int k, double total_measure = 1.0) {
  const double kk = static_cast<double>(k);
  const double height = std::exp(kk * kk);
  if (!std::isfinite(height)) fail(ErrorCode::invalid_parameter, "e^{k^2} overflows");
  return StepFunction::constant(height, 0.0, 1.0 / kk, total_measure);
}

struct CauchyReport {
  bool cauchy = false;
  std::vector<double> distances;  // dlog(f_i, f_{i+1})
  double tail_sum = 0.0;          // sum over the second half of `distances`
  double gap = 0.0;               // largest distance in that tail when not Cauchy
  std::optional<StepFunction> limit;
  double distance_to_limit = 0.0;  // dlog(f_last, limit)
};

/// Value-wise limit on one refinement cell: the last value when the sequence
/// has stopped moving, Aitken extrapolation when the last differences shrink
/// geometrically, the last value otherwise.
inline Complex cell_limit(const std::vector<std::vector<Complex>>& values, std::size_t cell) {
  const std::size_t len = values.size();
  const Complex last = values[len - 1][cell];
  if (len < 3) return last;
  const Complex a = values[len - 3][cell];
  const Complex b = values[len - 2][cell];
  const Complex d1 = b - a;
  const Complex d2 = last - b;
  if (d2 == Complex{} || d1 == Complex{}) return last;
  const Complex denom = d2 - d1;
  if (denom == Complex{} || !(std::abs(d2) < std::abs(d1))) return last;
  return last - d2 * d2 / denom;
}

/// Declares seq Cauchy when the successive distances over the second half of
/// the sequence sum below tol; the sum bounds dlog between any two members of
/// that tail.
inline CauchyReport cauchy_limit(std::span<const StepFunction> seq, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::invalid_parameter, "tol must be positive");
  if (seq.empty()) fail(ErrorCode::malformed_input, "sequence is empty");
  CauchyReport rep;
  const Refinement r = common_refinement(seq);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) rep.distances.push_back(dlog(seq[i], seq[i + 1]));

  const std::size_t tail = (rep.distances.size() + 1) / 2;
  const std::size_t first = rep.distances.size() - tail;
  for (std::size_t i = first; i < rep.distances.size(); ++i) {
    rep.tail_sum += rep.distances[i];
    rep.gap = std::max(rep.gap, rep.distances[i]);
  }
  rep.cauchy = rep.tail_sum < tol;
  if (!rep.cauchy) return rep;
  rep.gap = 0.0;

  std::vector<Complex> lim(r.cells());
  for (std::size_t c = 0; c < r.cells(); ++c) lim[c] = cell_limit(r.values, c);
  rep.limit = from_refinement(r, lim, seq.front().total_measure());
  rep.distance_to_limit = dlog(seq.back(), *rep.limit);
  return rep;
}

}  // namespace logint::witness

#pragma once

// Random generators for property checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "logint/operator_space.hpp"
#include "logint/step_function.hpp"

namespace logint::sampling {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

inline int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

/// Magnitude 10^u, u uniform in [lo, hi], with a random phase; real with
/// probability 1/2.
inline Complex random_value(Rng& rng, double lo_exp = -3.0, double hi_exp = 3.0) {
  const double mag = std::pow(10.0, uniform(rng, lo_exp, hi_exp));
  if (uniform_int(rng, 0, 1) == 0) return uniform_int(rng, 0, 1) ? mag : -mag;
  return std::polar(mag, uniform(rng, -std::numbers::pi, std::numbers::pi));
}

/// Up to `max_pieces` pieces on [0, span), on an ambient space of the given
/// total measure (span = total when finite, 4 otherwise).
inline StepFunction random_step_function(Rng& rng, double total = 1.0, int max_pieces = 6) {
  const double span = std::isinf(total) ? 4.0 : total;
  const int pieces = uniform_int(rng, 0, max_pieces);
  std::vector<double> cuts;
  for (int i = 0; i < 2 * pieces; ++i) cuts.push_back(uniform(rng, 0.0, span));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
    if (uniform_int(rng, 0, 5) == 0) continue;
    out.push_back({cuts[i], cuts[i + 1], random_value(rng)});
  }
  return StepFunction::from_pieces(std::move(out), total);
}

/// Step function on [0, 1) whose breakpoints are multiples of 1/cells.
inline StepFunction random_grid_step_function(Rng& rng, int cells) {
  std::vector<Piece> out;
  const double w = 1.0 / cells;
  for (int i = 0; i < cells; ++i) {
    if (uniform_int(rng, 0, 3) == 0) continue;
    out.push_back({i * w, i + 1 == cells ? 1.0 : (i + 1) * w, random_value(rng)});
  }
  return StepFunction::from_pieces(std::move(out), 1.0);
}

/// Complex Gaussian entries times a log-uniform scale in [1e-2, 1e2];
/// occasionally rank-deficient.
inline MatrixOperator random_matrix(Rng& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double scale = std::pow(10.0, uniform(rng, -2.0, 2.0));
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m(i, k) = scale * Complex(g(rng), g(rng));
  if (n > 1 && uniform_int(rng, 0, 7) == 0) m.col(uniform_int(rng, 0, n - 1)).setZero();
  return MatrixOperator(std::move(m));
}

/// Random point of the closed unit disk's interior with |z| <= r_max.
inline Complex random_disk_point(Rng& rng, double r_max) {
  return std::polar(r_max * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, -std::numbers::pi, std::numbers::pi));
}

}  // namespace logint::sampling

#pragma once

// Matrix model of the noncommutative log-integrable algebra: M_n(C) with the
// normalized trace tau = Tr / n. Singular values are the only source of the
// generalized singular-number function mu(T), and spectral projections of |T|
// are built from right singular vectors.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "logint/error.hpp"
#include "logint/fnorm.hpp"
#include "logint/step_function.hpp"

namespace logint {

using Matrix = Eigen::MatrixXcd;

/// Square complex matrix acted on by the normalized trace.
class MatrixOperator {
 public:
  MatrixOperator() : MatrixOperator(Matrix::Zero(1, 1)) {}

  explicit MatrixOperator(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols()) fail(ErrorCode::malformed_input, "matrix must be square with n >= 1");
    if (!m_.allFinite()) fail(ErrorCode::not_finite, "matrix entries must be finite");
  }

  static MatrixOperator zero(Eigen::Index n) { return MatrixOperator(Matrix::Zero(n, n)); }
  static MatrixOperator identity(Eigen::Index n) { return MatrixOperator(Matrix::Identity(n, n)); }
  static MatrixOperator diagonal(const std::vector<Complex>& d) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
    return MatrixOperator(std::move(m));
  }

  Eigen::Index n() const noexcept { return m_.rows(); }
  const Matrix& entries() const noexcept { return m_; }

  /// tau(T) = Tr(T) / n.
  Complex trace() const { return m_.trace() / static_cast<double>(n()); }

  MatrixOperator adjoint() const { return MatrixOperator(m_.adjoint()); }
  MatrixOperator scaled(Complex alpha) const { return MatrixOperator(alpha * m_); }

  bool is_diagonal() const noexcept {
    for (Eigen::Index j = 0; j < n(); ++j)
      for (Eigen::Index i = 0; i < n(); ++i)
        if (i != j && m_(i, j) != Complex{}) return false;
    return true;
  }

 private:
  Matrix m_;
};

inline void require_same_dimension(const MatrixOperator& a, const MatrixOperator& b) {
  if (a.n() != b.n()) {
    std::ostringstream msg;
    msg << "dimension " << a.n() << " vs " << b.n();
    fail(ErrorCode::dimension_mismatch, msg.str());
  }
}

inline MatrixOperator operator+(const MatrixOperator& a, const MatrixOperator& b) {
  require_same_dimension(a, b);
  return MatrixOperator(a.entries() + b.entries());
}
inline MatrixOperator operator-(const MatrixOperator& a, const MatrixOperator& b) {
  require_same_dimension(a, b);
  return MatrixOperator(a.entries() - b.entries());
}
inline MatrixOperator operator*(const MatrixOperator& a, const MatrixOperator& b) {
  require_same_dimension(a, b);
  return MatrixOperator(a.entries() * b.entries());
}
inline MatrixOperator operator*(Complex alpha, const MatrixOperator& a) { return a.scaled(alpha); }

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double rank_tolerance = 1e-12;

/// Singular values (nonincreasing) and the matching right singular vectors.
struct SingularSystem {
  std::vector<double> values;
  Matrix right_vectors;  // column j pairs with values[j]
};

/// Diagonal input takes an exact path: |d_i| with standard-basis vectors.
/// Ties keep their original order. Values under the rank tolerance are zeroed.
inline SingularSystem singular_system(const MatrixOperator& t) {
  const Eigen::Index n = t.n();
  SingularSystem sys;
  std::vector<double> raw(static_cast<std::size_t>(n));
  Matrix basis;
  if (t.is_diagonal()) {
    for (Eigen::Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = std::abs(t.entries()(i, i));
    basis = Matrix::Identity(n, n);
  } else {
    Eigen::JacobiSVD<Matrix> svd(t.entries(), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = s(i);
    basis = svd.matrixV();
  }
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });

  const double top = order.empty() ? 0.0 : raw[order.front()];
  sys.values.resize(raw.size());
  sys.right_vectors.resize(n, n);
  for (std::size_t j = 0; j < order.size(); ++j) {
    const double v = raw[order[j]];
    sys.values[j] = v <= rank_tolerance * top ? 0.0 : v;
    sys.right_vectors.col(static_cast<Eigen::Index>(j)) = basis.col(static_cast<Eigen::Index>(order[j]));
  }
  return sys;
}

inline std::vector<double> singular_values(const MatrixOperator& t) { return singular_system(t).values; }

/// Operator norm ||T|| = largest singular value.
inline double operator_norm(const MatrixOperator& t) {
  const auto s = singular_values(t);
  return s.empty() ? 0.0 : s.front();
}

/// mu(T): each singular value held over width 1/n. Equal values share a step
/// whose width is count/n.
inline SingularStep singular_numbers(const MatrixOperator& t) {
  const auto s = singular_values(t);
  const double n = static_cast<double>(t.n());
  std::vector<Step> steps;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    steps.push_back({static_cast<double>(j - i) / n, s[i]});
    i = j;
  }
  return SingularStep(std::move(steps));
}

/// ||T||_log = tau(log(1 + |T|)) = (1/n) sum_i log(1 + sigma_i).
inline double lognorm_op(const MatrixOperator& t) {
  double sum = 0.0;
  for (double s : singular_values(t)) sum += std::log1p(s);
  return sum / static_cast<double>(t.n());
}

inline double dlog_op(const MatrixOperator& s, const MatrixOperator& t) { return lognorm_op(s - t); }

/// tau(E_{|A|}([delta, inf))): the normalized count of singular values >= delta.
inline double spectral_trace_above(const MatrixOperator& a, double delta) {
  const auto s = singular_values(a);
  const auto count = std::count_if(s.begin(), s.end(), [&](double v) { return v > 0.0 && v >= delta; });
  return static_cast<double>(count) / static_cast<double>(a.n());
}

/// Smallest integer k >= 1 with sigma >= 1/k, using the same floating-point
/// comparison as the series definition.
inline double dtau_threshold_index(double sigma) {
  double k = std::max(1.0, std::ceil(1.0 / sigma));
  while (k > 1.0 && sigma >= 1.0 / (k - 1.0)) k -= 1.0;
  while (sigma < 1.0 / k) k += 1.0;
  return k;
}

/// Measure-topology metric d_tau(A, B) = sum_k 2^-k tau(E_{|A-B|}([1/k, inf))),
/// summed in closed form: each nonzero singular value sigma_j of A - B adds
/// (1/n) 2^{1 - k_j}.
inline double dtau(const MatrixOperator& a, const MatrixOperator& b) {
  const MatrixOperator diff = a - b;
  double sum = 0.0;
  for (double s : singular_values(diff)) {
    if (s <= 0.0) continue;
    if (1.0 / s > 4096.0) continue;  // contribution below 2^-4095 underflows
    sum += std::ldexp(1.0, static_cast<int>(1.0 - dtau_threshold_index(s)));
  }
  return sum / static_cast<double>(diff.n());
}

/// Partial sum of the d_tau series up to k = terms.
inline double dtau_series(const MatrixOperator& a, const MatrixOperator& b, int terms) {
  const MatrixOperator diff = a - b;
  double sum = 0.0;
  for (int k = 1; k <= terms; ++k) sum += std::ldexp(1.0, -k) * spectral_trace_above(diff, 1.0 / k);
  return sum;
}

/// Interval of singular values, [lower, upper) or with open/closed variants.
/// An absent upper bound means +inf.
struct SpectralInterval {
  double lower = 0.0;
  std::optional<double> upper;
  bool lower_closed = true;
  bool upper_closed = false;

  static SpectralInterval at_least(double a) { return {a, std::nullopt, true, false}; }
  static SpectralInterval above(double a) { return {a, std::nullopt, false, false}; }
  static SpectralInterval half_open(double a, double b) { return {a, b, true, false}; }
  static SpectralInterval closed(double a, double b) { return {a, b, true, true}; }

  bool contains(double x) const noexcept {
    const bool lo = lower_closed ? x >= lower : x > lower;
    if (!lo) return false;
    if (!upper) return true;
    return upper_closed ? x <= *upper : x < *upper;
  }
};

/// E_{|T|}(I): orthogonal projection onto the right singular vectors of T
/// whose singular value lies in I.
inline MatrixOperator spectral_project(const MatrixOperator& t, const SpectralInterval& interval) {
  if (!(interval.lower >= 0.0)) fail(ErrorCode::invalid_parameter, "spectral interval must start at a >= 0");
  if (interval.upper && !(*interval.upper > interval.lower))
    fail(ErrorCode::invalid_parameter, "spectral interval needs b > a");
  const SingularSystem sys = singular_system(t);
  Matrix p = Matrix::Zero(t.n(), t.n());
  for (std::size_t j = 0; j < sys.values.size(); ++j) {
    if (!interval.contains(sys.values[j])) continue;
    const auto v = sys.right_vectors.col(static_cast<Eigen::Index>(j));
    p += v * v.adjoint();
  }
  return MatrixOperator(std::move(p));
}

struct SpectralSplit {
  MatrixOperator bounded_part;  // T E_{|T|}([0, K])
  MatrixOperator tail_part;     // T E_{|T|}((K, inf))
  double cutoff = 0.0;
};

inline SpectralSplit split_at(const MatrixOperator& t, double cutoff) {
  if (!(cutoff > 0.0)) fail(ErrorCode::invalid_parameter, "split level K must be positive");
  const MatrixOperator low = spectral_project(t, SpectralInterval::closed(0.0, cutoff));
  const MatrixOperator high = spectral_project(t, SpectralInterval::above(cutoff));
  return {t * low, t * high, cutoff};
}

/// Fuglede-Kadison determinant exp(tau(log|T|)): the geometric mean of the
/// singular values, zero for singular T.
inline double fk_determinant(const MatrixOperator& t) {
  double sum = 0.0;
  for (double s : singular_values(t)) {
    if (s <= 0.0) return 0.0;
    sum += std::log(s);
  }
  return std::exp(sum / static_cast<double>(t.n()));
}

/// Diagonal matrix repeating each value of f over n equal cells of [0, 1).
/// Every breakpoint of f must be a multiple of 1/n.
inline MatrixOperator embed_diagonal(const StepFunction& f, Eigen::Index n) {
  if (n < 1) fail(ErrorCode::invalid_parameter, "n must be >= 1");
  if (f.total_measure() != 1.0) fail(ErrorCode::invalid_parameter, "embedding needs total_measure 1");
  const double dn = static_cast<double>(n);
  auto cell_index = [&](double x) {
    const double scaled = x * dn;
    const double k = std::round(scaled);
    if (std::abs(scaled - k) > 1e-9 * std::max(1.0, dn)) {
      std::ostringstream msg;
      msg << "breakpoint " << x << " is not a multiple of 1/" << n;
      fail(ErrorCode::invalid_parameter, msg.str());
    }
    return static_cast<Eigen::Index>(k);
  };
  std::vector<Complex> diag(static_cast<std::size_t>(n));
  for (const auto& p : f.pieces()) {
    const Eigen::Index a = cell_index(p.left);
    const Eigen::Index b = cell_index(p.right);
    for (Eigen::Index i = a; i < b; ++i) diag[static_cast<std::size_t>(i)] = p.value;
  }
  return MatrixOperator::diagonal(diag);
}

}  // namespace logint

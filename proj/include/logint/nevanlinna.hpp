#pragma once

// Nevanlinna-class functionals on the unit disk: radial log-means L(r, f),
// the class functional L(f) = sup_r L(r, f), boundary values on the circle
// and the F-norm ||f||_N = ||boundary(f)||_log with its distance.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "logint/error.hpp"
#include "logint/step_function.hpp"

namespace logint::nevanlinna {

/// Nonzero complex number held as log-modulus and unit phase, so values like
/// exp((1 + z) / (1 - z)) near z = 1 stay representable.
struct LogComplex {
  double log_abs = -std::numeric_limits<double>::infinity();
  Complex phase{1.0, 0.0};

  static LogComplex from(Complex c) {
    const double a = std::abs(c);
    if (a == 0.0) return {};
    return {std::log(a), c / a};
  }

  bool is_zero() const noexcept { return log_abs == -std::numeric_limits<double>::infinity(); }

  Complex value() const { return is_zero() ? Complex{} : phase * std::exp(log_abs); }

  /// log(1 + |value|) without overflow.
  double log1p_abs() const {
    if (is_zero()) return 0.0;
    if (log_abs > 0.0) return log_abs + std::log1p(std::exp(-log_abs));
    return std::log1p(std::exp(log_abs));
  }

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const Complex ph = a.phase * b.phase;
    return {a.log_abs + b.log_abs, ph / std::abs(ph)};
  }

  friend LogComplex operator+(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogComplex& big = a.log_abs >= b.log_abs ? a : b;
    const LogComplex& small = a.log_abs >= b.log_abs ? b : a;
    const Complex sum = big.phase + small.phase * std::exp(small.log_abs - big.log_abs);
    const double s = std::abs(sum);
    if (s == 0.0) return {};
    return {big.log_abs + std::log(s), sum / s};
  }

  LogComplex negated() const { return {log_abs, -phase}; }
  LogComplex reciprocal() const { return {-log_abs, std::conj(phase)}; }
};

/// Polynomial sum_k c_k z^k.
struct Polynomial {
  std::vector<Complex> coeffs;
};

/// p / q with q zero-free on the closed unit disk.
struct SafeRational {
  std::vector<Complex> numerator;
  std::vector<Complex> denominator;
};

/// (z - a) / (1 - conj(a) z), |a| < 1.
struct BlaschkeFactor {
  Complex a;
};

/// exp(-s (1 + z) / (1 - z)), s >= 0.
struct SingularInner {
  double s = 0.0;
};

enum class Combine { add, sub, mul, div };

inline Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Roots of sum_k c_k z^k via the companion matrix.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
  if (c.size() <= 1) return {};
  const auto deg = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < deg; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

/// True when the polynomial has no zero with |z| <= 1.
inline bool zero_free_on_closed_disk(const std::vector<Complex>& c) {
  const bool all_zero = std::all_of(c.begin(), c.end(), [](Complex v) { return v == Complex{}; });
  if (all_zero) return false;
  for (Complex r : polynomial_roots(c))
    if (std::abs(r) <= 1.0 + 1e-12) return false;
  return true;
}

class HoloFunction;
struct BinaryNode;

using HoloNode = std::variant<Polynomial, SafeRational, BlaschkeFactor, SingularInner, BinaryNode>;

/// Immutable expression tree of Nevanlinna-class building blocks.
///
/// Every quotient has a denominator built from Blaschke factors, singular
/// inner functions and polynomials or rationals without zeros in the closed
/// disk, so each tree is a ratio of bounded analytic functions.
class HoloFunction {
 public:
  /// The zero function.
  HoloFunction();

  static HoloFunction polynomial(std::vector<Complex> coeffs);
  static HoloFunction constant(Complex c) { return polynomial({c}); }
  static HoloFunction identity() { return polynomial({0.0, 1.0}); }
  static HoloFunction rational(std::vector<Complex> numerator, std::vector<Complex> denominator);
  static HoloFunction blaschke(Complex a);
  static HoloFunction singular_inner(double s);
  static HoloFunction combine(Combine op, HoloFunction lhs, HoloFunction rhs);

  const HoloNode& node() const noexcept;

  bool is_admissible_denominator() const;

  /// Value at z, |z| <= 1, in log-modulus form.
  LogComplex eval_log(Complex z) const;

  /// log|f(z)|; -inf at zeros. Products and quotients skip phase arithmetic.
  double log_abs(Complex z) const;

  Complex operator()(Complex z) const { return eval_log(z).value(); }

  std::string describe() const;

 private:
  explicit HoloFunction(HoloNode n);

  std::shared_ptr<const HoloNode> node_;
};

struct BinaryNode {
  Combine op;
  HoloFunction lhs;
  HoloFunction rhs;
};

namespace detail {

inline LogComplex eval_node(const Polynomial& p, Complex z) { return LogComplex::from(horner(p.coeffs, z)); }

inline LogComplex eval_node(const SafeRational& r, Complex z) {
  return LogComplex::from(horner(r.numerator, z)) * LogComplex::from(horner(r.denominator, z)).reciprocal();
}

inline LogComplex eval_node(const BlaschkeFactor& b, Complex z) {
  return LogComplex::from((z - b.a) / (1.0 - std::conj(b.a) * z));
}

// (1 + z)/(1 - z) = ((1 - |z|^2) + 2i Im z) / |1 - z|^2
inline double singular_gap(const SingularInner& si, Complex z) {
  const double gap = std::norm(1.0 - z);
  if (gap == 0.0) {
    std::ostringstream msg;
    msg << "singular(s=" << si.s << ") is not defined at z = 1";
    fail(ErrorCode::singularity, msg.str());
  }
  return gap;
}

/// 1 - |z|^2 without the cancellation of 1 - norm(z) near the circle.
inline double one_minus_norm(Complex z) { return (1.0 - z.real()) * (1.0 + z.real()) - z.imag() * z.imag(); }

inline LogComplex eval_node(const SingularInner& si, Complex z) {
  const double gap = singular_gap(si, z);
  if (si.s == 0.0) return LogComplex::from(1.0);
  const double re = -si.s * one_minus_norm(z) / gap;
  const double im = -si.s * 2.0 * z.imag() / gap;
  return {re, std::polar(1.0, im)};
}

/// log|c| without the hypot call; falls back when |c|^2 leaves double range.
inline double log_modulus(Complex c) {
  const double n = std::norm(c);
  if (n > 1e-300 && n < 1e300) return 0.5 * std::log(n);
  const double a = std::abs(c);
  return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(a);
}

inline double log_abs_node(const Polynomial& p, Complex z) { return log_modulus(horner(p.coeffs, z)); }

inline double log_abs_node(const SafeRational& r, Complex z) {
  return log_modulus(horner(r.numerator, z)) - log_modulus(horner(r.denominator, z));
}

inline double log_abs_node(const BlaschkeFactor& b, Complex z) {
  return log_modulus(z - b.a) - log_modulus(1.0 - std::conj(b.a) * z);
}

inline double log_abs_node(const SingularInner& si, Complex z) {
  const double gap = singular_gap(si, z);
  return si.s == 0.0 ? 0.0 : -si.s * one_minus_norm(z) / gap;
}

inline double log_abs_node(const BinaryNode& b, Complex z);

inline LogComplex eval_node(const BinaryNode& b, Complex z) {
  const LogComplex l = b.lhs.eval_log(z);
  const LogComplex r = b.rhs.eval_log(z);
  switch (b.op) {
    case Combine::add: return l + r;
    case Combine::sub: return l + r.negated();
    case Combine::mul: return l * r;
    case Combine::div:
      if (r.is_zero()) {
        std::ostringstream msg;
        msg << "denominator " << b.rhs.describe() << " vanishes at z = " << z;
        fail(ErrorCode::singularity, msg.str());
      }
      return l * r.reciprocal();
  }
  return {};
}

inline double log_abs_node(const BinaryNode& b, Complex z) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  switch (b.op) {
    case Combine::mul: {
      const double l = b.lhs.log_abs(z);
      return l == neg_inf ? neg_inf : l + b.rhs.log_abs(z);
    }
    case Combine::div: {
      const double r = b.rhs.log_abs(z);
      if (r == neg_inf) {
        std::ostringstream msg;
        msg << "denominator " << b.rhs.describe() << " vanishes at z = " << z;
        fail(ErrorCode::singularity, msg.str());
      }
      return b.lhs.log_abs(z) - r;
    }
    default: return eval_node(b, z).log_abs;
  }
}

}  // namespace detail

inline HoloFunction::HoloFunction() : HoloFunction(Polynomial{}) {}

inline const HoloNode& HoloFunction::node() const noexcept { return *node_; }

inline HoloFunction::HoloFunction(HoloNode n) : node_(std::make_shared<const HoloNode>(std::move(n))) {}

inline HoloFunction HoloFunction::polynomial(std::vector<Complex> coeffs) {
  for (Complex c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(ErrorCode::not_finite, "polynomial coefficient");
  return HoloFunction(Polynomial{std::move(coeffs)});
}

inline HoloFunction HoloFunction::rational(std::vector<Complex> numerator, std::vector<Complex> denominator) {
  if (!zero_free_on_closed_disk(denominator))
    fail(ErrorCode::invalid_parameter, "rational denominator must be zero-free on the closed unit disk");
  return HoloFunction(SafeRational{std::move(numerator), std::move(denominator)});
}

inline HoloFunction HoloFunction::blaschke(Complex a) {
  if (!(std::abs(a) < 1.0)) fail(ErrorCode::invalid_parameter, "Blaschke factor needs |a| < 1");
  return HoloFunction(BlaschkeFactor{a});
}

inline HoloFunction HoloFunction::singular_inner(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) fail(ErrorCode::invalid_parameter, "singular inner function needs s >= 0");
  return HoloFunction(SingularInner{s});
}

inline HoloFunction HoloFunction::combine(Combine op, HoloFunction lhs, HoloFunction rhs) {
  if (op == Combine::div && !rhs.is_admissible_denominator())
    fail(ErrorCode::invalid_parameter,
         "denominator must be a product of Blaschke, singular inner or zero-free atoms");
  return HoloFunction(BinaryNode{op, std::move(lhs), std::move(rhs)});
}

inline bool HoloFunction::is_admissible_denominator() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return zero_free_on_closed_disk(n.coeffs);
        } else if constexpr (std::is_same_v<T, SafeRational>) {
          return zero_free_on_closed_disk(n.numerator);
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          return (n.op == Combine::mul || n.op == Combine::div) && n.lhs.is_admissible_denominator() &&
                 n.rhs.is_admissible_denominator();
        } else {
          return true;
        }
      },
      *node_);
}

inline LogComplex HoloFunction::eval_log(Complex z) const {
  return std::visit([&](const auto& n) { return detail::eval_node(n, z); }, *node_);
}

inline double HoloFunction::log_abs(Complex z) const {
  return std::visit([&](const auto& n) { return detail::log_abs_node(n, z); }, *node_);
}

/// log(1 + e^x) without overflow.
inline double log1p_exp(double x) {
  if (x > 40.0) return x;  // e^{-x} is below half an ulp of x
  if (x < -40.0) return std::exp(x);
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline std::string HoloFunction::describe() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        std::ostringstream s;
        if constexpr (std::is_same_v<T, Polynomial>) {
          s << "poly(degree " << (n.coeffs.empty() ? 0 : n.coeffs.size() - 1) << ")";
        } else if constexpr (std::is_same_v<T, SafeRational>) {
          s << "rational";
        } else if constexpr (std::is_same_v<T, BlaschkeFactor>) {
          s << "blaschke(a=" << n.a << ")";
        } else if constexpr (std::is_same_v<T, SingularInner>) {
          s << "singular(s=" << n.s << ")";
        } else {
          static constexpr const char* names[] = {"add", "sub", "mul", "div"};
          s << names[static_cast<int>(n.op)] << "(" << n.lhs.describe() << ", " << n.rhs.describe() << ")";
        }
        return s.str();
      },
      *node_);
}

inline HoloFunction operator+(HoloFunction f, HoloFunction g) { return HoloFunction::combine(Combine::add, std::move(f), std::move(g)); }
inline HoloFunction operator-(HoloFunction f, HoloFunction g) { return HoloFunction::combine(Combine::sub, std::move(f), std::move(g)); }
inline HoloFunction operator*(HoloFunction f, HoloFunction g) { return HoloFunction::combine(Combine::mul, std::move(f), std::move(g)); }
inline HoloFunction operator/(HoloFunction f, HoloFunction g) { return HoloFunction::combine(Combine::div, std::move(f), std::move(g)); }

/// f(z) for |z| <= 1.
inline Complex eval(const HoloFunction& f, Complex z) {
  if (std::abs(z) > 1.0 + 1e-12) fail(ErrorCode::invalid_parameter, "evaluation point must satisfy |z| <= 1");
  return f(z);
}

// ---------------------------------------------------------------------------
// Quadrature on circles.

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline constexpr std::size_t min_grid = 16;

inline void require_grid(std::size_t m) {
  if (m < min_grid) fail(ErrorCode::invalid_parameter, "grid size m must be >= 16");
}

/// Sum of log(1 + |f|) over r e^{i theta_j}, theta_j = 2 pi (j + offset) / m.
inline double circle_log_sum(const HoloFunction& f, double r, std::size_t m, double offset) {
  CompensatedSum sum;
  constexpr std::size_t block = 32;  // exact sincos at block starts, rotation in between
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  const Complex rotation = std::polar(1.0, step);
  Complex z;
  for (std::size_t j = 0; j < m; ++j) {
    z = j % block == 0 ? std::polar(r, step * (static_cast<double>(j) + offset)) : z * rotation;
    const double v = log1p_exp(f.log_abs(z));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "log(1 + |f|) not finite at theta_" << j << " = " << std::arg(z) << " on radius " << r;
      fail(ErrorCode::not_finite, msg.str());
    }
    sum.add(v);
  }
  return sum.value();
}

/// L(r, f) = (1/2pi) \int log(1 + |f(r e^{i theta})|) d theta by the periodic
/// trapezoid rule on theta_j = 2 pi j / m.
inline double radial_mean(const HoloFunction& f, double r, std::size_t m) {
  if (!(r >= 0.0 && r < 1.0)) fail(ErrorCode::invalid_parameter, "radius must lie in [0, 1)");
  require_grid(m);
  return circle_log_sum(f, r, m, 0.0) / static_cast<double>(m);
}

/// Offset boundary grid theta_j = 2 pi (j + 1/2) / m; never hits z = 1.
inline Complex boundary_point(std::size_t j, std::size_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(m));
}

/// ||Phi(f)||_log: equal-weight quadrature of log(1 + |f|) on the offset grid.
inline double boundary_norm(const HoloFunction& f, std::size_t m) {
  require_grid(m);
  return circle_log_sum(f, 1.0, m, 0.5) / static_cast<double>(m);
}

/// d_N(f, g) = ||Phi(f - g)||_log.
inline double distance(const HoloFunction& f, const HoloFunction& g, std::size_t m) { return boundary_norm(f - g, m); }

/// Boundary values of f on the offset grid.
struct CircleSample {
  std::size_t m = 0;
  std::vector<Complex> values;
};

inline CircleSample phi_sample(const HoloFunction& f, std::size_t m) {
  require_grid(m);
  CircleSample out{m, {}};
  out.values.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex z = boundary_point(j, m);
    const Complex v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "boundary value not finite at theta_" << j << " = " << std::arg(z);
      fail(ErrorCode::not_finite, msg.str());
    }
    out.values.push_back(v);
  }
  return out;
}

/// A boundary sample as a step function on [0, 1): value j on [j/m, (j+1)/m),
/// i.e. the circle with normalized Haar measure.
inline StepFunction to_step_function(const CircleSample& s) {
  std::vector<Piece> pieces;
  pieces.reserve(s.m);
  const double w = 1.0 / static_cast<double>(s.m);
  for (std::size_t j = 0; j < s.m; ++j)
    pieces.push_back({static_cast<double>(j) * w, j + 1 == s.m ? 1.0 : static_cast<double>(j + 1) * w, s.values[j]});
  return StepFunction::from_pieces(std::move(pieces), 1.0);
}

// ---------------------------------------------------------------------------
// Radial supremum.

struct GridOptions {
  std::size_t initial_grid = 64;
  std::size_t max_grid = std::size_t{1} << 26;
};

struct ResolvedMean {
  double value = 0.0;
  std::size_t grid = 0;
  bool resolved = false;
};

/// L(r, f) with the grid doubled from `start` until two successive values
/// differ by less than `tol`. Doubling only evaluates the new half-offset
/// points; the previous sum is reused.
inline ResolvedMean resolved_radial_mean(const HoloFunction& f, double r, double tol, std::size_t start,
                                         std::size_t max_grid) {
  if (!(r >= 0.0 && r < 1.0)) fail(ErrorCode::invalid_parameter, "radius must lie in [0, 1)");
  std::size_t m = std::max(start, min_grid);
  double sum = circle_log_sum(f, r, m, 0.0);
  double v = sum / static_cast<double>(m);
  while (2 * m <= max_grid) {
    sum += circle_log_sum(f, r, m, 0.5);
    m *= 2;
    const double next = sum / static_cast<double>(m);
    const bool done = std::abs(next - v) < tol;
    v = next;
    if (done) return {v, m, true};
  }
  return {v, m, false};
}

/// r_k = 1 - 2^-k.
inline double schedule_radius(int k) { return 1.0 - std::ldexp(1.0, -k); }

struct SweepPoint {
  int k = 0;
  double r = 0.0;
  double value = 0.0;
  std::size_t grid = 0;
  bool resolved = false;
};

/// (r_k, L(r_k, f)) for k = 1..max_level, each mean resolved to `grid_tol`.
inline std::vector<SweepPoint> radial_sweep(const HoloFunction& f, int max_level, double grid_tol,
                                            GridOptions grid = {}) {
  std::vector<SweepPoint> out;
  std::size_t m = grid.initial_grid;
  for (int k = 1; k <= max_level; ++k) {
    const double r = schedule_radius(k);
    const ResolvedMean rm = resolved_radial_mean(f, r, grid_tol, std::max(min_grid, m / 2), grid.max_grid);
    m = rm.grid;
    out.push_back({k, r, rm.value, rm.grid, rm.resolved});
  }
  return out;
}

struct ClassNormOptions {
  int max_level = 18;
  GridOptions grid{};
};

struct ClassNorm {
  double estimate = 0.0;
  bool converged = false;
  int levels = 0;       // radii visited
  std::size_t grid = 0;  // last grid size
};

/// Estimate of L(f) = sup_{r<1} L(r, f) along r_k = 1 - 2^-k.
///
/// Each level resolves L(r_k, f) to tol/4 on the grid. Converged when the
/// increment between consecutive radii drops below tol; then the last value is
/// returned. Otherwise the running supremum comes back flagged, which is a
/// lower bound for L(f) because L(r, f) is nondecreasing in r.
inline ClassNorm class_norm(const HoloFunction& f, double tol, ClassNormOptions opt = {}) {
  if (!(tol > 0.0)) fail(ErrorCode::invalid_parameter, "tol must be positive");
  ClassNorm out;
  double sup = 0.0;
  double prev = 0.0;
  std::size_t m = opt.grid.initial_grid;
  for (int k = 1; k <= opt.max_level; ++k) {
    const ResolvedMean rm =
        resolved_radial_mean(f, schedule_radius(k), tol / 4.0, std::max(min_grid, m / 2), opt.grid.max_grid);
    m = rm.grid;
    out.levels = k;
    out.grid = m;
    sup = std::max(sup, rm.value);
    if (!rm.resolved) break;
    if (k > 1 && std::abs(rm.value - prev) < tol) {
      out.estimate = rm.value;
      out.converged = true;
      return out;
    }
    prev = rm.value;
  }
  out.estimate = sup;
  return out;
}

/// Shapiro-Shields distance d_L(f, g) = L(f - g), reported for comparison.
inline ClassNorm class_distance(const HoloFunction& f, const HoloFunction& g, double tol, ClassNormOptions opt = {}) {
  return class_norm(f - g, tol, opt);
}

struct SmirnovReport {
  double defect = 0.0;
  bool is_smirnov = false;
  double class_estimate = 0.0;
  double boundary = 0.0;
  bool converged = false;
};

inline constexpr double default_smirnov_tol = 1e-4;

/// L(f) - ||Phi(f)||_log, which vanishes exactly on the Smirnov class. The
/// radial supremum is resolved to tol/4 so the classification threshold
/// dominates the sup-approximation error.
///
/// When the radial supremum has not converged, both the running supremum and
/// ||Phi(f)||_log are lower bounds for L(f), so the reported defect is the
/// lower bound max(sup - ||Phi(f)||_log, 0).
inline SmirnovReport smirnov_defect(const HoloFunction& f, double tol = default_smirnov_tol,
                                    std::size_t boundary_grid = 4096, ClassNormOptions opt = {}) {
  if (!(tol > 0.0)) fail(ErrorCode::invalid_parameter, "tol must be positive");
  const ClassNorm cn = class_norm(f, tol / 4.0, opt);
  const double b = boundary_norm(f, boundary_grid);
  SmirnovReport rep;
  rep.class_estimate = cn.estimate;
  rep.boundary = b;
  rep.defect = cn.converged ? cn.estimate - b : std::max(cn.estimate - b, 0.0);
  rep.is_smirnov = rep.defect <= tol;
  rep.converged = cn.converged;
  return rep;
}

}  // namespace logint::nevanlinna

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "logint/error.hpp"

namespace logint {

using Complex = std::complex<double>;

inline constexpr double infinite_measure = std::numeric_limits<double>::infinity();

/// One constant piece `value` on the half-open interval [left, right).
struct Piece {
  double left = 0.0;
  double right = 0.0;
  Complex value{};

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Piecewise-constant complex function on [0, total_measure) with Lebesgue
/// measure, identically zero off its pieces.
///
/// Values are always held in canonical form: pieces sorted and disjoint,
/// zero-valued pieces dropped, touching pieces with equal values merged.
/// Two functions that agree almost everywhere therefore compare equal.
class StepFunction {
 public:
  /// Zero function on [0, +inf).
  StepFunction() = default;

  /// Zero function on [0, total_measure).
  explicit StepFunction(double total_measure) : total_(check_total(total_measure)) {}

  /// Builds the canonical form of the given pieces. Pieces may arrive in any
  /// order but must not overlap.
  static StepFunction from_pieces(std::vector<Piece> pieces, double total_measure = infinite_measure) {
    StepFunction f(total_measure);
    f.pieces_ = canonicalize(std::move(pieces), f.total_);
    return f;
  }

  /// `value` on [left, right), zero elsewhere.
  static StepFunction constant(Complex value, double left, double right,
                               double total_measure = infinite_measure) {
    return from_pieces({Piece{left, right, value}}, total_measure);
  }

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  double total_measure() const noexcept { return total_; }
  bool is_zero() const noexcept { return pieces_.empty(); }

  /// Measure of the support.
  double support_measure() const noexcept {
    double m = 0.0;
    for (const auto& p : pieces_) m += p.right - p.left;
    return m;
  }

  double sup_abs() const noexcept {
    double s = 0.0;
    for (const auto& p : pieces_) s = std::max(s, std::abs(p.value));
    return s;
  }

  Complex operator()(double x) const noexcept {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.left; });
    if (it == pieces_.begin()) return {};
    --it;
    return x < it->right ? it->value : Complex{};
  }

  StepFunction scaled(Complex alpha) const {
    std::vector<Piece> out = pieces_;
    for (auto& p : out) p.value *= alpha;
    return from_pieces(std::move(out), total_);
  }

  /// Restriction to [left, right).
  StepFunction restricted(double left, double right) const {
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
      const double a = std::max(p.left, left);
      const double b = std::min(p.right, right);
      if (a < b) out.push_back({a, b, p.value});
    }
    return from_pieces(std::move(out), total_);
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    const bool same_total = a.total_ == b.total_ || (std::isinf(a.total_) && std::isinf(b.total_));
    return same_total && a.pieces_ == b.pieces_;
  }

 private:
  static double check_total(double total) {
    if (!(total > 0.0)) fail(ErrorCode::malformed_input, "total_measure must be positive");
    return total;
  }

  static std::vector<Piece> canonicalize(std::vector<Piece> pieces, double total) {
    for (const auto& p : pieces) {
      if (!std::isfinite(p.left) || !std::isfinite(p.right) || !(p.left >= 0.0) || !(p.left < p.right)) {
        std::ostringstream msg;
        msg << "piece [" << p.left << ", " << p.right << ") is not a nonempty interval in [0, inf)";
        fail(ErrorCode::malformed_input, msg.str());
      }
      if (p.right > total) {
        std::ostringstream msg;
        msg << "piece [" << p.left << ", " << p.right << ") exceeds total_measure " << total;
        fail(ErrorCode::malformed_input, msg.str());
      }
      if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()))
        fail(ErrorCode::not_finite, "piece value is not finite");
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const Piece& a, const Piece& b) { return a.left < b.left; });
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      if (pieces[i - 1].right > pieces[i].left) {
        std::ostringstream msg;
        msg << "pieces overlap at " << pieces[i].left;
        fail(ErrorCode::malformed_input, msg.str());
      }
    }
    std::vector<Piece> out;
    out.reserve(pieces.size());
    for (const auto& p : pieces) {
      if (p.value == Complex{}) continue;
      if (!out.empty() && out.back().right == p.left && out.back().value == p.value) {
        out.back().right = p.right;
      } else {
        out.push_back(p);
      }
    }
    return out;
  }

  std::vector<Piece> pieces_;
  double total_ = infinite_measure;
};

/// Cells of the merged breakpoint refinement of several step functions,
/// together with each function's value on each cell.
struct Refinement {
  std::vector<double> breaks;                 // cell c is [breaks[c], breaks[c+1])
  std::vector<std::vector<Complex>> values;   // values[i][c] = f_i on cell c

  std::size_t cells() const noexcept { return breaks.empty() ? 0 : breaks.size() - 1; }
};

inline bool same_domain(const StepFunction& f, const StepFunction& g) noexcept {
  return f.total_measure() == g.total_measure();
}

inline void require_same_domain(const StepFunction& f, const StepFunction& g) {
  if (!same_domain(f, g)) {
    std::ostringstream msg;
    msg << "total_measure " << f.total_measure() << " vs " << g.total_measure();
    fail(ErrorCode::domain_mismatch, msg.str());
  }
}

inline Refinement common_refinement(std::span<const StepFunction> fs) {
  Refinement r;
  for (std::size_t i = 1; i < fs.size(); ++i) require_same_domain(fs[0], fs[i]);
  for (const auto& f : fs) {
    for (const auto& p : f.pieces()) {
      r.breaks.push_back(p.left);
      r.breaks.push_back(p.right);
    }
  }
  std::sort(r.breaks.begin(), r.breaks.end());
  r.breaks.erase(std::unique(r.breaks.begin(), r.breaks.end()), r.breaks.end());
  const std::size_t cells = r.cells();
  r.values.assign(fs.size(), std::vector<Complex>(cells));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& pieces = fs[i].pieces();
    std::size_t k = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      const double a = r.breaks[c];
      while (k < pieces.size() && pieces[k].right <= a) ++k;
      if (k < pieces.size() && pieces[k].left <= a) r.values[i][c] = pieces[k].value;
    }
  }
  return r;
}

inline Refinement common_refinement(const StepFunction& f, const StepFunction& g) {
  const StepFunction both[] = {f, g};
  return common_refinement(std::span<const StepFunction>(both));
}

/// Rebuilds a step function from per-cell values on a refinement.
inline StepFunction from_refinement(const Refinement& r, std::span<const Complex> values,
                                    double total_measure) {
  std::vector<Piece> pieces;
  pieces.reserve(r.cells());
  for (std::size_t c = 0; c < r.cells(); ++c) pieces.push_back({r.breaks[c], r.breaks[c + 1], values[c]});
  return StepFunction::from_pieces(std::move(pieces), total_measure);
}

enum class BinaryOp { add, sub, mul };

inline StepFunction pointwise(const StepFunction& f, const StepFunction& g, BinaryOp op) {
  const Refinement r = common_refinement(f, g);
  std::vector<Complex> out(r.cells());
  for (std::size_t c = 0; c < r.cells(); ++c) {
    const Complex a = r.values[0][c];
    const Complex b = r.values[1][c];
    switch (op) {
      case BinaryOp::add: out[c] = a + b; break;
      case BinaryOp::sub: out[c] = a - b; break;
      case BinaryOp::mul: out[c] = a * b; break;
    }
  }
  return from_refinement(r, out, f.total_measure());
}

inline StepFunction operator+(const StepFunction& f, const StepFunction& g) { return pointwise(f, g, BinaryOp::add); }
inline StepFunction operator-(const StepFunction& f, const StepFunction& g) { return pointwise(f, g, BinaryOp::sub); }
inline StepFunction operator*(const StepFunction& f, const StepFunction& g) { return pointwise(f, g, BinaryOp::mul); }
inline StepFunction operator*(Complex alpha, const StepFunction& f) { return f.scaled(alpha); }

/// Largest pointwise deviation |f - g| over the merged refinement.
inline double sup_distance(const StepFunction& f, const StepFunction& g) {
  const Refinement r = common_refinement(f, g);
  double d = 0.0;
  for (std::size_t c = 0; c < r.cells(); ++c) d = std::max(d, std::abs(r.values[0][c] - r.values[1][c]));
  return d;
}

// ---------------------------------------------------------------------------

/// One step of a nonincreasing step function: `height` held over `width`.
struct Step {
  double width = 0.0;
  double height = 0.0;

  friend bool operator==(const Step&, const Step&) = default;
};

/// Nonincreasing nonnegative step function on (0, total_width]. Holds the
/// decreasing rearrangement of |f| and the singular-number function of a
/// matrix. Steps with equal heights are merged.
class SingularStep {
 public:
  SingularStep() = default;

  explicit SingularStep(std::vector<Step> steps) {
    for (const auto& s : steps) {
      if (!(s.width > 0.0) || !std::isfinite(s.width) || !(s.height >= 0.0) || !std::isfinite(s.height))
        fail(ErrorCode::malformed_input, "singular step needs positive finite width and finite nonnegative height");
    }
    std::stable_sort(steps.begin(), steps.end(),
                     [](const Step& a, const Step& b) { return a.height > b.height; });
    for (const auto& s : steps) {
      if (!steps_.empty() && steps_.back().height == s.height) {
        steps_.back().width += s.width;
      } else {
        steps_.push_back(s);
      }
    }
  }

  const std::vector<Step>& steps() const noexcept { return steps_; }
  bool empty() const noexcept { return steps_.empty(); }

  double total_width() const noexcept {
    double w = 0.0;
    for (const auto& s : steps_) w += s.width;
    return w;
  }

  /// Value at x in (0, total_width]; zero beyond.
  double operator()(double x) const noexcept {
    double acc = 0.0;
    for (const auto& s : steps_) {
      acc += s.width;
      if (x <= acc) return s.height;
    }
    return 0.0;
  }

  /// \int g(mu(x)) dx over the steps.
  template <class Fn>
  double integral(Fn&& g) const {
    double sum = 0.0;
    for (const auto& s : steps_) sum += s.width * g(s.height);
    return sum;
  }

  /// Integral restricted to steps whose height satisfies `keep`.
  template <class Fn, class Pred>
  double integral_where(Fn&& g, Pred&& keep) const {
    double sum = 0.0;
    for (const auto& s : steps_)
      if (keep(s.height)) sum += s.width * g(s.height);
    return sum;
  }

  /// The steps of positive height; the part every log-type integral sees.
  SingularStep positive_part() const {
    SingularStep out;
    for (const auto& s : steps_)
      if (s.height > 0.0) out.steps_.push_back(s);
    return out;
  }

  friend bool operator==(const SingularStep&, const SingularStep&) = default;

 private:
  std::vector<Step> steps_;
};

}  // namespace logint

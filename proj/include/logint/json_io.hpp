#pragma once

// JSON schemas for step functions, singular steps, matrices, Nevanlinna
// expression trees and witness reports. Every emitted number is rounded to
// 15 significant digits, so emitting, re-reading and emitting again is stable.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"
#include "logint/error.hpp"
#include "logint/nevanlinna.hpp"
#include "logint/operator_space.hpp"
#include "logint/step_function.hpp"
#include "logint/witnesses.hpp"

namespace logint::io {

using Json = nlohmann::json;

inline double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

inline Json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return round15(x);
}

inline double read_number(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return infinite_measure;
  }
  fail(ErrorCode::malformed_input, std::string("expected a number for ") + what);
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::malformed_input, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

/// Complex scalars are written {"re": x, "im": y}; a bare number or a
/// [re, im] pair is also accepted on input.
inline Json complex_json(Complex c) { return {{"re", number(c.real())}, {"im", number(c.imag())}}; }

inline Complex read_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {read_number(j[0], "re"), read_number(j[1], "im")};
  if (j.is_object()) {
    const double re = j.contains("re") ? read_number(j.at("re"), "re") : 0.0;
    const double im = j.contains("im") ? read_number(j.at("im"), "im") : 0.0;
    return {re, im};
  }
  fail(ErrorCode::malformed_input, "expected a complex number");
}

inline std::vector<Complex> read_complex_list(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::malformed_input, "expected an array of complex numbers");
  std::vector<Complex> out;
  for (const auto& v : j) out.push_back(read_complex(v));
  return out;
}

inline Json complex_list_json(const std::vector<Complex>& v) {
  Json arr = Json::array();
  for (Complex c : v) arr.push_back(complex_json(c));
  return arr;
}

// StepFunction: {"total_measure": number|"inf", "pieces": [{"l","r","re","im"}]}

inline Json to_json(const StepFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces())
    pieces.push_back({{"l", number(p.left)}, {"r", number(p.right)}, {"re", number(p.value.real())},
                      {"im", number(p.value.imag())}});
  return {{"total_measure", number(f.total_measure())}, {"pieces", pieces}};
}

inline StepFunction step_function_from_json(const Json& j) {
  const double total = j.is_object() && j.contains("total_measure") ? read_number(j.at("total_measure"), "total_measure")
                                                                     : infinite_measure;
  const Json& arr = field(j, "pieces");
  if (!arr.is_array()) fail(ErrorCode::malformed_input, "\"pieces\" must be an array");
  std::vector<Piece> pieces;
  for (const auto& p : arr) {
    const double re = p.contains("re") ? read_number(p.at("re"), "re") : 0.0;
    const double im = p.contains("im") ? read_number(p.at("im"), "im") : 0.0;
    pieces.push_back({read_number(field(p, "l"), "l"), read_number(field(p, "r"), "r"), {re, im}});
  }
  return StepFunction::from_pieces(std::move(pieces), total);
}

// SingularStep: {"total_measure": w, "steps": [{"width","height"}]}

inline Json to_json(const SingularStep& s) {
  Json steps = Json::array();
  for (const auto& st : s.steps()) steps.push_back({{"width", number(st.width)}, {"height", number(st.height)}});
  return {{"total_measure", number(s.total_width())}, {"steps", steps}};
}

inline SingularStep singular_step_from_json(const Json& j) {
  const Json& arr = field(j, "steps");
  if (!arr.is_array()) fail(ErrorCode::malformed_input, "\"steps\" must be an array");
  std::vector<Step> steps;
  for (const auto& s : arr) steps.push_back({read_number(field(s, "width"), "width"), read_number(field(s, "height"), "height")});
  return SingularStep(std::move(steps));
}

// Matrix: {"n": n, "re": [[...]], "im": [[...]]}; "im" may be omitted.

inline Json to_json(const MatrixOperator& t) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < t.n(); ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index k = 0; k < t.n(); ++k) {
      rr.push_back(number(t.entries()(i, k).real()));
      ri.push_back(number(t.entries()(i, k).imag()));
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"n", t.n()}, {"re", re}, {"im", im}};
}

inline MatrixOperator matrix_from_json(const Json& j) {
  const Json& re = field(j, "re");
  const auto rows = static_cast<Eigen::Index>(re.is_array() ? re.size() : 0);
  const Eigen::Index n = j.contains("n") ? j.at("n").get<Eigen::Index>() : rows;
  if (n < 1 || rows != n) fail(ErrorCode::malformed_input, "matrix \"re\" must have n rows");
  const Json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || static_cast<Eigen::Index>(im->size()) != n))
    fail(ErrorCode::malformed_input, "matrix \"im\" must have n rows");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = re[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      fail(ErrorCode::malformed_input, "matrix rows must have n entries");
    for (Eigen::Index k = 0; k < n; ++k) {
      double imag = 0.0;
      if (im) {
        const Json& irow = (*im)[static_cast<std::size_t>(i)];
        if (!irow.is_array() || static_cast<Eigen::Index>(irow.size()) != n)
          fail(ErrorCode::malformed_input, "matrix rows must have n entries");
        imag = read_number(irow[static_cast<std::size_t>(k)], "im");
      }
      m(i, k) = {read_number(row[static_cast<std::size_t>(k)], "re"), imag};
    }
  }
  return MatrixOperator(std::move(m));
}

inline Json to_json(const SpectralSplit& s) {
  return {{"cutoff", number(s.cutoff)}, {"bounded_part", to_json(s.bounded_part)}, {"tail_part", to_json(s.tail_part)}};
}

// HoloFunction expression tree:
//   {"op": "poly", "coeffs": [c0, c1, ...]}
//   {"op": "rational", "num": [...], "den": [...]}
//   {"op": "blaschke", "a": c}
//   {"op": "singular", "s": x}
//   {"op": "add" | "sub" | "mul" | "div", "args": [f, g]}

inline Json to_json(const nevanlinna::HoloFunction& f) {
  using namespace nevanlinna;
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return {{"op", "poly"}, {"coeffs", complex_list_json(n.coeffs)}};
        } else if constexpr (std::is_same_v<T, SafeRational>) {
          return {{"op", "rational"}, {"num", complex_list_json(n.numerator)}, {"den", complex_list_json(n.denominator)}};
        } else if constexpr (std::is_same_v<T, BlaschkeFactor>) {
          return {{"op", "blaschke"}, {"a", complex_json(n.a)}};
        } else if constexpr (std::is_same_v<T, SingularInner>) {
          return {{"op", "singular"}, {"s", number(n.s)}};
        } else {
          static constexpr const char* names[] = {"add", "sub", "mul", "div"};
          return {{"op", names[static_cast<int>(n.op)]}, {"args", {to_json(n.lhs), to_json(n.rhs)}}};
        }
      },
      f.node());
}

inline nevanlinna::HoloFunction holo_from_json(const Json& j) {
  using nevanlinna::Combine;
  using nevanlinna::HoloFunction;
  if (j.is_number()) return HoloFunction::constant(j.get<double>());
  const std::string op = field(j, "op").get<std::string>();
  if (op == "poly" || op == "polynomial") return HoloFunction::polynomial(read_complex_list(field(j, "coeffs")));
  if (op == "const") return HoloFunction::constant(read_complex(field(j, "c")));
  if (op == "z") return HoloFunction::identity();
  if (op == "rational") return HoloFunction::rational(read_complex_list(field(j, "num")), read_complex_list(field(j, "den")));
  if (op == "blaschke") return HoloFunction::blaschke(read_complex(field(j, "a")));
  if (op == "singular") return HoloFunction::singular_inner(read_number(field(j, "s"), "s"));
  const Combine kinds[] = {Combine::add, Combine::sub, Combine::mul, Combine::div};
  const char* names[] = {"add", "sub", "mul", "div"};
  for (int i = 0; i < 4; ++i) {
    if (op != names[i]) continue;
    const Json& args = field(j, "args");
    if (!args.is_array() || args.size() != 2) fail(ErrorCode::malformed_input, op + " needs exactly two args");
    return HoloFunction::combine(kinds[i], holo_from_json(args[0]), holo_from_json(args[1]));
  }
  fail(ErrorCode::malformed_input, "unknown op \"" + op + "\"");
}

inline Json to_json(const nevanlinna::CircleSample& s) { return {{"m", s.m}, {"values", complex_list_json(s.values)}}; }

// Witness reports.

inline Json to_json(const witness::Unboundedness& w) {
  return {{"witness", "unbounded"},
          {"eps", number(w.eps)},
          {"N", w.N},
          {"K", number(w.K)},
          {"eta", number(w.eta)},
          {"norm_f", number(w.norm_f)},
          {"norm_f_over_N", number(w.norm_f_over_N)},
          {"holds", w.holds()}};
}

inline Json to_json(const witness::ConvexSplit& s) {
  Json bps = Json::array();
  for (double x : s.breakpoints) bps.push_back(number(x));
  Json pieces = Json::array();
  for (const auto& p : s.pieces) pieces.push_back(to_json(p));
  return {{"witness", "nonconvex"}, {"n", s.n},           {"eps", number(s.eps)},
          {"piece_norm", number(s.piece_norm)}, {"breakpoints", bps}, {"pieces", pieces}};
}

inline Json to_json(const witness::Separation& s) {
  return {{"witness", "separation"},
          {"k", s.k},
          {"support_measure", number(s.support_measure)},
          {"lognorm", number(s.lognorm_value)},
          {"dominant", number(s.dominant)},
          {"correction", number(s.correction)}};
}

inline Json to_json(const witness::CauchyReport& r) {
  Json d = Json::array();
  for (double x : r.distances) d.push_back(number(x));
  Json out = {{"cauchy", r.cauchy}, {"distances", d}, {"tail_sum", number(r.tail_sum)}};
  if (r.cauchy) {
    out["limit"] = to_json(*r.limit);
    out["distance_to_limit"] = number(r.distance_to_limit);
  } else {
    out["gap"] = number(r.gap);
  }
  return out;
}

/// Parses text, mapping parser failures to malformed_input.
inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::malformed_input, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace logint::io

#pragma once

// Reference Nevanlinna-class functions used by the property suites.

#include <string>
#include <vector>

#include "logint/nevanlinna.hpp"

namespace logint::nevanlinna {

struct CorpusEntry {
  std::string name;
  HoloFunction f;
  bool bounded = false;  // bounded analytic, hence in the Smirnov class
  bool inner = false;    // modulus 1 a.e. on the circle
};

inline std::vector<CorpusEntry> corpus() {
  using H = HoloFunction;
  const H z = H::identity();
  return {
      {"z", z, true, true},
      {"const(2)", H::constant(2.0), true, false},
      {"blaschke(0.5)", H::blaschke(0.5), true, true},
      {"blaschke(-0.3+0.6i)", H::blaschke({-0.3, 0.6}), true, true},
      {"blaschke product", H::blaschke(0.5) * H::blaschke({0.0, 0.9}) * H::blaschke(-0.7), true, true},
      {"blaschke(0.5)*(1+z)", H::blaschke(0.5) * H::polynomial({1.0, 1.0}), true, false},
      {"1/(1-0.9z)", H::rational({1.0}, {1.0, -0.9}), true, false},
      {"1+z^2-0.5z^3", H::polynomial({1.0, 0.0, 1.0, -0.5}), true, false},
      {"3z-2", H::polynomial({-2.0, 3.0}), true, false},
      {"singular(1)", H::singular_inner(1.0), true, true},
      {"singular(0.5)*blaschke(0.3)", H::singular_inner(0.5) * H::blaschke(0.3), true, true},
      {"1/singular(1)", H::constant(1.0) / H::singular_inner(1.0), false, true},
      {"blaschke(0.5)/singular(0.5)", H::blaschke(0.5) / H::singular_inner(0.5), false, true},
  };
}

}  // namespace logint::nevanlinna

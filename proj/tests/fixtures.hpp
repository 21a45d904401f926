#pragma once

#include <cmath>
#include <vector>

#include "hajlasz/exponent.hpp"
#include "hajlasz/lebesgue.hpp"
#include "hajlasz/space.hpp"

namespace fixture {

// two points at distance 0.5 with unit weights
inline hajlasz::FiniteSpace x2() {
  return hajlasz::FiniteSpace({0.0, 0.5, 0.5, 0.0}, {1.0, 1.0}, {"a", "b"});
}

// 0, 1, 2 on the line with unit weights
inline hajlasz::FiniteSpace l3() {
  return hajlasz::FiniteSpace::from_coords({{0.0}, {1.0}, {2.0}}, 1.0, {1.0, 1.0, 1.0});
}

inline hajlasz::FunctionField f_star() { return {0.0, 1.0}; }
inline hajlasz::FunctionField f_l3() { return {0.0, 1.0, 2.0}; }

inline hajlasz::ExponentField constant_p(std::size_t n, double c) {
  return hajlasz::ExponentField(std::vector<double>(n, c));
}

}  // namespace fixture

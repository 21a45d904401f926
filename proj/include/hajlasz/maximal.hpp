#pragma once

#include "hajlasz/lebesgue.hpp"
#include "hajlasz/space.hpp"

namespace hajlasz {

// Every supremum over t in (0, inf) is realized on the closed balls at the
// candidate radii of a center: on (r_k, r_{k+1}] the open ball B(x, t) is the
// closed ball of radius r_k and t^{-s} is largest as t -> r_k.

/// Hardy-Littlewood maximal function over all balls containing each point.
FunctionField hl_maximal(const FiniteSpace& space, const FunctionField& f);

/// Fractional sharp maximal function f_u^s over centered balls, oscillation
/// measured against the ball average.
FunctionField sharp_maximal(const FiniteSpace& space, const FunctionField& f,
                            double u, double s);

/// As sharp_maximal, oscillation against the best constant on each ball.
FunctionField tilde_sharp(const FiniteSpace& space, const FunctionField& f,
                          double u, double s);

/// As sharp_maximal, oscillation against the value at the center.
FunctionField overline_sharp(const FiniteSpace& space, const FunctionField& f,
                             double u, double s);

/// Pointwise-least h with |f(x) - f_B| <= r(B)^s h(x) for every ball B
/// containing x.
FunctionField minimal_h(const FiniteSpace& space, const FunctionField& f,
                        double s);

/// min over c of (mu(B)^{-1} sum_B w |f - c|^u)^{1/u}; `members` and `measure`
/// describe the ball.
double best_constant_deviation(const FiniteSpace& space, const FunctionField& f,
                               std::span<const Index> members, double measure,
                               double u);

}  // namespace hajlasz

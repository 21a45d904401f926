#pragma once

#include "hajlasz/covering_solver.hpp"
#include "hajlasz/exponent.hpp"
#include "hajlasz/lebesgue.hpp"
#include "hajlasz/space.hpp"

namespace hajlasz {

/// A candidate s-order Hajlasz gradient together with its verdict.
struct GradientCertificate {
  FunctionField g;
  bool valid = false;
  /// min over pairs x != y of g(x) + g(y) - |f(x) - f(y)| / rho(x,y)^s
  double slack = 0.0;
  /// ||g||_{p(.)}; NaN when no exponent was supplied.
  double norm = 0.0;
};

/// Absolute slack tolerance, scaled by max(1, largest pair quotient).
inline constexpr double kGradientSlackTol = 1e-12;

/// Pair quotients c_xy = |f(x) - f(y)| / rho(x,y)^s, row-major n*n.
std::vector<double> pair_quotients(const FiniteSpace& space,
                                   const FunctionField& f, double s);

GradientCertificate is_gradient(const FiniteSpace& space, const FunctionField& f,
                                const FunctionField& g, double s);

/// g0(x) = max_{y != x} c_xy / 2, always a gradient.
FunctionField canonical_gradient(const FiniteSpace& space,
                                 const FunctionField& f, double s);

inline constexpr double kDefaultSolverTol = 1e-6;

/// The gradient of least ||g||_{p(.)}, to relative tolerance `tol` on the
/// norm value. The certificate is always a valid gradient. Throws
/// SolverError (carrying the best feasible iterate) on non-convergence.
GradientCertificate minimal_gradient(const FiniteSpace& space,
                                     const ExponentField& p,
                                     const FunctionField& f, double s,
                                     double tol = kDefaultSolverTol);

/// ||f||_{p(.)} + inf_g ||g||_{p(.)}
double sobolev_norm(const FiniteSpace& space, const ExponentField& p,
                    const FunctionField& f, double s,
                    double tol = kDefaultSolverTol);

}  // namespace hajlasz

#pragma once

#include <cstdint>
#include <string>

#include "hajlasz/exponent.hpp"
#include "hajlasz/lebesgue.hpp"
#include "hajlasz/space.hpp"

namespace hajlasz {

/// Uniform grid on [0,1]^dim with side^dim points, mu = 1/side^dim,
/// rho = |x - y|_2^beta. dim is 1 or 2.
FiniteSpace gen_grid(int dim, std::size_t side, double beta);

/// n uniform points in [0,1]^dim (Rng seeded with `seed`), Euclidean, mu = 1/n.
FiniteSpace gen_random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed);

enum class ExponentKind { kConstant, kAffine, kBump };

ExponentKind parse_exponent_kind(const std::string& name);

struct ExponentParams {
  double c0 = 2.0;
  double c1 = 0.0;
  double width = 0.25;  // bump radius scale
  double p_lo = 1.0;    // clip range
  double p_hi = 1e300;
  Index basepoint = 0;
};

/// constant: p = c0
/// affine:   p = c0 + c1 * t, t the first coordinate (label index without
///           coordinates), clipped to [p_lo, p_hi]
/// bump:     p = c0 + c1 * exp(-(rho(x, x0) / width)^2), clipped
ExponentField gen_exponent(const FiniteSpace& space, ExponentKind kind,
                           const ExponentParams& params);

/// i.i.d. uniform values on [lo, hi).
FunctionField gen_random_function(std::size_t n, std::uint64_t seed,
                                  double lo = -1.0, double hi = 1.0);

}  // namespace hajlasz

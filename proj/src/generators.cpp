#include "hajlasz/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hajlasz/random.hpp"

namespace hajlasz {

FiniteSpace gen_grid(int dim, std::size_t side, double beta) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim: must be 1 or 2");
  if (side < 2) throw std::invalid_argument("side: must be at least 2");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta: must be >= 1");
  const double step = 1.0 / static_cast<double>(side - 1);
  std::vector<std::vector<double>> coords;
  if (dim == 1) {
    for (std::size_t i = 0; i < side; ++i) coords.push_back({i * step});
  } else {
    for (std::size_t i = 0; i < side; ++i) {
      for (std::size_t j = 0; j < side; ++j) coords.push_back({i * step, j * step});
    }
  }
  const std::size_t n = coords.size();
  return FiniteSpace::from_coords(std::move(coords), beta,
                                  std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteSpace gen_random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n: must be at least 1");
  if (dim < 1) throw std::invalid_argument("dim: must be at least 1");
  Rng rng(seed);
  std::vector<std::vector<double>> coords(n, std::vector<double>(dim));
  for (auto& c : coords) {
    for (double& v : c) v = rng.uniform();
  }
  return FiniteSpace::from_coords(std::move(coords), 1.0,
                                  std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ExponentKind parse_exponent_kind(const std::string& name) {
  if (name == "constant") return ExponentKind::kConstant;
  if (name == "affine") return ExponentKind::kAffine;
  if (name == "bump") return ExponentKind::kBump;
  throw std::invalid_argument("kind: unknown exponent kind '" + name + "'");
}

ExponentField gen_exponent(const FiniteSpace& space, ExponentKind kind,
                           const ExponentParams& params) {
  if (params.basepoint >= space.size()) {
    throw std::invalid_argument("basepoint: index out of range");
  }
  std::vector<double> values(space.size());
  for (Index i = 0; i < space.size(); ++i) {
    double v = params.c0;
    if (kind == ExponentKind::kAffine) {
      const double t = space.has_coords() ? space.coords()[i][0] : static_cast<double>(i);
      v = params.c0 + params.c1 * t;
    } else if (kind == ExponentKind::kBump) {
      const double r = space.dist(i, params.basepoint) / params.width;
      v = params.c0 + params.c1 * std::exp(-r * r);
    }
    if (kind != ExponentKind::kConstant) v = std::clamp(v, params.p_lo, params.p_hi);
    values[i] = v;
  }
  return ExponentField(std::move(values), params.basepoint);
}

FunctionField gen_random_function(std::size_t n, std::uint64_t seed, double lo,
                                  double hi) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return FunctionField(std::move(v));
}

}  // namespace hajlasz

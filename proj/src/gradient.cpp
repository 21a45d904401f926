#include "hajlasz/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hajlasz {

namespace {

void check_s(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("s: must be positive");
}

}  // namespace

std::vector<double> pair_quotients(const FiniteSpace& space,
                                   const FunctionField& f, double s) {
  check_aligned(space, f, "function");
  check_s(s);
  const std::size_t n = space.size();
  std::vector<double> c(n * n, 0.0);
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      const double q = std::abs(f[x] - f[y]) / std::pow(space.dist(x, y), s);
      c[x * n + y] = q;
      c[y * n + x] = q;
    }
  }
  return c;
}

GradientCertificate is_gradient(const FiniteSpace& space, const FunctionField& f,
                                const FunctionField& g, double s) {
  check_aligned(space, g, "gradient");
  const auto c = pair_quotients(space, f, s);
  const std::size_t n = space.size();
  GradientCertificate cert;
  cert.g = g;
  cert.norm = std::numeric_limits<double>::quiet_NaN();
  double slack = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      slack = std::min(slack, g[x] + g[y] - c[x * n + y]);
      scale = std::max(scale, c[x * n + y]);
    }
  }
  if (n < 2) slack = 0.0;
  const bool nonnegative =
      std::all_of(g.values.begin(), g.values.end(), [](double v) { return v >= 0.0; });
  cert.slack = slack;
  cert.valid = nonnegative && slack >= -kGradientSlackTol * scale;
  return cert;
}

FunctionField canonical_gradient(const FiniteSpace& space,
                                 const FunctionField& f, double s) {
  const auto c = pair_quotients(space, f, s);
  const std::size_t n = space.size();
  FunctionField g(std::vector<double>(n, 0.0));
  for (Index x = 0; x < n; ++x) {
    double m = 0.0;
    for (Index y = 0; y < n; ++y) m = std::max(m, c[x * n + y]);
    g[x] = 0.5 * m;
  }
  return g;
}

GradientCertificate minimal_gradient(const FiniteSpace& space,
                                     const ExponentField& p,
                                     const FunctionField& f, double s,
                                     double tol) {
  const auto c = pair_quotients(space, f, s);
  const std::size_t n = space.size();
  CoveringSystem system(std::vector<double>(n, 1.0));
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      if (c[x * n + y] > 0.0) {
        const Index pair[2] = {x, y};
        system.add_row(pair, 1.0, c[x * n + y]);
      }
    }
  }
  CoveringSolveOptions options;
  options.tol = tol;
  const CoveringSolution sol = minimize_norm_on_covering(
      space, p, system, canonical_gradient(space, f, s).values, options);
  GradientCertificate cert = is_gradient(space, f, FunctionField(sol.x), s);
  cert.norm = sol.norm;
  return cert;
}

double sobolev_norm(const FiniteSpace& space, const ExponentField& p,
                    const FunctionField& f, double s, double tol) {
  return vlp_norm(space, p, f, std::min(kDefaultNormTol, tol)) +
         minimal_gradient(space, p, f, s, tol).norm;
}

}  // namespace hajlasz

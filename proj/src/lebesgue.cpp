#include "hajlasz/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hajlasz {

FunctionField::FunctionField(std::vector<double> v) : values(std::move(v)) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("values[" + std::to_string(i) + "]: not finite");
    }
  }
}

bool FunctionField::is_zero() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return v == 0.0; });
}

FunctionField operator+(const FunctionField& a, const FunctionField& b) {
  FunctionField r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

FunctionField operator-(const FunctionField& a, const FunctionField& b) {
  FunctionField r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

FunctionField operator*(double c, const FunctionField& a) {
  FunctionField r(a);
  for (double& v : r.values) v *= c;
  return r;
}

void check_aligned(const FiniteSpace& space, const FunctionField& f,
                   const char* what) {
  if (f.size() != space.size()) {
    throw std::invalid_argument(std::string(what) +
                                ": dimension mismatch with space");
  }
}

namespace {

void check_aligned(const FiniteSpace& space, const ExponentField& p) {
  if (p.size() != space.size()) {
    throw std::invalid_argument("exponent: dimension mismatch with space");
  }
}

}  // namespace

double modular(const FiniteSpace& space, const ExponentField& p,
               const FunctionField& f, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("modular: lambda must be positive");
  double sum = 0.0;
  for (Index i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (a == 0.0) continue;
    sum += space.weight(i) * std::pow(a / lambda, p[i]);
  }
  return sum;
}

double vlp_norm(const FiniteSpace& space, const ExponentField& p,
                const FunctionField& f, double tol) {
  check_aligned(space, p);
  check_aligned(space, f, "function");
  if (!(tol > 0.0)) throw std::invalid_argument("tol: must be positive");
  double start = 0.0;
  for (double v : f.values) start = std::max(start, std::abs(v));
  if (start == 0.0) return 0.0;

  auto rho = [&](double lambda) { return modular(space, p, f, lambda); };
  double lo = start;
  double hi = start;
  while (rho(hi) > 1.0) hi *= 2.0;
  while (rho(lo) <= 1.0) lo *= 0.5;
  // invariant: rho(lo) > 1 >= rho(hi)
  while (hi - lo > tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (rho(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

NormPair check_power_identity(const FiniteSpace& space, const ExponentField& p,
                              const FunctionField& f, double s, double tol) {
  if (s * exponent_range(p).lower < 1.0) {
    throw std::invalid_argument("s: s * p^- must be at least 1");
  }
  FunctionField powered(f);
  for (double& v : powered.values) v = std::pow(std::abs(v), s);
  const double lhs = vlp_norm(space, p, powered, tol);
  const double rhs = std::pow(vlp_norm(space, p.scaled(s), f, tol), s);
  return {lhs, rhs};
}

NormPair check_embedding(const FiniteSpace& space, const ExponentField& p,
                         const ExponentField& q, const FunctionField& u,
                         double tol) {
  check_aligned(space, p);
  check_aligned(space, q);
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > q[i]) {
      throw std::invalid_argument("exponent[" + std::to_string(i) +
                                  "]: p <= q violated");
    }
  }
  return {vlp_norm(space, p, u, tol), vlp_norm(space, q, u, tol)};
}

}  // namespace hajlasz

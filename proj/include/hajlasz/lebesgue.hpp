#pragma once

#include <span>
#include <vector>

#include "hajlasz/exponent.hpp"
#include "hajlasz/space.hpp"

namespace hajlasz {

/// Real values on the points of a space: f, g, h, phi or psi.
struct FunctionField {
  std::vector<double> values;

  FunctionField() = default;
  explicit FunctionField(std::vector<double> v);
  FunctionField(std::initializer_list<double> v) : FunctionField(std::vector<double>(v)) {}

  std::size_t size() const { return values.size(); }
  double operator[](Index i) const { return values[i]; }
  double& operator[](Index i) { return values[i]; }
  bool is_zero() const;
};

FunctionField operator+(const FunctionField& a, const FunctionField& b);
FunctionField operator-(const FunctionField& a, const FunctionField& b);
FunctionField operator*(double c, const FunctionField& a);

/// sum_i mu_i (|f_i| / lambda)^{p_i}
double modular(const FiniteSpace& space, const ExponentField& p,
               const FunctionField& f, double lambda);

inline constexpr double kDefaultNormTol = 1e-10;

/// Luxemburg norm by bisection on the modular. The returned value is the
/// upper end of the final bracket, so modular(f, result) <= 1.
double vlp_norm(const FiniteSpace& space, const ExponentField& p,
                const FunctionField& f, double tol = kDefaultNormTol);

struct NormPair {
  double lhs;
  double rhs;
};

/// lhs = || |f|^s ||_{p}, rhs = ||f||_{s p}^s. Requires s p^- >= 1.
NormPair check_power_identity(const FiniteSpace& space, const ExponentField& p,
                              const FunctionField& f, double s,
                              double tol = kDefaultNormTol);

/// lhs = ||u||_{p}, rhs = ||u||_{q}. Requires p <= q pointwise.
NormPair check_embedding(const FiniteSpace& space, const ExponentField& p,
                         const ExponentField& q, const FunctionField& u,
                         double tol = kDefaultNormTol);

void check_aligned(const FiniteSpace& space, const FunctionField& f,
                   const char* what);

}  // namespace hajlasz

#pragma once

#include <optional>
#include <vector>

#include "hajlasz/space.hpp"

namespace hajlasz {

/// Per-point exponent p(x) in [1, inf) with a basepoint x0.
class ExponentField {
 public:
  ExponentField(std::vector<double> values, Index basepoint = 0);

  std::size_t size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  Index basepoint() const { return basepoint_; }

  /// The pointwise product c * p(x); c * p^- must stay >= 1.
  ExponentField scaled(double c) const;

 private:
  std::vector<double> values_;
  Index basepoint_;
};

struct ExponentRange {
  double lower;  // p^-
  double upper;  // p^+
};

ExponentRange exponent_range(const ExponentField& p);

struct LogHolderConstants {
  double c_log;
  double c_inf;
  double p_inf;
};

/// Measured log-Hoelder constants. p_inf defaults to p(x0).
LogHolderConstants log_holder_estimate(const FiniteSpace& space,
                                       const ExponentField& p,
                                       std::optional<double> p_inf = {});

/// The p_inf in [p^-, p^+] minimizing the measured C_inf.
double optimal_p_inf(const FiniteSpace& space, const ExponentField& p);

}  // namespace hajlasz

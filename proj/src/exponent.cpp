#include "hajlasz/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hajlasz {

ExponentField::ExponentField(std::vector<double> values, Index basepoint)
    : values_(std::move(values)), basepoint_(basepoint) {
  if (values_.empty()) throw std::invalid_argument("values: empty exponent");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 1.0) {
      throw std::invalid_argument("values[" + std::to_string(i) +
                                  "]: exponent must be finite and >= 1");
    }
  }
  if (basepoint_ >= values_.size()) {
    throw std::invalid_argument("basepoint: index out of range");
  }
}

ExponentField ExponentField::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return ExponentField(std::move(v), basepoint_);
}

ExponentRange exponent_range(const ExponentField& p) {
  auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  return {*lo, *hi};
}

namespace {

void check_aligned(const FiniteSpace& space, const ExponentField& p) {
  if (p.size() != space.size()) {
    throw std::invalid_argument("exponent: dimension mismatch with space");
  }
}

double c_inf_at(const FiniteSpace& space, const ExponentField& p, double p_inf) {
  double c = 0.0;
  for (Index x = 0; x < space.size(); ++x) {
    c = std::max(c, std::abs(p[x] - p_inf) *
                        std::log(std::numbers::e + space.dist(x, p.basepoint())));
  }
  return c;
}

}  // namespace

LogHolderConstants log_holder_estimate(const FiniteSpace& space,
                                       const ExponentField& p,
                                       std::optional<double> p_inf) {
  check_aligned(space, p);
  const double pinf = p_inf.value_or(p[p.basepoint()]);
  double c_log = 0.0;
  for (Index x = 0; x < space.size(); ++x) {
    for (Index y = x + 1; y < space.size(); ++y) {
      c_log = std::max(c_log, std::abs(p[x] - p[y]) *
                                  std::log(std::numbers::e + 1.0 / space.dist(x, y)));
    }
  }
  return {c_log, c_inf_at(space, p, pinf), pinf};
}

double optimal_p_inf(const FiniteSpace& space, const ExponentField& p) {
  check_aligned(space, p);
  // C_inf(t) is convex and piecewise linear in t; the minimizer balances the
  // largest weighted overshoot against the largest weighted undershoot.
  auto [lo, hi] = exponent_range(p);
  auto above = [&](double t) {
    double m = 0.0;
    for (Index x = 0; x < space.size(); ++x) {
      m = std::max(m, (p[x] - t) *
                          std::log(std::numbers::e + space.dist(x, p.basepoint())));
    }
    return m;
  };
  auto below = [&](double t) {
    double m = 0.0;
    for (Index x = 0; x < space.size(); ++x) {
      m = std::max(m, (t - p[x]) *
                          std::log(std::numbers::e + space.dist(x, p.basepoint())));
    }
    return m;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (above(mid) > below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hajlasz

#include "hajlasz/covering_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hajlasz/lebesgue.hpp"

namespace hajlasz {

CoveringSystem::CoveringSystem(std::vector<double> base) : base_(std::move(base)) {}

void CoveringSystem::add_row(std::span<const Index> members, double scale,
                             double rhs) {
  if (members.empty() || !(scale > 0.0) || !(rhs > 0.0)) {
    throw std::invalid_argument("covering row needs members, scale > 0, rhs > 0");
  }
  rows_.push_back({pool_.size(), members.size(), scale, rhs});
  for (Index i : members) pool_.push_back(static_cast<std::uint32_t>(i));
}

double CoveringSystem::lhs(std::size_t k, std::span<const double> x) const {
  double sum = 0.0;
  for (std::uint32_t i : members(k)) sum += base_[i] * x[i];
  return rows_[k].scale * sum;
}

double CoveringSystem::min_slack(std::span<const double> x) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rows(); ++k) m = std::min(m, lhs(k, x) - rhs(k));
  return m;
}

double CoveringSystem::min_relative_slack(std::span<const double> x) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rows(); ++k) {
    m = std::min(m, (lhs(k, x) - rhs(k)) / rhs(k));
  }
  return m;
}

namespace {

// Dual coordinate ascent for
//   min sum_i w_i (x_i / lambda)^{p_i}   s.t.  x >= 0,  a_k . x >= b_k.
// With multipliers eta >= 0 and z = A^T eta the primal minimizer is
//   x_i(z_i) = lambda (kappa_i z_i)^{e_i},  kappa_i = lambda / (w_i p_i),
//   e_i = 1 / (p_i - 1).
class DualAscent {
 public:
  DualAscent(const FiniteSpace& space, const ExponentField& p,
             const CoveringSystem& system, double min_exponent)
      : space_(space),
        system_(system),
        exponent_(space.size()),
        power_(space.size()),
        kappa_(space.size()),
        z_(space.size(), 0.0),
        x_(space.size(), 0.0),
        eta_(system.rows(), 0.0) {
    for (Index i = 0; i < space.size(); ++i) {
      exponent_[i] = std::max(p[i], min_exponent);
      power_[i] = 1.0 / (exponent_[i] - 1.0);
    }
    double bmax = 0.0;
    for (std::size_t k = 0; k < system.rows(); ++k) bmax = std::max(bmax, system.rhs(k));
    rhs_floor_ = 1e-3 * bmax;
  }

  void set_level(double lambda) {
    lambda_ = lambda;
    for (Index i = 0; i < space_.size(); ++i) {
      kappa_[i] = lambda / (space_.weight(i) * exponent_[i]);
      x_[i] = primal(i, z_[i]);
    }
  }

  // One cyclic pass; returns the largest relative KKT residual seen before
  // each row's update.
  double sweep() {
    double worst = 0.0;
    for (std::size_t k = 0; k < system_.rows(); ++k) worst = std::max(worst, update(k));
    return worst;
  }

  const std::vector<double>& x() const { return x_; }

 private:
  double primal(Index i, double z) const {
    if (z <= 0.0) return 0.0;
    const double t = kappa_[i] * z;
    return lambda_ * (power_[i] == 1.0 ? t : std::pow(t, power_[i]));
  }

  // z_i needed for a single term a_i x_i to reach b
  double z_needed(Index i, double a, double b) const {
    const double ratio = b / (a * lambda_);
    const double t = power_[i] == 1.0 ? ratio : std::pow(ratio, exponent_[i] - 1.0);
    return t / kappa_[i];
  }

  double row_value(std::size_t k, double delta, double* slope) const {
    const double scale = system_.scale(k);
    double sum = 0.0;
    double d = 0.0;
    for (std::uint32_t i : system_.members(k)) {
      const double a = scale * system_.base(i);
      const double z = z_[i] + delta * a;
      const double xi = primal(i, z);
      sum += a * xi;
      if (slope != nullptr && z > 0.0) d += a * a * power_[i] * xi / z;
    }
    if (slope != nullptr) *slope = d;
    return sum;
  }

  double update(std::size_t k) {
    const double b = system_.rhs(k);
    const double scale = system_.scale(k);
    double current = 0.0;
    for (std::uint32_t i : system_.members(k)) current += system_.base(i) * x_[i];
    current *= scale;
    const double eta = eta_[k];
    if (eta == 0.0 && current >= b) return 0.0;
    const double residual = std::abs(b - current) / std::max(b, rhs_floor_);

    double delta;
    if (current < b) {
      double hi = std::numeric_limits<double>::infinity();
      for (std::uint32_t i : system_.members(k)) {
        const double a = scale * system_.base(i);
        hi = std::min(hi, (z_needed(i, a, b) - z_[i]) / a);
      }
      delta = solve(k, b, 0.0, std::max(hi, 0.0));
    } else if (row_value(k, -eta, nullptr) >= b) {
      delta = -eta;
    } else {
      delta = solve(k, b, -eta, 0.0);
    }

    eta_[k] = std::max(0.0, eta + delta);
    for (std::uint32_t i : system_.members(k)) {
      z_[i] = std::max(0.0, z_[i] + delta * scale * system_.base(i));
      x_[i] = primal(i, z_[i]);
    }
    return residual;
  }

  // Root of row_value(k, .) = b on [lo, hi]; the row value is increasing.
  double solve(std::size_t k, double b, double lo, double hi) const {
    double delta = hi;
    double slope = 0.0;
    for (int it = 0; it < 200; ++it) {
      const double g = row_value(k, delta, &slope) - b;
      if (std::abs(g) <= 1e-15 * b) return delta;
      if (g > 0.0) {
        hi = delta;
      } else {
        lo = delta;
      }
      if (hi - lo <= 1e-16 * std::max(std::abs(lo), std::abs(hi))) return hi;
      double next = slope > 0.0 ? delta - g / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      delta = next;
    }
    return hi;
  }

  const FiniteSpace& space_;
  const CoveringSystem& system_;
  std::vector<double> exponent_;
  std::vector<double> power_;
  std::vector<double> kappa_;
  std::vector<double> z_;
  std::vector<double> x_;
  std::vector<double> eta_;
  double lambda_ = 1.0;
  double rhs_floor_ = 0.0;
};

// Uniform shift onto the polyhedron: row k gains shift * (sum of its
// coefficients), so the largest deficit-per-coefficient ratio suffices.
std::vector<double> make_feasible(const CoveringSystem& system, std::vector<double> x) {
  for (double& v : x) v = std::max(v, 0.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    double need = 0.0;
    for (std::size_t k = 0; k < system.rows(); ++k) {
      const double deficit = system.rhs(k) - system.lhs(k, x);
      if (deficit <= 0.0) continue;
      double total = 0.0;
      for (std::uint32_t i : system.members(k)) total += system.base(i);
      need = std::max(need, deficit / (system.scale(k) * total));
    }
    if (need == 0.0) return x;
    const double shift = need * (1.0 + 1e-12) + std::numeric_limits<double>::min();
    for (double& v : x) v += shift;
  }
  return x;
}

}  // namespace

CoveringSolution minimize_norm_on_covering(const FiniteSpace& space,
                                           const ExponentField& p,
                                           const CoveringSystem& system,
                                           std::vector<double> start,
                                           const CoveringSolveOptions& options) {
  if (system.dimension() != space.size() || start.size() != space.size() ||
      p.size() != space.size()) {
    throw std::invalid_argument("covering solver: dimension mismatch");
  }
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol: must be positive");
  if (system.min_relative_slack(start) < -1e-9) {
    throw std::invalid_argument("covering solver: start point is infeasible");
  }
  const double norm_tol = std::min(1e-10, 1e-3 * options.tol);
  const double inner_tol = std::min(1e-8, 1e-2 * options.tol);

  CoveringSolution best;
  best.x = make_feasible(system, std::move(start));
  best.norm = vlp_norm(space, p, FunctionField(best.x), norm_tol);
  if (system.rows() == 0) {
    best.x.assign(space.size(), 0.0);
    best.norm = 0.0;
    return best;
  }
  if (best.norm == 0.0) return best;

  DualAscent ascent(space, p, system, options.min_exponent);
  double level = best.norm;
  for (std::size_t l = 0; l < options.max_levels; ++l) {
    ascent.set_level(level);
    std::size_t sweeps = 0;
    double residual = std::numeric_limits<double>::infinity();
    while (residual > inner_tol && sweeps < options.max_sweeps) {
      residual = ascent.sweep();
      ++sweeps;
    }
    best.sweeps += sweeps;
    best.levels = l + 1;

    std::vector<double> candidate = make_feasible(system, ascent.x());
    const double norm = vlp_norm(space, p, FunctionField(candidate), norm_tol);
    if (norm < best.norm) {
      best.x = std::move(candidate);
      best.norm = norm;
    }
    if (residual > inner_tol) {
      throw SolverError("covering solver: no convergence after " +
                            std::to_string(sweeps) + " sweeps",
                        best);
    }
    // fixed point of the level map
    if (norm >= level * (1.0 - 0.1 * options.tol)) return best;
    level = norm;
  }
  throw SolverError("covering solver: level iteration did not settle after " +
                        std::to_string(options.max_levels) + " levels",
                    best);
}

}  // namespace hajlasz

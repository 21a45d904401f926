#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hajlasz/exponent.hpp"
#include "hajlasz/space.hpp"

namespace hajlasz {

/// Covering constraints  sum_{i in row} scale * base[i] * x_i >= rhs  with
/// positive coefficients and right-hand sides. Both the Hajlasz pair
/// constraints (base = 1) and the Poincare ball constraints (base = mu) have
/// this shape.
class CoveringSystem {
 public:
  explicit CoveringSystem(std::vector<double> base);

  void add_row(std::span<const Index> members, double scale, double rhs);

  std::size_t rows() const { return rows_.size(); }
  std::size_t dimension() const { return base_.size(); }
  std::span<const std::uint32_t> members(std::size_t k) const {
    return {pool_.data() + rows_[k].offset, rows_[k].length};
  }
  double coefficient(std::size_t k, Index i) const {
    return rows_[k].scale * base_[i];
  }
  double scale(std::size_t k) const { return rows_[k].scale; }
  double rhs(std::size_t k) const { return rows_[k].rhs; }
  double base(Index i) const { return base_[i]; }

  double lhs(std::size_t k, std::span<const double> x) const;
  /// min over rows of (lhs - rhs); +inf when there are no rows.
  double min_slack(std::span<const double> x) const;
  /// min over rows of (lhs - rhs) / rhs.
  double min_relative_slack(std::span<const double> x) const;

 private:
  struct Row {
    std::size_t offset;
    std::size_t length;
    double scale;
    double rhs;
  };
  std::vector<double> base_;
  std::vector<std::uint32_t> pool_;
  std::vector<Row> rows_;
};

struct CoveringSolveOptions {
  double tol = 1e-6;               // relative accuracy on the norm value
  std::size_t max_sweeps = 200000; // dual sweeps per level
  std::size_t max_levels = 200;
  double min_exponent = 1.05;      // floor applied inside the subproblem only
};

struct CoveringSolution {
  std::vector<double> x;  // always feasible, x >= 0
  double norm = 0.0;      // Luxemburg norm of x
  std::size_t levels = 0;
  std::size_t sweeps = 0;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, CoveringSolution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const CoveringSolution& best() const { return best_; }

 private:
  CoveringSolution best_;
};

/// Minimizes ||x||_{p(.)} over { x >= 0 } intersected with the covering rows.
///
/// Level iteration: at level lambda the modular sum mu_i (x_i/lambda)^{p_i} is
/// minimized over the polyhedron by dual coordinate ascent (one exact 1-D
/// dual maximization per row, cyclic sweeps), the iterate is shifted onto the
/// polyhedron, and the next level is its norm. Levels decrease monotonically
/// to the optimal norm. `start` must be feasible and seeds the first level.
CoveringSolution minimize_norm_on_covering(const FiniteSpace& space,
                                           const ExponentField& p,
                                           const CoveringSystem& system,
                                           std::vector<double> start,
                                           const CoveringSolveOptions& options);

}  // namespace hajlasz

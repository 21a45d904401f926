#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hajlasz {

using Index = std::size_t;

/// A finite quasi-metric measure space (X, rho, mu).
///
/// Distances are stored as a dense symmetric matrix. On construction every
/// center gets its points sorted by distance (ties broken by index), so a
/// closed ball is always a prefix of `order(center)`. The distinct distances
/// from a center are its candidate radii; `shell_end(c, k)` is the length of
/// the prefix forming the closed ball of radius `radii(c)[k]`.
class FiniteSpace {
 public:
  /// `dist` is row-major n*n. Throws std::invalid_argument when the matrix is
  /// not a valid quasi-metric or a weight is not positive.
  FiniteSpace(std::vector<double> dist, std::vector<double> weight,
              std::vector<std::string> labels = {});

  /// rho(x, y) = |x - y|_2^beta.
  static FiniteSpace from_coords(std::vector<std::vector<double>> coords,
                                 double beta, std::vector<double> weight,
                                 std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  double dist(Index i, Index j) const { return dist_[i * n_ + j]; }
  std::span<const double> dist_row(Index i) const {
    return {dist_.data() + i * n_, n_};
  }
  double weight(Index i) const { return weight_[i]; }
  std::span<const double> weights() const { return weight_; }
  double total_measure() const { return total_measure_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool has_coords() const { return !coords_.empty(); }
  const std::vector<std::vector<double>>& coords() const { return coords_; }
  double snowflake_beta() const { return beta_; }

  std::span<const Index> order(Index center) const {
    return {order_.data() + center * n_, n_};
  }
  std::span<const double> radii(Index center) const {
    return {radii_.data() + radius_offset_[center],
            radius_offset_[center + 1] - radius_offset_[center]};
  }
  std::span<const Index> shell_ends(Index center) const {
    return {shell_end_.data() + radius_offset_[center],
            radius_offset_[center + 1] - radius_offset_[center]};
  }

  /// Prefix of order(center) within the closed ball of radius r.
  std::size_t closed_ball_size(Index center, double r) const;

  /// A copy with every distance rounded to `digits` decimals.
  FiniteSpace quantized(int digits) const;
  /// A copy with every distance multiplied by `factor` > 0.
  FiniteSpace dilated(double factor) const;

 private:
  void validate() const;
  void index_balls();

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<double> weight_;
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> coords_;
  double beta_ = 1.0;
  double total_measure_ = 0.0;

  std::vector<Index> order_;
  std::vector<double> radii_;
  std::vector<Index> shell_end_;
  std::vector<std::size_t> radius_offset_;
};

struct Ball {
  Index center = 0;
  double radius = 0.0;
  std::vector<Index> members;
  double measure = 0.0;
};

/// One closed ball per distinct distance from `center`, radius ascending.
std::vector<Ball> enumerate_balls(const FiniteSpace& space, Index center);

/// Smallest A >= 1 with rho(x,y) <= A (rho(x,z) + rho(z,y)) on all triples.
double estimate_quasi_constant(const FiniteSpace& space);

/// Largest mu(B(x, alpha r)) / mu(B(x, r)) over centers and positive
/// candidate radii. Closed balls throughout.
double estimate_doubling(const FiniteSpace& space, double alpha);

double diameter(const FiniteSpace& space);

}  // namespace hajlasz

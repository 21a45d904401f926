#include "hajlasz/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hajlasz {

FiniteSpace::FiniteSpace(std::vector<double> dist, std::vector<double> weight,
                         std::vector<std::string> labels)
    : n_(weight.size()),
      dist_(std::move(dist)),
      weight_(std::move(weight)),
      labels_(std::move(labels)) {
  if (n_ == 0) throw std::invalid_argument("measure: space has no points");
  if (dist_.size() != n_ * n_) {
    throw std::invalid_argument("metric: dimension mismatch (matrix is not " +
                                std::to_string(n_) + "x" + std::to_string(n_) +
                                ")");
  }
  if (labels_.empty()) {
    labels_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != n_) {
    throw std::invalid_argument("points: dimension mismatch (" +
                                std::to_string(labels_.size()) +
                                " labels for " + std::to_string(n_) +
                                " weights)");
  }
  validate();
  total_measure_ = std::accumulate(weight_.begin(), weight_.end(), 0.0);
  index_balls();
}

FiniteSpace FiniteSpace::from_coords(std::vector<std::vector<double>> coords,
                                     double beta, std::vector<double> weight,
                                     std::vector<std::string> labels) {
  const std::size_t n = coords.size();
  if (weight.size() != n) {
    throw std::invalid_argument("measure: dimension mismatch (" +
                                std::to_string(weight.size()) +
                                " weights for " + std::to_string(n) +
                                " points)");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("metric.snowflake_beta: must be positive");
  }
  const std::size_t dim = n == 0 ? 0 : coords[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i].size() != dim) {
      throw std::invalid_argument("metric.coords[" + std::to_string(i) +
                                  "]: dimension mismatch");
    }
  }
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = coords[i][k] - coords[j][k];
        sq += d * d;
      }
      const double r = std::pow(std::sqrt(sq), beta);
      dist[i * n + j] = r;
      dist[j * n + i] = r;
    }
  }
  FiniteSpace space(std::move(dist), std::move(weight), std::move(labels));
  space.coords_ = std::move(coords);
  space.beta_ = beta;
  return space;
}

void FiniteSpace::validate() const {
  for (std::size_t i = 0; i < n_; ++i) {
    const double w = weight_[i];
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw std::invalid_argument("measure[" + std::to_string(i) +
                                  "]: nonpositive weight");
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = dist_[i * n_ + j];
      const std::string where =
          "metric[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (!std::isfinite(d)) throw std::invalid_argument(where + ": not finite");
      if (i == j) {
        if (d != 0.0) throw std::invalid_argument(where + ": nonzero diagonal");
        continue;
      }
      if (!(d > 0.0)) {
        throw std::invalid_argument(where +
                                    ": distinct points at nonpositive distance");
      }
      if (d != dist_[j * n_ + i]) {
        throw std::invalid_argument(where + ": asymmetric metric");
      }
    }
  }
}

void FiniteSpace::index_balls() {
  order_.resize(n_ * n_);
  radius_offset_.assign(n_ + 1, 0);
  radii_.clear();
  shell_end_.clear();
  for (std::size_t c = 0; c < n_; ++c) {
    auto row = dist_row(c);
    Index* ord = order_.data() + c * n_;
    std::iota(ord, ord + n_, Index{0});
    std::stable_sort(ord, ord + n_,
                     [&](Index a, Index b) { return row[a] < row[b]; });
    for (std::size_t k = 0; k < n_; ++k) {
      const double r = row[ord[k]];
      if (k + 1 == n_ || row[ord[k + 1]] != r) {
        radii_.push_back(r);
        shell_end_.push_back(k + 1);
      }
    }
    radius_offset_[c + 1] = radii_.size();
  }
}

std::size_t FiniteSpace::closed_ball_size(Index center, double r) const {
  auto rs = radii(center);
  auto it = std::upper_bound(rs.begin(), rs.end(), r);
  if (it == rs.begin()) return 0;
  return shell_ends(center)[static_cast<std::size_t>(it - rs.begin()) - 1];
}

FiniteSpace FiniteSpace::quantized(int digits) const {
  const double scale = std::pow(10.0, digits);
  std::vector<double> d(dist_);
  for (double& v : d) v = std::round(v * scale) / scale;
  return FiniteSpace(std::move(d), weight_, labels_);
}

FiniteSpace FiniteSpace::dilated(double factor) const {
  std::vector<double> d(dist_);
  for (double& v : d) v *= factor;
  return FiniteSpace(std::move(d), weight_, labels_);
}

std::vector<Ball> enumerate_balls(const FiniteSpace& space, Index center) {
  if (center >= space.size()) {
    throw std::out_of_range("enumerate_balls: center out of range");
  }
  auto ord = space.order(center);
  auto rs = space.radii(center);
  auto ends = space.shell_ends(center);
  std::vector<Ball> balls;
  balls.reserve(rs.size());
  double measure = 0.0;
  std::size_t taken = 0;
  for (std::size_t k = 0; k < rs.size(); ++k) {
    for (; taken < ends[k]; ++taken) measure += space.weight(ord[taken]);
    Ball b;
    b.center = center;
    b.radius = rs[k];
    b.members.assign(ord.begin(), ord.begin() + static_cast<long>(ends[k]));
    b.measure = measure;
    balls.push_back(std::move(b));
  }
  return balls;
}

double estimate_quasi_constant(const FiniteSpace& space) {
  const std::size_t n = space.size();
  double a = 1.0;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      const double dxy = space.dist(x, y);
      for (Index z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        a = std::max(a, dxy / (space.dist(x, z) + space.dist(z, y)));
      }
    }
  }
  return a;
}

double estimate_doubling(const FiniteSpace& space, double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("estimate_doubling: alpha must exceed 1");
  }
  double c = 1.0;
  for (Index x = 0; x < space.size(); ++x) {
    auto ord = space.order(x);
    auto rs = space.radii(x);
    auto ends = space.shell_ends(x);
    // prefix measures along the sorted order
    std::vector<double> prefix(space.size() + 1, 0.0);
    for (std::size_t k = 0; k < ord.size(); ++k) {
      prefix[k + 1] = prefix[k] + space.weight(ord[k]);
    }
    for (std::size_t k = 0; k < rs.size(); ++k) {
      if (rs[k] <= 0.0) continue;
      const double inner = prefix[ends[k]];
      const double outer = prefix[space.closed_ball_size(x, alpha * rs[k])];
      c = std::max(c, outer / inner);
    }
  }
  return c;
}

double diameter(const FiniteSpace& space) {
  double d = 0.0;
  for (Index x = 0; x < space.size(); ++x) {
    auto row = space.dist_row(x);
    d = std::max(d, *std::max_element(row.begin(), row.end()));
  }
  return d;
}

}  // namespace hajlasz

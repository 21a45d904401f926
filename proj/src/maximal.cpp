#include "hajlasz/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hajlasz {

namespace {

void check_params(double u, double s) {
  if (!(u >= 1.0) || !std::isfinite(u)) {
    throw std::invalid_argument("u: must be finite and >= 1");
  }
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("s: must be positive");
  }
}

double power_deviation(const FiniteSpace& space, const FunctionField& f,
                       std::span<const Index> members, double measure,
                       double c, double u) {
  double sum = 0.0;
  if (u == 1.0) {
    for (Index y : members) sum += space.weight(y) * std::abs(f[y] - c);
    return sum / measure;
  }
  for (Index y : members) {
    const double d = std::abs(f[y] - c);
    if (d != 0.0) sum += space.weight(y) * std::pow(d, u);
  }
  return std::pow(sum / measure, 1.0 / u);
}

double weighted_median(const FiniteSpace& space, const FunctionField& f,
                       std::span<const Index> members, double measure) {
  std::vector<std::pair<double, double>> vw;
  vw.reserve(members.size());
  for (Index y : members) vw.emplace_back(f[y], space.weight(y));
  std::sort(vw.begin(), vw.end());
  double acc = 0.0;
  for (const auto& [v, w] : vw) {
    acc += w;
    if (acc >= 0.5 * measure) return v;
  }
  return vw.back().first;
}

// Scan of centered balls at positive radii. `deviation(x, members, measure,
// mean)` is the L^u oscillation of f on the ball.
template <class Deviation>
FunctionField centered_scan(const FiniteSpace& space, const FunctionField& f,
                            double s, Deviation deviation) {
  check_aligned(space, f, "function");
  FunctionField out(std::vector<double>(space.size(), 0.0));
  for (Index x = 0; x < space.size(); ++x) {
    auto ord = space.order(x);
    auto rs = space.radii(x);
    auto ends = space.shell_ends(x);
    double measure = 0.0;
    double mass = 0.0;
    std::size_t taken = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      for (; taken < ends[k]; ++taken) {
        measure += space.weight(ord[taken]);
        mass += space.weight(ord[taken]) * (f[ord[taken]] - f[x]);
      }
      if (rs[k] <= 0.0) continue;
      const auto members = ord.first(ends[k]);
      const double dev = deviation(x, members, measure, f[x] + mass / measure);
      if (dev > 0.0) best = std::max(best, dev / std::pow(rs[k], s));
    }
    out[x] = best;
  }
  return out;
}

}  // namespace

// Ball averages are accumulated as offsets from the center value, so a
// function that is constant on a ball has exactly that average there.

FunctionField hl_maximal(const FiniteSpace& space, const FunctionField& f) {
  check_aligned(space, f, "function");
  const std::size_t n = space.size();
  FunctionField out(std::vector<double>(n, 0.0));
  std::vector<double> avg;
  for (Index c = 0; c < n; ++c) {
    auto ord = space.order(c);
    auto ends = space.shell_ends(c);
    avg.assign(ends.size(), 0.0);
    double measure = 0.0;
    double mass = 0.0;
    std::size_t taken = 0;
    for (std::size_t k = 0; k < ends.size(); ++k) {
      for (; taken < ends[k]; ++taken) {
        measure += space.weight(ord[taken]);
        mass += space.weight(ord[taken]) * (std::abs(f[ord[taken]]) - std::abs(f[c]));
      }
      avg[k] = std::abs(f[c]) + mass / measure;
    }
    // A point in shell k lies in every ball k' >= k.
    for (std::size_t k = ends.size() - 1; k-- > 0;) {
      avg[k] = std::max(avg[k], avg[k + 1]);
    }
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
      while (ends[k] <= j) ++k;
      out[ord[j]] = std::max(out[ord[j]], avg[k]);
    }
  }
  return out;
}

FunctionField sharp_maximal(const FiniteSpace& space, const FunctionField& f,
                            double u, double s) {
  check_params(u, s);
  return centered_scan(space, f, s,
                       [&](Index, std::span<const Index> members, double measure,
                           double mean) {
                         return power_deviation(space, f, members, measure, mean, u);
                       });
}

double best_constant_deviation(const FiniteSpace& space, const FunctionField& f,
                               std::span<const Index> members, double measure,
                               double u) {
  const double ref = f[members[0]];
  double mass = 0.0;
  double lo = ref;
  double hi = ref;
  for (Index y : members) {
    mass += space.weight(y) * (f[y] - ref);
    lo = std::min(lo, f[y]);
    hi = std::max(hi, f[y]);
  }
  const double mean = ref + mass / measure;
  auto objective = [&](double c) {
    return power_deviation(space, f, members, measure, c, u);
  };
  double best = objective(mean);
  if (u == 2.0 || lo == hi) return best;
  if (u == 1.0) {
    return std::min(best, objective(weighted_median(space, f, members, measure)));
  }
  // golden-section search; the objective is convex in c
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c1 = b - invphi * (b - a);
  double c2 = a + invphi * (b - a);
  double v1 = objective(c1);
  double v2 = objective(c2);
  const double stop = 1e-12 * (hi - lo);
  while (b - a > stop) {
    if (v1 <= v2) {
      b = c2;
      c2 = c1;
      v2 = v1;
      c1 = b - invphi * (b - a);
      v1 = objective(c1);
    } else {
      a = c1;
      c1 = c2;
      v1 = v2;
      c2 = a + invphi * (b - a);
      v2 = objective(c2);
    }
  }
  return std::min({best, v1, v2});
}

FunctionField tilde_sharp(const FiniteSpace& space, const FunctionField& f,
                          double u, double s) {
  check_params(u, s);
  return centered_scan(space, f, s,
                       [&](Index, std::span<const Index> members, double measure,
                           double) {
                         return best_constant_deviation(space, f, members, measure, u);
                       });
}

FunctionField overline_sharp(const FiniteSpace& space, const FunctionField& f,
                             double u, double s) {
  check_params(u, s);
  return centered_scan(space, f, s,
                       [&](Index x, std::span<const Index> members, double measure,
                           double) {
                         return power_deviation(space, f, members, measure, f[x], u);
                       });
}

FunctionField minimal_h(const FiniteSpace& space, const FunctionField& f,
                        double s) {
  check_aligned(space, f, "function");
  if (!(s > 0.0)) throw std::invalid_argument("s: must be positive");
  const std::size_t n = space.size();
  FunctionField out(std::vector<double>(n, 0.0));
  std::vector<double> mean;
  std::vector<double> scale;
  for (Index c = 0; c < n; ++c) {
    auto ord = space.order(c);
    auto rs = space.radii(c);
    auto ends = space.shell_ends(c);
    mean.assign(rs.size(), 0.0);
    scale.assign(rs.size(), 0.0);
    double measure = 0.0;
    double mass = 0.0;
    std::size_t taken = 0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      for (; taken < ends[k]; ++taken) {
        measure += space.weight(ord[taken]);
        mass += space.weight(ord[taken]) * (f[ord[taken]] - f[c]);
      }
      mean[k] = f[c] + mass / measure;
      scale[k] = rs[k] > 0.0 ? std::pow(rs[k], -s) : 0.0;
    }
    std::size_t first = 0;
    for (std::size_t j = 0; j < n; ++j) {
      while (ends[first] <= j) ++first;
      const Index x = ord[j];
      double best = out[x];
      for (std::size_t k = first; k < rs.size(); ++k) {
        if (scale[k] == 0.0) continue;
        best = std::max(best, std::abs(f[x] - mean[k]) * scale[k]);
      }
      out[x] = best;
    }
  }
  return out;
}

}  // namespace hajlasz

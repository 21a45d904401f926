#include "hajlasz/characterizations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "hajlasz/maximal.hpp"
#include "hajlasz/parallel.hpp"
#include "hajlasz/random.hpp"

namespace hajlasz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExactRelTol = 1e-12;

// Calls fn(radius, members, measure, mean) for every ball of positive radius.
template <class Fn>
void for_each_ball(const FiniteSpace& space, const FunctionField& f, Fn&& fn) {
  for (Index c = 0; c < space.size(); ++c) {
    auto ord = space.order(c);
    auto rs = space.radii(c);
    auto ends = space.shell_ends(c);
    double measure = 0.0;
    double mass = 0.0;
    std::size_t taken = 0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      for (; taken < ends[k]; ++taken) {
        measure += space.weight(ord[taken]);
        mass += space.weight(ord[taken]) * (f[ord[taken]] - f[c]);
      }
      if (rs[k] <= 0.0) continue;
      fn(rs[k], ord.first(ends[k]), measure, f[c] + mass / measure);
    }
  }
}

FunctionField powered(const FunctionField& f, double q) {
  FunctionField out(f);
  for (double& v : out.values) v = q == 1.0 ? std::abs(v) : std::pow(std::abs(v), q);
  return out;
}

// (lhs - rhs) / max(|lhs|, |rhs|), 0 when both vanish
double relative_excess(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : (lhs - rhs) / scale;
}

void check_q(const ExponentField& p, double q) {
  const double lower = exponent_range(p).lower;
  if (!(q >= 1.0) || !(q < lower)) {
    throw std::invalid_argument("q: must satisfy 1 <= q < p^-");
  }
}

}  // namespace

CoveringSystem poincare_constraints(const FiniteSpace& space,
                                    const FunctionField& f, double s, double q) {
  check_aligned(space, f, "function");
  if (!(s > 0.0)) throw std::invalid_argument("s: must be positive");
  if (!(q >= 1.0)) throw std::invalid_argument("q: must be >= 1");

  struct Candidate {
    std::vector<Index> sorted;
    double measure;
    double rhs;
  };
  std::vector<Candidate> candidates;
  std::map<std::pair<std::size_t, std::uint64_t>, std::vector<std::size_t>> seen;
  auto key_of = [](Index i) {
    std::uint64_t z = static_cast<std::uint64_t>(i) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };

  for_each_ball(space, f, [&](double radius, std::span<const Index> members,
                              double measure, double mean) {
    double osc = 0.0;
    for (Index y : members) osc += space.weight(y) * std::abs(f[y] - mean);
    osc /= measure;
    if (osc == 0.0) return;
    const double rhs = std::pow(osc / std::pow(radius, s), q);
    std::uint64_t hash = 0;
    for (Index y : members) hash += key_of(y);
    std::vector<Index> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    auto& bucket = seen[{members.size(), hash}];
    for (std::size_t id : bucket) {
      if (candidates[id].sorted == sorted) {
        candidates[id].rhs = std::max(candidates[id].rhs, rhs);
        return;
      }
    }
    bucket.push_back(candidates.size());
    candidates.push_back({std::move(sorted), measure, rhs});
  });

  CoveringSystem system(std::vector<double>(space.weights().begin(), space.weights().end()));
  for (const auto& c : candidates) system.add_row(c.sorted, 1.0 / c.measure, c.rhs);
  return system;
}

double poincare_slack(const FiniteSpace& space, const FunctionField& f,
                      const FunctionField& phi, double q, double s) {
  check_aligned(space, phi, "phi");
  const CoveringSystem system = poincare_constraints(space, f, s, q);
  return system.min_relative_slack(powered(phi, q).values);
}

PoincareWitness minimal_poincare_phi(const FiniteSpace& space,
                                     const ExponentField& p,
                                     const FunctionField& f, double s, double q,
                                     double tol) {
  check_q(p, q);
  const CoveringSystem system = poincare_constraints(space, f, s, q);
  // h*^q is feasible: average |f(x) - f_B| <= r^s h*(x) over B, then Jensen.
  const FunctionField start = powered(minimal_h(space, f, s), q);
  CoveringSolveOptions options;
  options.tol = tol;
  const CoveringSolution sol =
      minimize_norm_on_covering(space, p.scaled(1.0 / q), system, start.values, options);

  PoincareWitness w;
  w.phi = FunctionField(sol.x);
  if (q != 1.0) {
    for (double& v : w.phi.values) v = std::pow(v, 1.0 / q);
  }
  w.norm = vlp_norm(space, p, w.phi, kDefaultNormTol);
  w.slack = system.rows() == 0 ? 0.0
                               : system.min_relative_slack(powered(w.phi, q).values);
  return w;
}

double check_lemma2(const FiniteSpace& space, const FunctionField& f,
                    const FunctionField& phi, double q, double s) {
  if (poincare_slack(space, f, phi, q, s) < -kPointwiseRelTol) {
    throw std::invalid_argument("phi: Poincare precondition violated");
  }
  FunctionField control = hl_maximal(space, powered(phi, q));
  if (q != 1.0) {
    for (double& v : control.values) v = std::pow(v, 1.0 / q);
  }
  double worst = 0.0;
  for_each_ball(space, f, [&](double radius, std::span<const Index> members,
                              double, double mean) {
    const double rs = std::pow(radius, s);
    for (Index x : members) {
      const double lhs = std::abs(f[x] - mean);
      if (lhs == 0.0) continue;
      const double rhs = rs * control[x];
      worst = rhs == 0.0 ? kInf : std::max(worst, lhs / rhs);
    }
  });
  return worst;
}

ChainReport check_remark3(const FiniteSpace& space, const FunctionField& f,
                            double u, double s) {
  const FunctionField sharp = sharp_maximal(space, f, u, s);
  const FunctionField tilde = tilde_sharp(space, f, u, s);
  const FunctionField over = overline_sharp(space, f, u, s);
  const FunctionField m = hl_maximal(space, f);
  ChainReport r;
  r.worst.fill(-kInf);
  for (Index x = 0; x < space.size(); ++x) {
    r.worst[0] = std::max(r.worst[0], relative_excess(tilde[x], sharp[x]));
    r.worst[1] = std::max(r.worst[1], relative_excess(sharp[x], 2.0 * tilde[x]));
    r.worst[2] = std::max(r.worst[2], relative_excess(tilde[x], over[x]));
    r.worst[3] = std::max(r.worst[3], relative_excess(over[x], sharp[x] + 2.0 * m[x]));
  }
  for (std::size_t i = 0; i < 4; ++i) r.holds[i] = r.worst[i] <= kPointwiseRelTol;
  return r;
}

bool check_thm1_forward(const FiniteSpace& space, const FunctionField& f,
                        const FunctionField& g, double s, double quasi_constant) {
  if (!is_gradient(space, f, g, s).valid) {
    throw std::invalid_argument("g: not a Hajlasz gradient of f");
  }
  const FunctionField mg = hl_maximal(space, g);
  const double factor = std::pow(2.0 * quasi_constant, s);
  bool ok = true;
  for_each_ball(space, f, [&](double radius, std::span<const Index> members,
                              double, double mean) {
    const double scale = factor * std::pow(radius, s);
    for (Index x : members) {
      const double lhs = std::abs(f[x] - mean);
      const double rhs = scale * (g[x] + mg[x]);
      if (lhs > rhs * (1.0 + kExactRelTol)) ok = false;
    }
  });
  return ok;
}

bool check_sharp_domination(const FiniteSpace& space, const FunctionField& f,
                            const FunctionField& h, double u, double s) {
  const FunctionField sharp = sharp_maximal(space, f, u, s);
  FunctionField bound = hl_maximal(space, powered(h, u));
  for (Index x = 0; x < space.size(); ++x) {
    const double b = u == 1.0 ? bound[x] : std::pow(bound[x], 1.0 / u);
    if (sharp[x] > b * (1.0 + kExactRelTol)) return false;
  }
  return true;
}

double hajlasz_bound_constant(const FiniteSpace& space, const FunctionField& f,
                              const FunctionField& sharp, double s) {
  double worst = 0.0;
  for (Index x = 0; x < space.size(); ++x) {
    for (Index y = x + 1; y < space.size(); ++y) {
      const double num = std::abs(f[x] - f[y]);
      if (num == 0.0) continue;
      const double den = std::pow(space.dist(x, y), s) * (sharp[x] + sharp[y]);
      if (den == 0.0) return kInf;
      worst = std::max(worst, num / den);
    }
  }
  return worst;
}

bool EquivalenceRow::asserted_ok() const {
  return error.empty() && h_is_gradient && psi_feasible && w_le_b && a_le_b &&
         sharp_dominated && thm1_forward && chain_a && chain_b_lower;
}

std::string ratio_name(std::size_t i, std::size_t j) {
  return std::string(kFunctionalNames[i]) + "/" + kFunctionalNames[j];
}

void validate_harness(const ExponentField& p, const HarnessOptions& options) {
  const double lower = exponent_range(p).lower;
  if (!(lower > 1.0)) throw std::invalid_argument("exponent: p^- must exceed 1");
  if (!(options.s > 0.0)) throw std::invalid_argument("s: must be positive");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol: must be positive");
  if (!(options.u >= 1.0 && options.u < lower)) {
    throw std::invalid_argument("u: must satisfy 1 <= u < p^-");
  }
  if (!(options.q >= 1.0 && options.q < lower)) {
    throw std::invalid_argument("q: must satisfy 1 <= q < p^-");
  }
}

EquivalenceRow equivalence_row(const FiniteSpace& space, const ExponentField& p,
                               const FunctionField& f, const HarnessOptions& options,
                               double quasi_constant) {
  const double s = options.s;
  const double u = options.u;
  const double q = options.q;
  EquivalenceRow row;
  auto norm = [&](const FunctionField& g) { return vlp_norm(space, p, g, kDefaultNormTol); };

  row.norm_f = norm(f);
  const FunctionField h = minimal_h(space, f, s);
  const FunctionField sharp = sharp_maximal(space, f, u, s);
  const FunctionField tilde = tilde_sharp(space, f, u, s);
  const FunctionField over = overline_sharp(space, f, u, s);

  double n_w = kInf;
  double n_a = kInf;
  try {
    n_w = row.norm_f + minimal_gradient(space, p, f, s, options.tol).norm;
  } catch (const SolverError& e) {
    n_w = row.norm_f + e.best().norm;
    row.error = std::string("gradient: ") + e.what();
  }
  try {
    n_a = row.norm_f + minimal_poincare_phi(space, p, f, s, q, options.tol).norm;
  } catch (const SolverError& e) {
    FunctionField phi(e.best().x);
    for (double& v : phi.values) v = std::pow(v, 1.0 / q);
    n_a = row.norm_f + norm(phi);
    if (!row.error.empty()) row.error += "; ";
    row.error += std::string("poincare: ") + e.what();
  }
  const double n_b = row.norm_f + norm(h);
  row.functionals = {n_w, n_b, n_a, row.norm_f + norm(sharp), row.norm_f + norm(tilde),
                     row.norm_f + norm(over)};

  row.h_is_gradient = is_gradient(space, f, h, s).valid;
  row.psi_feasible = poincare_slack(space, f, h, q, s) >= -kExactRelTol;
  row.w_le_b = n_w <= n_b * (1.0 + 3.0 * options.tol);
  row.a_le_b = n_a <= n_b * (1.0 + 3.0 * options.tol);

  FunctionField mh = hl_maximal(space, powered(h, u));
  if (u != 1.0) {
    for (double& v : mh.values) v = std::pow(v, 1.0 / u);
  }
  row.sharp_dominated = check_sharp_domination(space, f, h, u, s) &&
                        norm(sharp) <= norm(mh) * (1.0 + 4.0 * kDefaultNormTol);
  row.thm1_forward =
      check_thm1_forward(space, f, canonical_gradient(space, f, s), s, quasi_constant);

  const ChainReport r3 = check_remark3(space, f, u, s);
  row.chain_a = r3.holds[0] && r3.holds[1];
  row.chain_b_lower = r3.holds[2];
  row.chain_b_upper = r3.holds[3];
  row.hajlasz_bound = hajlasz_bound_constant(space, f, sharp, s);
  return row;
}

namespace {

RatioStats summarize(std::string name, const std::vector<double>& values) {
  RatioStats st;
  st.name = std::move(name);
  double sum = 0.0;
  st.min = kInf;
  st.max = -kInf;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    ++st.count;
    sum += v;
    st.min = std::min(st.min, v);
    st.max = std::max(st.max, v);
  }
  if (st.count == 0) {
    st.min = st.max = st.mean = st.spread = std::numeric_limits<double>::quiet_NaN();
    return st;
  }
  st.mean = sum / static_cast<double>(st.count);
  st.spread = st.min > 0.0 ? st.max / st.min : kInf;
  return st;
}

}  // namespace

EquivalenceReport equivalence_report(const FiniteSpace& space,
                                     const ExponentField& p,
                                     const std::vector<FunctionField>& corpus,
                                     const std::vector<std::string>& names,
                                     const HarnessOptions& options) {
  validate_harness(p, options);
  if (p.size() != space.size()) {
    throw std::invalid_argument("exponent: dimension mismatch with space");
  }
  for (const auto& f : corpus) check_aligned(space, f, "function");

  EquivalenceReport report;
  report.options = options;
  report.quasi_constant = estimate_quasi_constant(space);
  report.rows.resize(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    report.rows[i] = equivalence_row(space, p, corpus[i], options, report.quasi_constant);
    report.rows[i].name = i < names.size() ? names[i] : std::to_string(i);
  });

  const std::size_t m = kFunctionalNames.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<double> values;
      for (const auto& row : report.rows) {
        if (!row.error.empty()) continue;
        const double a = row.functionals[i];
        const double b = row.functionals[j];
        if (a > 0.0 && b > 0.0) values.push_back(a / b);
      }
      report.ratios.push_back(summarize(ratio_name(i, j), values));
    }
  }
  std::vector<double> bounds;
  for (const auto& row : report.rows) {
    if (row.hajlasz_bound > 0.0) bounds.push_back(row.hajlasz_bound);
  }
  report.hajlasz_bound = summarize("hajlasz_bound", bounds);
  for (const auto& row : report.rows) {
    if (!row.error.empty()) ++report.failed_rows;
    if (!row.asserted_ok()) report.asserted_ok = false;
  }
  return report;
}

AxiomsReport norm_axioms_check(const FiniteSpace& space, const ExponentField& p,
                               double s, std::size_t trials, std::uint64_t seed,
                               double tol) {
  if (!(exponent_range(p).lower > 1.0)) {
    throw std::invalid_argument("exponent: p^- must exceed 1");
  }
  Rng rng(seed);
  const std::size_t n = space.size();
  auto random_field = [&] {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return FunctionField(std::move(v));
  };
  auto sob = [&](const FunctionField& f) { return sobolev_norm(space, p, f, s, tol); };
  const double allowance = 3.0 * tol;

  AxiomsReport r;
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const FunctionField f = random_field();
    const FunctionField g = random_field();
    const double nf = sob(f);
    const double ng = sob(g);
    const double excess = (sob(f + g) - nf - ng) / (nf + ng);
    r.worst_triangle = std::max(r.worst_triangle, excess);
    if (excess > allowance) ++r.triangle_violations;

    const double c = t == 0 ? -2.0 : rng.uniform(-3.0, 3.0);
    if (c != 0.0) {
      const double err = std::abs(sob(c * f) - std::abs(c) * nf) / (std::abs(c) * nf);
      r.worst_homogeneity = std::max(r.worst_homogeneity, err);
      if (err > allowance) ++r.homogeneity_violations;
    }
  }

  const FunctionField zero(std::vector<double>(n, 0.0));
  const FunctionField f = random_field();
  const double nf = sob(f);
  r.definite = sob(zero) == 0.0 && (f.is_zero() || nf > 0.0);

  // f_n = (1 - 2^{-n}) f converges to f
  r.cauchy_ok = true;
  for (int k = 1; k <= 24; ++k) {
    const double factor = 1.0 - std::ldexp(1.0, -k);
    const double d = sob(factor * f - f);
    r.cauchy_tail.push_back(d);
    if (d > std::ldexp(1.0, -k) * nf * (1.0 + allowance)) r.cauchy_ok = false;
  }
  if (r.cauchy_tail.back() > 1e-6 * nf) r.cauchy_ok = false;
  return r;
}

}  // namespace hajlasz

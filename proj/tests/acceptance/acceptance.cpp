// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "hajlasz/characterizations.hpp"
#include "hajlasz/cli.hpp"
#include "hajlasz/exponent.hpp"
#include "hajlasz/generators.hpp"
#include "hajlasz/io.hpp"
#include "hajlasz/maximal.hpp"
#include "hajlasz/random.hpp"
#include "oracles.hpp"

using namespace hajlasz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects named checks; the first few failures are kept for the report line.
struct Checks {
  std::size_t total = 0;
  std::size_t failed = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (!ok) {
      ++failed;
      if (notes.size() < 4) notes.push_back(what);
    }
  }
  void near(double got, double want, double abs_tol, const std::string& what) {
    expect(std::abs(got - want) <= abs_tol, fmt::format("{}: got {:.12g}, want {:.12g}", what, got, want));
  }
};

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome finish(const Checks& c, double elapsed, double limit, std::string extra = {}) {
  std::string detail = fmt::format("{}/{} checks, {:.2f} s (limit {:.0f} s)",
                                   c.total - c.failed, c.total, elapsed, limit);
  if (!extra.empty()) detail += "; " + extra;
  for (const auto& n : c.notes) detail += "; " + n;
  return {c.failed == 0 && elapsed < limit, detail};
}

FunctionField uniform_function(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return FunctionField(v);
}

ExponentField affine_exponent(const FiniteSpace& X, double lo, double hi) {
  ExponentParams ap;
  ap.c0 = lo;
  ap.c1 = hi - lo;
  return gen_exponent(X, ExponentKind::kAffine, ap);
}

// ---------------------------------------------------------------------------

Outcome analytic_fixtures() {
  const auto t0 = Clock::now();
  Checks c;
  const FiniteSpace x2 = fixture::x2();
  const FiniteSpace l3 = fixture::l3();
  const FunctionField fs = fixture::f_star();
  const FunctionField fl = fixture::f_l3();
  const ExponentField p2 = fixture::constant_p(2, 2.0);
  const ExponentField p3 = fixture::constant_p(3, 2.0);

  c.near(modular(x2, p2, {3.0, 4.0}, 5.0), 1.0, 1e-15, "modular X2");
  c.near(modular(x2, ExponentField({1.0, 2.0}), {1.0, 1.0}, 1.0), 2.0, 1e-15, "modular p=(1,2)");
  c.near(vlp_norm(x2, p2, {3.0, 4.0}), 5.0, 5.0 * kDefaultNormTol, "norm (3,4)");
  c.near(vlp_norm(x2, ExponentField({1.0, 2.0}), {1.0, 1.0}), (1.0 + std::sqrt(5.0)) / 2.0, 1e-8,
         "Luxemburg root");
  const NormPair pi = check_power_identity(x2, p2, {1.0, 1.0}, 2.0);
  c.near(pi.lhs, std::sqrt(2.0), 1e-9, "power identity lhs");
  c.near(pi.rhs, std::sqrt(2.0), 1e-9, "power identity rhs");
  const auto lh = log_holder_estimate(x2, ExponentField({2.0, 2.5}), 2.0);
  c.near(lh.c_log, 0.5 * std::log(std::exp(1.0) + 2.0), 1e-15, "C_log");
  c.near(lh.c_inf, 0.5 * std::log(std::exp(1.0) + 0.5), 1e-15, "C_inf");

  c.near(estimate_quasi_constant(
             FiniteSpace::from_coords({{0.0}, {1.0}, {2.0}}, 2.0, {1.0, 1.0, 1.0})),
         2.0, 1e-15, "A squared line");
  c.near(estimate_quasi_constant(l3), 1.0, 1e-15, "A line");
  c.near(diameter(x2), 0.5, 0.0, "diam X2");
  c.near(diameter(l3), 2.0, 0.0, "diam L3");

  const FunctionField m = hl_maximal(x2, fs);
  c.near(m[0], 0.5, 1e-15, "Mf(a)");
  c.near(m[1], 1.0, 1e-15, "Mf(b)");
  const FunctionField m3 = hl_maximal(l3, {0.0, 0.0, 3.0});
  c.near(m3[0], 1.0, 1e-15, "Mf(0) on L3");
  c.near(m3[2], 3.0, 1e-15, "Mf(2) on L3");

  for (double u : {1.0, 2.0}) {
    const FunctionField sh = sharp_maximal(x2, fs, u, 1.0);
    c.near(sh[0], 1.0, 1e-15, "sharp(a)");
    c.near(sh[1], 1.0, 1e-15, "sharp(b)");
  }
  const FunctionField ti = tilde_sharp(x2, fs, 1.0, 1.0);
  const FunctionField ov = overline_sharp(x2, fs, 1.0, 1.0);
  for (Index i = 0; i < 2; ++i) {
    c.near(ti[i], 1.0, 1e-15, "tilde X2");
    c.near(ov[i], 1.0, 1e-15, "overline X2");
  }
  c.near(overline_sharp(l3, fl, 1.0, 1.0)[0], 0.5, 1e-15, "overline(0) on L3");

  const FunctionField h = minimal_h(x2, fs, 1.0);
  c.near(h[0], 1.0, 1e-15, "h*(a)");
  c.near(h[1], 1.0, 1e-15, "h*(b)");
  // the ball B(1, 1) contains all of L3 and gives |0 - 1| / 1
  const FunctionField hl = minimal_h(l3, fl, 1.0);
  c.near(hl[0], oracle::minimal_h(l3, fl.values, 1.0)[0], 1e-15, "h*(0) on L3");
  c.near(hl[0], 1.0, 1e-15, "h*(0) on L3 value");

  const auto cert = is_gradient(x2, fs, {1.0, 1.0}, 1.0);
  c.expect(cert.valid && cert.slack == 0.0, "is_gradient X2 slack 0");
  const FunctionField g0 = canonical_gradient(l3, fl, 1.0);
  for (double v : g0.values) c.near(v, 0.5, 1e-15, "canonical gradient L3");

  const auto gx = minimal_gradient(x2, p2, fs, 1.0);
  c.near(gx.g[0], 1.0, 1e-9, "g*(a)");
  c.near(gx.g[1], 1.0, 1e-9, "g*(b)");
  c.near(gx.norm, std::sqrt(2.0), 1e-9, "||g*|| X2");
  const auto gl = minimal_gradient(l3, p3, fl, 1.0);
  for (double v : gl.g.values) c.near(v, 0.5, 1e-4, "g* on L3");
  c.near(gl.norm, std::sqrt(0.75), 1e-4, "||g*|| L3");
  c.near(sobolev_norm(x2, p2, fs, 1.0), 1.0 + std::sqrt(2.0), 1e-6, "Sobolev norm X2");

  const auto phi = minimal_poincare_phi(x2, p2, fs, 1.0, 1.0);
  c.near(phi.phi[0], 1.0, 1e-9, "phi(a)");
  c.near(phi.phi[1], 1.0, 1e-9, "phi(b)");
  c.near(phi.norm, std::sqrt(2.0), 1e-9, "||phi||");
  c.near(check_lemma2(x2, fs, phi.phi, 1.0, 1.0), 1.0, 1e-9, "oscillation constant X2");
  c.expect(check_thm1_forward(x2, fs, {1.0, 1.0}, 1.0, 1.0), "forward bound X2");
  c.expect(check_remark3(x2, fs, 1.0, 1.0).all(), "pointwise chains X2");

  const auto rep = equivalence_report(x2, p2, {fs}, {"f_star"}, HarnessOptions{});
  const double want = 1.0 + std::sqrt(2.0);
  c.near(rep.rows[0].functionals[0], want, 1e-6, "N_W");
  // both terms are Luxemburg norms bisected to the default relative tolerance
  c.near(rep.rows[0].functionals[1], want, 2.0 * kDefaultNormTol * want, "N_B");
  c.near(rep.rows[0].functionals[3], want, 2.0 * kDefaultNormTol * want, "N_sharp");
  for (const auto& st : rep.ratios) c.near(st.max, 1.0, 1e-6, "ratio " + st.name);

  return finish(c, seconds_since(t0), 1.0);
}

Outcome pointwise_chains() {
  const auto t0 = Clock::now();
  Checks c;
  Rng rng(2023);
  std::array<std::size_t, 4> violations{};
  std::array<double, 4> worst{-1.0, -1.0, -1.0, -1.0};
  std::size_t evaluations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 49.0);
    const FiniteSpace X = gen_random_cloud(n, 2, 5000 + trial);
    const FunctionField f = uniform_function(rng, n, 0.0, 1.0);
    for (double u : {1.0, 2.0}) {
      const ChainReport r = check_remark3(X, f, u, 1.0);
      ++evaluations;
      for (std::size_t k = 0; k < 4; ++k) {
        worst[k] = std::max(worst[k], r.worst[k]);
        if (!r.holds[k]) ++violations[k];
      }
    }
  }
  static const char* names[4] = {"tilde<=sharp", "sharp<=2tilde", "tilde<=overline",
                                 "overline<=sharp+2Mf"};
  std::string extra;
  for (std::size_t k = 0; k < 4; ++k) {
    c.expect(violations[k] == 0, fmt::format("{} violated on {}/{} cases", names[k],
                                             violations[k], evaluations));
    extra += fmt::format("{}{} worst rel {:.3g}", k ? ", " : "", names[k], worst[k]);
  }
  return finish(c, seconds_since(t0), 30.0, extra);
}

struct GridCorpus {
  FiniteSpace space = gen_grid(2, 5, 1.0);
  ExponentField p = affine_exponent(space, 1.5, 2.0);
  std::vector<FunctionField> corpus;
  std::vector<std::string> names;
  GridCorpus() {
    Rng rng(17);
    for (int k = 0; k < 30; ++k) {
      corpus.push_back(uniform_function(rng, space.size(), -1.0, 1.0));
      names.push_back("f" + std::to_string(k));
    }
  }
};

const GridCorpus& grid_corpus() {
  static const GridCorpus g;
  return g;
}

Outcome feasibility_transfers() {
  const auto t0 = Clock::now();
  Checks c;
  const GridCorpus& g = grid_corpus();
  HarnessOptions opts;
  const auto rep = equivalence_report(g.space, g.p, g.corpus, g.names, opts);
  auto ratio = [&](const std::string& name) {
    for (const auto& st : rep.ratios)
      if (st.name == name) return st;
    return RatioStats{};
  };
  for (std::size_t i = 0; i < g.corpus.size(); ++i) {
    const FunctionField h = minimal_h(g.space, g.corpus[i], opts.s);
    const auto cert = is_gradient(g.space, g.corpus[i], h, opts.s);
    c.expect(cert.valid, g.names[i] + ": minimal h is not a gradient");
    c.expect(poincare_slack(g.space, g.corpus[i], h, opts.q, opts.s) >= -1e-12,
             g.names[i] + ": h^q misses a Poincare half-space");
    const auto& row = rep.rows[i];
    c.expect(row.error.empty(), g.names[i] + ": " + row.error);
    const double nb = row.functionals[1];
    c.expect(row.functionals[0] <= nb + 3.0 * opts.tol * nb, g.names[i] + ": N_W > N_B");
    c.expect(row.functionals[2] <= nb + 3.0 * opts.tol * nb, g.names[i] + ": N_A > N_B");
  }
  return finish(c, seconds_since(t0), 120.0,
                fmt::format("max W/B {:.6f}, min B/A {:.6f}", ratio("W/B").max, ratio("B/A").min));
}

Outcome proof_step_bounds() {
  const auto t0 = Clock::now();
  Checks c;
  const GridCorpus& g = grid_corpus();
  const double a = estimate_quasi_constant(g.space);
  for (std::size_t i = 0; i < g.corpus.size(); ++i) {
    const FunctionField& f = g.corpus[i];
    const FunctionField h = minimal_h(g.space, f, 1.0);
    c.expect(check_sharp_domination(g.space, f, h, 1.0, 1.0),
             g.names[i] + ": sharp exceeds M(h*)");
    c.expect(check_thm1_forward(g.space, f, canonical_gradient(g.space, f, 1.0), 1.0, a),
             g.names[i] + ": forward bound fails");
  }
  return finish(c, seconds_since(t0), 120.0, fmt::format("A = {:.17g}", a));
}

Outcome norm_axioms() {
  const auto t0 = Clock::now();
  Checks c;
  const double tol = kDefaultNormTol;
  Rng rng(555);
  double worst_identity = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const FiniteSpace X = gen_random_cloud(5 + trial % 20, 2, 900 + trial);
    std::vector<double> pv(X.size());
    for (double& v : pv) v = rng.uniform(1.1, 3.0);
    const ExponentField p(pv);
    const double s = rng.uniform(1.0 / exponent_range(p).lower, 3.0);
    const NormPair r = check_power_identity(X, p, uniform_function(rng, X.size(), -2.0, 2.0), s);
    worst_identity = std::max(worst_identity, std::abs(r.lhs - r.rhs) / r.rhs);
    c.expect(std::abs(r.lhs - r.rhs) <= 1e-6 * r.rhs, fmt::format("power identity trial {}", trial));
  }
  std::size_t triangle = 0;
  double worst_modular = 0.0;
  const FiniteSpace X = gen_random_cloud(30, 2, 31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pv(X.size());
    for (double& v : pv) v = rng.uniform(1.0, 4.0);
    const ExponentField p(pv);
    const FunctionField f = uniform_function(rng, X.size(), -2.0, 2.0);
    const FunctionField g = uniform_function(rng, X.size(), -2.0, 2.0);
    const double nf = vlp_norm(X, p, f, tol);
    const double ng = vlp_norm(X, p, g, tol);
    if (vlp_norm(X, p, f + g, tol) > (nf + ng) * (1.0 + 2.0 * tol)) ++triangle;
    const double mf = modular(X, p, f, nf);
    const double mg = modular(X, p, g, ng);
    worst_modular = std::max({worst_modular, std::abs(mf - 1.0), std::abs(mg - 1.0)});
    c.expect(mf >= 1.0 - 5.0 * tol && mf <= 1.0 + 5.0 * tol, "modular at norm");
    c.expect(mg >= 1.0 - 5.0 * tol && mg <= 1.0 + 5.0 * tol, "modular at norm");
  }
  c.expect(triangle == 0, fmt::format("{} triangle violations", triangle));
  return finish(c, seconds_since(t0), 60.0,
                fmt::format("worst identity rel {:.3g}, worst |modular-1| {:.3g}", worst_identity,
                            worst_modular));
}

Outcome optimizer_vs_oracle() {
  const auto t0 = Clock::now();
  Checks c;
  Rng rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<std::vector<double>> coords(n, std::vector<double>(2));
    std::vector<double> w(n);
    for (auto& pt : coords)
      for (double& v : pt) v = rng.uniform();
    for (double& v : w) v = rng.uniform(0.3, 2.0);
    const FiniteSpace X = FiniteSpace::from_coords(coords, 1.0, w);
    const FunctionField f = uniform_function(rng, n, -1.0, 1.0);
    const double s = trial % 2 ? 1.0 : 0.5;
    const double want = oracle::gradient_qp(X, f.values, s);
    const double got = minimal_gradient(X, fixture::constant_p(n, 2.0), f, s).norm;
    worst = std::max(worst, std::abs(got - want) / want);
    c.expect(std::abs(got - want) <= 1e-4 * want,
             fmt::format("trial {}: {:.10g} vs oracle {:.10g}", trial, got, want));
  }
  // hand-solved least-norm points of the single ball constraint on two points
  const auto a = minimal_poincare_phi(fixture::x2(), fixture::constant_p(2, 2.0),
                                      fixture::f_star(), 1.0, 1.0, 1e-10);
  c.near(a.phi[0], 1.0, 1e-9, "phi(a) unit weights");
  c.near(a.phi[1], 1.0, 1e-9, "phi(b) unit weights");
  c.near(a.norm, std::sqrt(2.0), 1e-9, "||phi|| unit weights");
  const FiniteSpace y({0.0, 0.5, 0.5, 0.0}, {1.0, 3.0});
  const auto b = minimal_poincare_phi(y, fixture::constant_p(2, 2.0), fixture::f_star(), 1.0, 1.0,
                                      1e-10);
  c.near(b.phi[0], 0.75, 1e-6, "phi(a) weights (1,3)");
  c.near(b.phi[1], 0.75, 1e-6, "phi(b) weights (1,3)");
  c.near(b.norm, 1.5, 1e-9, "||phi|| weights (1,3)");
  return finish(c, seconds_since(t0), 60.0, fmt::format("worst QP rel error {:.3g}", worst));
}

Outcome constant_stability() {
  const auto t0 = Clock::now();
  Checks c;
  const FiniteSpace X = gen_random_cloud(100, 2, 100);
  const ExponentField p = affine_exponent(X, 1.5, 2.0);
  Rng rng(1);
  std::vector<FunctionField> corpus;
  std::vector<std::string> names;
  for (int k = 0; k < 30; ++k) {
    corpus.push_back(uniform_function(rng, X.size(), -1.0, 1.0));
    names.push_back("f" + std::to_string(k));
  }
  HarnessOptions opts;  // s = 1, u = q = 1
  const auto rep = equivalence_report(X, p, corpus, names, opts);
  double widest = 0.0;
  std::string widest_name;
  for (const auto& st : rep.ratios) {
    const bool ok = st.count == corpus.size() && std::isfinite(st.spread) && st.spread < 1e3;
    c.expect(ok, fmt::format("{} spread {:.4g}", st.name, st.spread));
    if (st.spread > widest) {
      widest = st.spread;
      widest_name = st.name;
    }
  }
  c.expect(rep.failed_rows == 0, "solver errors in the corpus");
  c.expect(rep.asserted_ok, "provable directions violated");
  const double harness_time = seconds_since(t0);

  // end-to-end CLI run on 200 points
  const auto t1 = Clock::now();
  const std::string dir = [] {
    const char* env = std::getenv("HAJLASZ_TEST_TMP");
    return std::string(env ? env : "/tmp");
  }();
  const std::string sp = dir + "/acceptance_c200.json";
  const std::string pp = dir + "/acceptance_p200.json";
  auto call = [](std::vector<std::string> args) {
    args.insert(args.begin(), "hajlasz");
    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    std::ostringstream out;
    std::ostringstream err;
    return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  };
  c.expect(call({"gen", "--kind", "cloud", "--n", "200", "--dim", "2", "--seed", "200", "--out",
                 sp}) == 0,
           "gen cloud");
  c.expect(call({"gen", "--kind", "exponent", "--space", sp, "--form", "affine", "--c0", "1.5",
                 "--c1", "0.5", "--out", pp}) == 0,
           "gen exponent");
  const int code = call({"verify", "--space", sp, "--exponent", pp, "--random", "10", "--seed",
                         "1", "--out", dir + "/acceptance_v200.csv", "--summary",
                         dir + "/acceptance_v200.json"});
  c.expect(code == 0, fmt::format("verify on 200 points exited {}", code));
  const double verify_time = seconds_since(t1);
  c.expect(verify_time < 60.0, fmt::format("verify on 200 points took {:.1f} s", verify_time));
  return finish(c, seconds_since(t0), 600.0,
                fmt::format("widest spread {} = {:.4g}; 100-point harness {:.1f} s; "
                            "200-point verify {:.1f} s (limit 60 s)",
                            widest_name, widest, harness_time, verify_time));
}

Outcome doubling_formula() {
  const auto t0 = Clock::now();
  Checks c;
  std::size_t fixtures = 0;
  std::string extra;
  for (std::size_t side = 3; side <= 9; ++side) {
    for (double beta : {1.0, 1.5, 2.0}) {
      const FiniteSpace g = gen_grid(2, side, beta);
      const double cmu = estimate_doubling(g, 2.0);
      if (cmu < 2.0) continue;
      ++fixtures;
      for (double alpha : {2.0, 3.0, 4.0}) {
        const double measured = estimate_doubling(g, alpha);
        const double bound = std::pow(2.0 * alpha, std::log2(cmu));
        c.expect(measured <= bound * (1.0 + 1e-12),
                 fmt::format("side {} beta {} alpha {}: {:.6g} > {:.6g}", side, beta, alpha,
                             measured, bound));
      }
    }
  }
  c.expect(fixtures > 0, "no grid fixture has C_mu >= 2");
  return finish(c, seconds_since(t0), 60.0, fmt::format("{} grid fixtures with C_mu >= 2", fixtures));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"analytic fixtures on X2 and L3", analytic_fixtures},
      {"pointwise sharp-maximal chains on 100 random spaces", pointwise_chains},
      {"feasibility transfers on the 5x5 grid corpus", feasibility_transfers},
      {"proof-step bounds on the 5x5 grid corpus", proof_step_bounds},
      {"power identity and Luxemburg norm axioms", norm_axioms},
      {"optimizer against exact oracles", optimizer_vs_oracle},
      {"equivalence-constant stability and 200-point verify", constant_stability},
      {"doubling constant formula on grids", doubling_formula},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

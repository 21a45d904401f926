#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hajlasz/covering_solver.hpp"
#include "hajlasz/exponent.hpp"
#include "hajlasz/gradient.hpp"
#include "hajlasz/lebesgue.hpp"
#include "hajlasz/space.hpp"

namespace hajlasz {

// ---------------------------------------------------------------------------
// Poincare witnesses
//
// With psi = phi^q the Poincare condition on a ball B of radius r > 0 reads
//   mu(B)^{-1} sum_B mu psi >= (L_B / r^s)^q,
//   L_B = mu(B)^{-1} sum_B mu |f - f_B|,
// which is linear in psi. Balls with identical member sets keep only the
// smallest radius; balls with L_B = 0 impose nothing.
// ---------------------------------------------------------------------------

CoveringSystem poincare_constraints(const FiniteSpace& space,
                                    const FunctionField& f, double s, double q);

/// min over balls of the relative slack of psi = phi^q (>= 0 when feasible).
double poincare_slack(const FiniteSpace& space, const FunctionField& f,
                      const FunctionField& phi, double q, double s);

struct PoincareWitness {
  FunctionField phi;
  double norm = 0.0;   // ||phi||_{p(.)}
  double slack = 0.0;  // poincare_slack of phi
};

/// phi of least ||phi||_{p(.)} satisfying the Poincare condition.
/// Requires 1 <= q < p^-.
PoincareWitness minimal_poincare_phi(const FiniteSpace& space,
                                     const ExponentField& p,
                                     const FunctionField& f, double s, double q,
                                     double tol = kDefaultSolverTol);

/// Smallest C with |f(x) - f_B| <= C r(B)^s [M(phi^q)(x)]^{1/q} over all balls
/// of positive radius and their members. Throws std::invalid_argument when
/// phi does not satisfy the Poincare condition.
double check_lemma2(const FiniteSpace& space, const FunctionField& f,
                    const FunctionField& phi, double q, double s);

// ---------------------------------------------------------------------------
// Pointwise comparisons between the sharp maximal variants
// ---------------------------------------------------------------------------

inline constexpr double kPointwiseRelTol = 1e-9;

struct ChainReport {
  // 0: tilde <= sharp       1: sharp <= 2 tilde
  // 2: tilde <= overline    3: overline <= sharp + 2 M f
  std::array<bool, 4> holds{};
  /// Largest (lhs - rhs) / max(|lhs|, |rhs|) over points; <= 0 when the
  /// inequality holds everywhere.
  std::array<double, 4> worst{};
  bool all() const { return holds[0] && holds[1] && holds[2] && holds[3]; }
};

ChainReport check_remark3(const FiniteSpace& space, const FunctionField& f,
                            double u, double s);

/// |f(x) - f_B| <= (2A)^s r(B)^s [g(x) + M g(x)] on every ball and member.
/// Throws std::invalid_argument when g is not a gradient of f.
bool check_thm1_forward(const FiniteSpace& space, const FunctionField& f,
                        const FunctionField& g, double s, double quasi_constant);

/// f_u^s(x) <= [M(h^u)(x)]^{1/u} at every point.
bool check_sharp_domination(const FiniteSpace& space, const FunctionField& f,
                            const FunctionField& h, double u, double s);

/// max over pairs with f(x) != f(y) of
///   |f(x) - f(y)| / (rho(x,y)^s [f_u^s(x) + f_u^s(y)]);
/// +inf if some deviating pair has a zero denominator.
double hajlasz_bound_constant(const FiniteSpace& space, const FunctionField& f,
                              const FunctionField& sharp, double s);

// ---------------------------------------------------------------------------
// Norm equivalence harness
// ---------------------------------------------------------------------------

struct HarnessOptions {
  double s = 1.0;
  double u = 1.0;
  double q = 1.0;
  double tol = kDefaultSolverTol;
};

inline constexpr std::array<const char*, 6> kFunctionalNames = {
    "W", "B", "A", "sharp", "tilde", "overline"};

struct EquivalenceRow {
  std::string name;
  double norm_f = 0.0;
  // N_W, N_B, N_A, N_sharp, N_tilde, N_overline in kFunctionalNames order
  std::array<double, 6> functionals{};
  double hajlasz_bound = 0.0;

  // directions that hold exactly (asserted)
  bool h_is_gradient = false;
  bool psi_feasible = false;
  bool w_le_b = false;
  bool a_le_b = false;
  bool sharp_dominated = false;
  bool thm1_forward = false;
  bool chain_a = false;
  bool chain_b_lower = false;
  // reported only
  bool chain_b_upper = false;

  std::string error;

  bool asserted_ok() const;
};

struct RatioStats {
  std::string name;
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double spread = 0.0;  // max / min
};

struct EquivalenceReport {
  HarnessOptions options;
  double quasi_constant = 1.0;
  std::vector<EquivalenceRow> rows;
  std::vector<RatioStats> ratios;  // all 15 pairs i < j
  RatioStats hajlasz_bound;
  std::size_t failed_rows = 0;     // rows with a solver error
  bool asserted_ok = true;
};

/// Name of ratio pair (i, j) e.g. "W/B".
std::string ratio_name(std::size_t i, std::size_t j);

EquivalenceRow equivalence_row(const FiniteSpace& space, const ExponentField& p,
                               const FunctionField& f, const HarnessOptions& options,
                               double quasi_constant);

/// Requires p^- > 1 and u, q in [1, p^-). Corpus items are processed in
/// parallel; output order follows the corpus.
EquivalenceReport equivalence_report(const FiniteSpace& space,
                                     const ExponentField& p,
                                     const std::vector<FunctionField>& corpus,
                                     const std::vector<std::string>& names,
                                     const HarnessOptions& options);

void validate_harness(const ExponentField& p, const HarnessOptions& options);

struct AxiomsReport {
  std::size_t trials = 0;
  std::size_t triangle_violations = 0;
  double worst_triangle = 0.0;      // max (N(f+g) - N(f) - N(g)) / (N(f) + N(g))
  std::size_t homogeneity_violations = 0;
  double worst_homogeneity = 0.0;   // max |N(cf) - |c| N(f)| / (|c| N(f))
  bool definite = false;            // N(0) == 0 and N(f) > 0 for f != 0
  std::vector<double> cauchy_tail;  // N(f_n - f), n = 1, 2, ...
  bool cauchy_ok = false;
  bool all() const {
    return triangle_violations == 0 && homogeneity_violations == 0 && definite &&
           cauchy_ok;
  }
};

/// Finite-dimensional proxy for completeness of the Hajlasz-Sobolev norm.
AxiomsReport norm_axioms_check(const FiniteSpace& space, const ExponentField& p,
                               double s, std::size_t trials, std::uint64_t seed,
                               double tol = kDefaultSolverTol);

}  // namespace hajlasz

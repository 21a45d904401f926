#include "hajlasz/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "hajlasz/characterizations.hpp"
#include "hajlasz/generators.hpp"
#include "hajlasz/gradient.hpp"
#include "hajlasz/io.hpp"
#include "hajlasz/maximal.hpp"
#include "hajlasz/random.hpp"
#include "hajlasz/report_io.hpp"

namespace hajlasz {

namespace {

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

FiniteSpace open_space(const RunConfig& cfg) {
  if (cfg.space_path.empty()) throw Usage("--space: required");
  return load_space(cfg.space_path, cfg.quantize);
}

ExponentField open_exponent(const RunConfig& cfg, const FiniteSpace& space) {
  if (cfg.exponent_path.empty()) throw Usage("--exponent: required");
  ExponentField p = load_exponent(cfg.exponent_path);
  if (p.size() != space.size()) {
    throw std::invalid_argument("exponent.values: dimension mismatch with space");
  }
  return p;
}

FunctionField open_function(const std::string& path, const FiniteSpace& space) {
  if (path.empty()) throw Usage("--function: required");
  FunctionField f = load_function(path);
  if (f.size() != space.size()) {
    throw std::invalid_argument(path + ": values: dimension mismatch with space");
  }
  return f;
}

struct GenOptions {
  std::string kind = "grid";
  int dim = 1;
  std::size_t side = 5;
  std::size_t n = 10;
  double beta = 1.0;
  std::string form = "constant";
  ExponentParams exponent;
  double lo = -1.0;
  double hi = 1.0;
};

int run_gen(const RunConfig& cfg, const GenOptions& g, std::ostream& out) {
  if (g.kind == "grid") {
    emit(to_json_text(space_to_json(gen_grid(g.dim, g.side, g.beta))), cfg.out_path, out);
  } else if (g.kind == "cloud") {
    const auto dim = static_cast<std::size_t>(std::max(g.dim, 1));
    emit(to_json_text(space_to_json(gen_random_cloud(g.n, dim, cfg.seed))), cfg.out_path,
         out);
  } else if (g.kind == "exponent") {
    const FiniteSpace space = open_space(cfg);
    const ExponentField p = gen_exponent(space, parse_exponent_kind(g.form), g.exponent);
    emit(to_json_text(exponent_to_json(p)), cfg.out_path, out);
  } else if (g.kind == "function") {
    const std::size_t n = cfg.space_path.empty() ? g.n : open_space(cfg).size();
    emit(to_json_text(function_to_json(gen_random_function(n, cfg.seed, g.lo, g.hi))),
         cfg.out_path, out);
  } else {
    throw Usage("--kind: expected grid, cloud, exponent or function");
  }
  return 0;
}

int run_exponent(const RunConfig& cfg, std::optional<double> pinf, std::ostream& out) {
  const FiniteSpace space = open_space(cfg);
  const ExponentField p = open_exponent(cfg, space);
  const ExponentRange range = exponent_range(p);
  const LogHolderConstants c = log_holder_estimate(space, p, pinf);
  const double best = optimal_p_inf(space, p);
  const LogHolderConstants cb = log_holder_estimate(space, p, best);
  nlohmann::json doc = {{"p_minus", range.lower},   {"p_plus", range.upper},
                        {"c_log", c.c_log},         {"c_inf", c.c_inf},
                        {"p_inf", c.p_inf},         {"optimal_p_inf", best},
                        {"optimal_c_inf", cb.c_inf}};
  emit(to_json_text(doc), cfg.out_path, out);
  return 0;
}

int run_norm(const RunConfig& cfg, std::ostream& out) {
  const FiniteSpace space = open_space(cfg);
  const ExponentField p = open_exponent(cfg, space);
  const FunctionField f = open_function(cfg.function_path, space);
  const double norm = vlp_norm(space, p, f, cfg.tol);
  nlohmann::json doc = {{"norm", norm},
                        {"modular_at_norm", norm > 0.0 ? modular(space, p, f, norm) : 0.0}};
  emit(to_json_text(doc), cfg.out_path, out);
  return 0;
}

int run_maximal(const RunConfig& cfg, const std::string& kind, std::ostream& out) {
  const FiniteSpace space = open_space(cfg);
  const FunctionField f = open_function(cfg.function_path, space);
  FunctionField result;
  if (kind == "hl") {
    result = hl_maximal(space, f);
  } else if (kind == "sharp") {
    result = sharp_maximal(space, f, cfg.u, cfg.s);
  } else if (kind == "tilde") {
    result = tilde_sharp(space, f, cfg.u, cfg.s);
  } else if (kind == "overline") {
    result = overline_sharp(space, f, cfg.u, cfg.s);
  } else if (kind == "minh") {
    result = minimal_h(space, f, cfg.s);
  } else {
    throw Usage("--kind: expected hl, sharp, tilde, overline or minh");
  }
  emit(to_json_text(function_to_json(result)), cfg.out_path, out);
  return 0;
}

nlohmann::json certificate_json(const GradientCertificate& cert) {
  return {{"norm", cert.norm}, {"g", cert.g.values}, {"slack", cert.slack},
          {"valid", cert.valid}};
}

int run_gradient(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FiniteSpace space = open_space(cfg);
  const ExponentField p = open_exponent(cfg, space);
  const FunctionField f = open_function(cfg.function_path, space);
  try {
    emit(to_json_text(certificate_json(minimal_gradient(space, p, f, cfg.s, cfg.tol))),
         cfg.out_path, out);
    return 0;
  } catch (const SolverError& e) {
    GradientCertificate best = is_gradient(space, f, FunctionField(e.best().x), cfg.s);
    best.norm = e.best().norm;
    nlohmann::json doc = certificate_json(best);
    doc["error"] = e.what();
    emit(to_json_text(doc), cfg.out_path, out);
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const FiniteSpace space = open_space(cfg);
  const ExponentField p = open_exponent(cfg, space);
  HarnessOptions options{cfg.s, cfg.u, cfg.q, cfg.tol};
  validate_harness(p, options);

  std::vector<FunctionField> corpus;
  std::vector<std::string> names;
  if (!cfg.corpus_dir.empty()) {
    if (cfg.random_count > 0) throw Usage("--corpus and --random are exclusive");
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(cfg.corpus_dir)) {
      throw std::invalid_argument("--corpus: not a directory");
    }
    for (const auto& entry : std::filesystem::directory_iterator(cfg.corpus_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      corpus.push_back(open_function(file.string(), space));
      names.push_back(file.stem().string());
    }
  } else if (cfg.random_count > 0) {
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.random_count; ++i) {
      std::vector<double> v(space.size());
      for (double& x : v) x = rng.uniform(-1.0, 1.0);
      corpus.emplace_back(std::move(v));
      names.push_back("random_" + std::to_string(i));
    }
  } else {
    throw Usage("verify: needs --corpus DIR or --random N");
  }

  const EquivalenceReport report = equivalence_report(space, p, corpus, names, options);
  emit(report_csv(report), cfg.out_path, out);
  const std::string summary = to_json_text(report_summary(report));
  if (!cfg.summary_path.empty()) {
    write_text_file(cfg.summary_path, summary);
  } else if (!cfg.out_path.empty()) {
    out << summary;
  }
  return report.asserted_ok ? 0 : 1;
}

int run_report(const std::string& csv_path, const RunConfig& cfg, std::ostream& out) {
  std::ifstream in(csv_path);
  if (!in) throw std::invalid_argument(csv_path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  emit(render_table(buffer.str()), cfg.out_path, out);
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable fractional Hajlasz-Sobolev laboratory on finite spaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  GenOptions gen;
  std::optional<double> pinf;
  std::string maximal_kind = "hl";
  std::string csv_path;

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--space", cfg.space_path, "Space file");
    sub->add_option("--quantize", cfg.quantize, "Round distances to this many decimals");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output path (default stdout)");
  };

  auto* g = app.add_subcommand("gen", "Generate a space, exponent or function file");
  g->add_option("--kind", gen.kind, "grid|cloud|exponent|function");
  g->add_option("--dim", gen.dim, "Dimension (grid: 1 or 2)");
  g->add_option("--side", gen.side, "Grid points per side");
  g->add_option("--n", gen.n, "Point count (cloud) or length (function)");
  g->add_option("--beta", gen.beta, "Snowflake exponent, rho = |x-y|^beta");
  g->add_option("--seed", cfg.seed, "Random seed");
  g->add_option("--form", gen.form, "Exponent form: constant|affine|bump");
  g->add_option("--c0", gen.exponent.c0, "Exponent offset");
  g->add_option("--c1", gen.exponent.c1, "Exponent slope / bump height");
  g->add_option("--width", gen.exponent.width, "Bump width");
  g->add_option("--p-lo", gen.exponent.p_lo, "Exponent clip lower bound");
  g->add_option("--p-hi", gen.exponent.p_hi, "Exponent clip upper bound");
  g->add_option("--basepoint", gen.exponent.basepoint, "Exponent basepoint index");
  g->add_option("--lo", gen.lo, "Random function lower bound");
  g->add_option("--hi", gen.hi, "Random function upper bound");
  add_space(g);
  add_out(g);

  auto* e = app.add_subcommand("exponent", "Exponent range and log-Hoelder constants");
  add_space(e);
  e->add_option("--exponent", cfg.exponent_path, "Exponent file");
  e->add_option("--pinf", pinf, "p_inf (default: value at the basepoint)");
  add_out(e);

  auto* nm = app.add_subcommand("norm", "Luxemburg norm of a function");
  add_space(nm);
  nm->add_option("--exponent", cfg.exponent_path, "Exponent file");
  nm->add_option("--function", cfg.function_path, "Function file");
  double norm_tol = kDefaultNormTol;
  nm->add_option("--tol", norm_tol, "Relative bisection tolerance");
  add_out(nm);

  auto* mx = app.add_subcommand("maximal", "Maximal functions and minimal h");
  add_space(mx);
  mx->add_option("--function", cfg.function_path, "Function file");
  mx->add_option("--kind", maximal_kind, "hl|sharp|tilde|overline|minh");
  mx->add_option("--u", cfg.u, "Oscillation exponent u >= 1");
  mx->add_option("--s", cfg.s, "Smoothness s > 0");
  add_out(mx);

  auto* gr = app.add_subcommand("gradient", "Minimal-norm Hajlasz gradient");
  add_space(gr);
  gr->add_option("--exponent", cfg.exponent_path, "Exponent file");
  gr->add_option("--function", cfg.function_path, "Function file");
  gr->add_option("--s", cfg.s, "Smoothness s > 0");
  gr->add_option("--tol", cfg.tol, "Relative tolerance on the norm");
  add_out(gr);

  auto* v = app.add_subcommand("verify", "Norm-equivalence harness over a corpus");
  add_space(v);
  v->add_option("--exponent", cfg.exponent_path, "Exponent file");
  v->add_option("--s", cfg.s, "Smoothness s > 0");
  v->add_option("--u", cfg.u, "Sharp maximal exponent, 1 <= u < p^-");
  v->add_option("--q", cfg.q, "Poincare exponent, 1 <= q < p^-");
  v->add_option("--tol", cfg.tol, "Solver tolerance");
  v->add_option("--corpus", cfg.corpus_dir, "Directory of function files");
  v->add_option("--random", cfg.random_count, "Random corpus size");
  v->add_option("--seed", cfg.seed, "Random corpus seed");
  v->add_option("--out", cfg.out_path, "CSV output (default stdout)");
  v->add_option("--summary", cfg.summary_path, "JSON summary output");

  auto* rp = app.add_subcommand("report", "Render a verify CSV as a text table");
  rp->add_option("--csv", csv_path, "CSV produced by verify")->required();
  add_out(rp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return 2;
  }

  try {
    if (*g) return run_gen(cfg, gen, out);
    if (*e) return run_exponent(cfg, pinf, out);
    if (*nm) {
      cfg.tol = norm_tol;
      return run_norm(cfg, out);
    }
    if (*mx) return run_maximal(cfg, maximal_kind, out);
    if (*gr) return run_gradient(cfg, out, err);
    if (*v) return run_verify(cfg, out);
    if (*rp) return run_report(csv_path, cfg, out);
  } catch (const SolverError& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace hajlasz

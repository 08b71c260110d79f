#include "moddenoise/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "moddenoise/experiment.hpp"
#include "moddenoise/io.hpp"
#include "moddenoise/signal.hpp"
#include "moddenoise/solvers.hpp"
#include "moddenoise/spectral.hpp"
#include "moddenoise/svg.hpp"

namespace moddenoise {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::degeneracy: return kExitDegeneracy;
    case ErrorKind::numerical: return kExitNumerical;
    default: return kExitValidation;
  }
}

// ---------------------------------------------------------------------------
// bound queries

namespace {

using json = nlohmann::json;

int family_max_degree(GraphFamily family, int n) {
  switch (family) {
    case GraphFamily::path: return n == 2 ? 1 : 2;
    case GraphFamily::complete:
    case GraphFamily::star: return n - 1;
    case GraphFamily::custom: break;
  }
  return 0;
}

// Closed-form spectra are materialized, so very large n is left to explicit fields.
constexpr std::int64_t kMaxFamilyFill = 10'000'000;

void fill_from_family(BoundQuery& q) {
  if (q.family == GraphFamily::custom || !q.n) return;
  if (*q.n < 2 || *q.n > kMaxFamilyFill) {
    throw Error(ErrorKind::range, "query: 'family' can fill spectral fields only for 2 <= n <= " +
                                      std::to_string(kMaxFamilyFill) + "; give them explicitly");
  }
  const int n = static_cast<int>(*q.n);
  const Eigen::VectorXd lam = analytic_spectrum(q.family, n);
  if (!q.delta) q.delta = family_max_degree(q.family, n);
  if (!q.lambda_min) q.lambda_min = lam(n - 2);
  if (!q.lambda_1) q.lambda_1 = lam(0);
  if (q.lambda_bar && !q.L_size) {
    const double tol = 1e-9 * std::max(1.0, lam(0));
    int count = 0;
    for (int j = 0; j < n - 1; ++j) {
      if (lam(j) < *q.lambda_bar - tol) ++count;
    }
    q.L_size = count;
  }
  // out-of-range k is left for the evaluators to reject
  if (q.k && *q.k >= 1 && *q.k <= n - 1) {
    if (!q.lambda_n_minus_k) q.lambda_n_minus_k = lam(n - *q.k - 1);
    if (!q.lambda_n_minus_k_plus_1) q.lambda_n_minus_k_plus_1 = lam(n - *q.k);
  }
}

}  // namespace

BoundQuery parse_bound_query(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::validation, std::string("query is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::validation, "query must be a JSON object");

  BoundQuery q;
  const std::set<std::string> int_keys{"n", "L_size", "k"};
  const std::set<std::string> real_keys{"delta",  "B_n",     "sigma",
                                        "lambda_bar", "lambda_min", "lambda_1",
                                        "epsilon",    "lambda_n_minus_k",
                                        "lambda_n_minus_k_plus_1", "M", "theta",
                                        "order_constant"};
  for (const auto& [key, value] : j.items()) {
    if (key == "family") {
      if (!value.is_string()) throw Error(ErrorKind::validation, "query field 'family' must be a string");
      q.family = parse_graph_family(value.get<std::string>());
      continue;
    }
    if (int_keys.contains(key)) {
      if (!value.is_number_integer()) {
        throw Error(ErrorKind::validation, "query field '" + key + "' must be an integer");
      }
      const auto v = value.get<std::int64_t>();
      if (key == "n") q.n = v;
      if (key == "L_size") q.L_size = v;
      if (key == "k") q.k = v;
      continue;
    }
    if (real_keys.contains(key)) {
      if (!value.is_number()) {
        throw Error(ErrorKind::validation, "query field '" + key + "' must be a number");
      }
      const double v = value.get<double>();
      if (key == "delta") q.delta = v;
      else if (key == "B_n") q.B_n = v;
      else if (key == "sigma") q.sigma = v;
      else if (key == "lambda_bar") q.lambda_bar = v;
      else if (key == "lambda_min") q.lambda_min = v;
      else if (key == "lambda_1") q.lambda_1 = v;
      else if (key == "epsilon") q.epsilon = v;
      else if (key == "lambda_n_minus_k") q.lambda_n_minus_k = v;
      else if (key == "lambda_n_minus_k_plus_1") q.lambda_n_minus_k_plus_1 = v;
      else if (key == "M") q.M = v;
      else if (key == "theta") q.theta = v;
      else q.order_constant = v;
      continue;
    }
    throw Error(ErrorKind::validation, "unknown query field '" + key + "'");
  }
  fill_from_family(q);
  return q;
}

// ---------------------------------------------------------------------------
// subcommands

namespace {

struct GraphSource {
  std::string family = "path";
  int n = 0;
  std::string edges;

  void add_to(CLI::App* app) {
    app->add_option("--family", family, "path, complete or star");
    app->add_option("--n", n, "number of vertices");
    app->add_option("--edges", edges, "edge list file: n on the first line, then i j pairs");
  }

  Graph build(int default_n = 0) const {
    if (!edges.empty()) return read_edge_list(edges);
    const int size = n > 0 ? n : default_n;
    if (size <= 0) throw Error(ErrorKind::validation, "need --n or --edges to build the graph");
    return build_graph(parse_graph_family(family), size);
  }
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int cmd_spectrum(const GraphSource& src, const std::string& out_path, std::ostream& out) {
  const Graph g = src.build();
  const SpectralDecomposition spec = spectral_decomposition(g);
  emit(out_path, spectrum_csv(spec.eigenvalues()), out);
  const bool to_stdout = out_path.empty() || out_path == "-";
  out << (to_stdout ? "# " : "") << "n=" << g.size()
      << " lambda_min=" << format_double(spec.lambda_min())
      << " lambda_1=" << format_double(spec.lambda_max()) << " delta=" << g.max_degree()
      << "\n";
  return kExitOk;
}

struct DenoiseArgs {
  GraphSource graph;
  std::string input;
  std::string truth;
  std::string out;
  bool raw = false;
  double gamma = -1.0;
  std::string gamma_rule;
  double sigma = -1.0;
  double lipschitz = -1.0;
  double smoothness = -1.0;
  double lambda_bar = -1.0;
  std::string method = "ucqp";
};

double denoise_gamma(const DenoiseArgs& a, const Graph& g, const SpectralDecomposition& spec) {
  if (a.gamma >= 0.0) {
    if (!a.gamma_rule.empty()) {
      throw Error(ErrorKind::validation, "give either --gamma or --gamma-rule, not both");
    }
    return a.gamma;
  }
  if (a.gamma_rule.empty()) throw Error(ErrorKind::validation, "need --gamma or --gamma-rule");
  const GammaSpec rule = parse_gamma_spec(a.gamma_rule);
  if (rule.kind == GammaSpec::Kind::fixed) return rule.c;
  if (a.sigma < 0.0) throw Error(ErrorKind::validation, "--gamma-rule needs --sigma");
  BoundQuery q;
  q.n = g.size();
  q.sigma = a.sigma;
  switch (rule.kind) {
    case GammaSpec::Kind::path_caption: return gamma_rule(GammaRule::path_caption, q);
    case GammaSpec::Kind::linear: return gamma_rule(GammaRule::linear, q, rule.c);
    case GammaSpec::Kind::path_lipschitz:
      if (a.lipschitz <= 0.0) {
        throw Error(ErrorKind::validation, "--gamma-rule path-lipschitz needs --lipschitz M");
      }
      q.M = a.lipschitz;
      return gamma_rule(GammaRule::path_lipschitz, q);
    case GammaSpec::Kind::lemma2:
      if (a.smoothness < 0.0) {
        throw Error(ErrorKind::validation, "--gamma-rule lemma2 needs --smoothness B_n");
      }
      q.delta = g.max_degree();
      q.B_n = a.smoothness;
      q.lambda_bar = a.lambda_bar > 0.0 ? a.lambda_bar : spec.lambda_max();
      return gamma_rule(GammaRule::lemma2, q);
    case GammaSpec::Kind::fixed: break;
  }
  return rule.c;
}

int cmd_denoise(const DenoiseArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const TorusSignal z = parse_signal_csv(read_text_file(a.input), !a.raw);
  const Graph g = a.graph.build(static_cast<int>(z.size()));
  if (g.size() != z.size()) {
    throw Error(ErrorKind::validation, "signal has " + std::to_string(z.size()) +
                                           " entries but the graph has " +
                                           std::to_string(g.size()) + " vertices");
  }
  const SpectralDecomposition spec = spectral_decomposition(g);
  const double gamma = denoise_gamma(a, g, spec);
  if (a.method == "both") {
    throw Error(ErrorKind::validation, "denoise runs one method at a time (ucqp or trs)");
  }
  const Method method = parse_method(a.method);

  // informational lines go to stderr-equivalent only when the CSV uses stdout
  std::ostringstream info;
  info << "method=" << to_string(method) << " gamma=" << format_double(gamma) << "\n";
  TorusSignal estimate;
  if (method == Method::ucqp) {
    const auto sol = solve_ucqp(z, spec, gamma);
    info << "residual=" << format_double(sol.residual) << "\n";
    estimate = project_to_torus(sol.g_hat);
  } else {
    const auto sol = solve_trs(z, spec, gamma);
    info << "mu_star=" << format_double(sol.mu_star)
         << " kkt_residual=" << format_double(sol.kkt_residual)
         << " iterations=" << sol.iterations << "\n";
    estimate = project_to_torus(sol.g_hat);
  }
  if (!a.truth.empty()) {
    const TorusSignal h = parse_signal_csv(read_text_file(a.truth), true);
    info << "mse_input=" << format_double(mse(z, h))
         << " mse_output=" << format_double(mse(estimate, h)) << "\n";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  info << "seconds=" << seconds << "\n";

  emit(a.out, signal_csv(estimate), out);
  const bool to_stdout = a.out.empty() || a.out == "-";
  if (to_stdout) {
    std::istringstream lines(info.str());
    for (std::string line; std::getline(lines, line);) out << "# " << line << "\n";
  } else {
    out << info.str();
  }
  return kExitOk;
}

struct SweepArgs {
  std::string config;
  std::string out = "sweep.csv";
  std::string replay;
  std::string svg;
  int n = 0;
  std::string family;
  int trials = 0;
  long long seed = -1;
  std::string gamma_rule;
  std::string method;
  std::vector<double> sigma;
  int threads = 0;
};

std::string default_replay_path(const std::string& csv) {
  if (csv.size() > 4 && csv.ends_with(".csv")) return csv.substr(0, csv.size() - 4) + ".json";
  return csv + ".json";
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = config_from_json(read_text_file(a.config));
  if (a.n > 0) cfg.n = a.n;
  if (!a.family.empty()) cfg.graph_family = parse_graph_family(a.family);
  if (a.trials > 0) cfg.trials = a.trials;
  if (a.seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(a.seed);
  if (!a.gamma_rule.empty()) cfg.gamma = parse_gamma_spec(a.gamma_rule);
  if (!a.method.empty()) {
    cfg.methods = a.method == "both" ? std::vector<Method>{Method::ucqp, Method::trs}
                                     : std::vector<Method>{parse_method(a.method)};
  }
  if (!a.sigma.empty()) cfg.sigma_grid = a.sigma;
  validate_config(cfg);

  const std::string replay = a.replay.empty() ? default_replay_path(a.out) : a.replay;
  write_text_file(replay, config_to_json(cfg));
  SweepOptions opts;
  opts.threads = a.threads;
  try {
    const SweepResult result = sweep_sigma(cfg, opts);
    write_text_file(a.out, sweep_csv(result));
    if (!a.svg.empty()) {
      write_text_file(a.svg, sweep_svg(result.rows, std::string("mean MSE vs sigma, ") +
                                                         std::string(to_string(cfg.function.kind))));
    }
    out << "wrote " << result.rows.size() << " rows to " << a.out << " (replay config "
        << replay << ")\n";
    return kExitOk;
  } catch (const SweepError& e) {
    write_text_file(a.out, sweep_csv(aggregate(cfg, e.partial())));
    err << "error: " << e.what() << "\n"
        << "partial results (" << e.partial().size() << " trials) written to " << a.out << "\n";
    return kExitTrialFailure;
  }
}

struct BoundsArgs {
  std::string query;
  std::string kind = "ucqp-expected";
  std::vector<double> sigma;
  double from = 1e-3;
  double to = 0.096;
  int per_decade = 12;
  std::string out;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const BoundQuery q = parse_bound_query(read_text_file(a.query));
  validate_query(q);
  const std::vector<double> sigmas = a.sigma.empty() ? log_grid(a.from, a.to, a.per_decade) : a.sigma;
  emit(a.out, bound_curve_csv(q, sigmas, parse_bound_kind(a.kind)), out);
  return kExitOk;
}

int cmd_check(const std::string& theorem, const std::string& query, std::ostream& out) {
  const Theorem t = parse_theorem(theorem);
  const BoundQuery q = parse_bound_query(read_text_file(query));
  const ConditionReport report = check_denoising_conditions(t, q);
  out << report.to_text();
  return report.satisfied() ? kExitOk : kExitConditionUnsatisfied;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Denoising modulo samples on graphs: spectra, estimators, sweeps and bounds"};
  app.name("moddenoise");
  app.require_subcommand(1);

  GraphSource spectrum_graph;
  std::string spectrum_out;
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues as CSV j,lambda_j");
  spectrum_graph.add_to(spectrum);
  spectrum->add_option("--out", spectrum_out, "CSV output file (default stdout)");

  DenoiseArgs dn;
  auto* denoise = app.add_subcommand("denoise", "Denoise a signal CSV i,re,im");
  dn.graph.add_to(denoise);
  denoise->add_option("--input", dn.input, "noisy signal CSV")->required();
  denoise->add_option("--truth", dn.truth, "ground truth CSV; prints both MSEs");
  denoise->add_option("--out", dn.out, "estimate CSV (default stdout)");
  denoise->add_flag("--raw", dn.raw, "accept entries off the unit circle");
  denoise->add_option("--gamma", dn.gamma, "regularization weight");
  denoise->add_option("--gamma-rule", dn.gamma_rule,
                      "path-caption, path-lipschitz, lemma2, linear:C or fixed:G");
  denoise->add_option("--sigma", dn.sigma, "noise level used by gamma rules");
  denoise->add_option("--lipschitz", dn.lipschitz, "M for path-lipschitz");
  denoise->add_option("--smoothness", dn.smoothness, "B_n for lemma2");
  denoise->add_option("--lambda-bar", dn.lambda_bar, "cutoff for lemma2 (default lambda_1)");
  denoise->add_option("--method", dn.method, "ucqp or trs");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sigma sweep from a JSON config");
  sweep->add_option("--config", sw.config, "experiment config JSON")->required();
  sweep->add_option("--out", sw.out, "result CSV");
  sweep->add_option("--replay", sw.replay, "replay config JSON (default next to --out)");
  sweep->add_option("--svg", sw.svg, "log-log plot of mean MSE");
  sweep->add_option("--n", sw.n, "override n");
  sweep->add_option("--family", sw.family, "override graph family");
  sweep->add_option("--trials", sw.trials, "override trial count");
  sweep->add_option("--seed", sw.seed, "override base seed");
  sweep->add_option("--gamma-rule", sw.gamma_rule, "override gamma rule");
  sweep->add_option("--method", sw.method, "ucqp, trs or both");
  sweep->add_option("--sigma", sw.sigma, "replace the sigma grid");
  sweep->add_option("--threads", sw.threads, "worker threads (default MODDENOISE_THREADS or all)");

  BoundsArgs bd;
  auto* bounds = app.add_subcommand("bounds", "Bound curve CSV sigma,bound_value,condition_ok");
  bounds->add_option("--query", bd.query, "BoundQuery JSON")->required();
  bounds->add_option("--kind", bd.kind, "ucqp-expected, ucqp-general, ucqp-highprob or trs-highprob");
  bounds->add_option("--sigma", bd.sigma, "explicit sigma values");
  bounds->add_option("--sigma-from", bd.from, "log grid start");
  bounds->add_option("--sigma-to", bd.to, "log grid end");
  bounds->add_option("--per-decade", bd.per_decade, "log grid density");
  bounds->add_option("--out", bd.out, "CSV output file (default stdout)");

  std::string theorem, check_query;
  auto* check = app.add_subcommand("check", "Evaluate a theorem's conditions on a query");
  check->add_option("theorem", theorem, "thm2, thm6, thm8, cor1, cor2, cor3, cor5, cor6, cor7")
      ->required();
  check->add_option("--query", check_query, "BoundQuery JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_graph, spectrum_out, out);
    if (denoise->parsed()) return cmd_denoise(dn, out);
    if (sweep->parsed()) return cmd_sweep(sw, out, err);
    if (bounds->parsed()) return cmd_bounds(bd, out);
    if (check->parsed()) return cmd_check(theorem, check_query, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitValidation;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace moddenoise

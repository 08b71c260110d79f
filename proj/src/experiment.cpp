#include "moddenoise/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "moddenoise/io.hpp"
#include "moddenoise/rng.hpp"

namespace moddenoise {

namespace {

using json = nlohmann::json;

constexpr double kPi = std::numbers::pi;

double parse_number(std::string_view text, std::string_view what) {
  try {
    return parse_double(text);
  } catch (const Error&) {
    throw Error(ErrorKind::validation,
                "bad number '" + std::string(text) + "' in " + std::string(what));
  }
}

json gamma_to_json(const GammaSpec& g) {
  json j = to_string(g);
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// gamma spec

std::string to_string(const GammaSpec& g) {
  switch (g.kind) {
    case GammaSpec::Kind::path_caption: return "path-caption";
    case GammaSpec::Kind::path_lipschitz: return "path-lipschitz";
    case GammaSpec::Kind::lemma2: return "lemma2";
    case GammaSpec::Kind::linear: return "linear:" + format_double(g.c);
    case GammaSpec::Kind::fixed: return "fixed:" + format_double(g.c);
  }
  return "path-caption";
}

GammaSpec parse_gamma_spec(std::string_view text) {
  GammaSpec g;
  if (text == "path-caption") {
    g.kind = GammaSpec::Kind::path_caption;
  } else if (text == "path-lipschitz") {
    g.kind = GammaSpec::Kind::path_lipschitz;
  } else if (text == "lemma2") {
    g.kind = GammaSpec::Kind::lemma2;
  } else if (text.starts_with("linear:")) {
    g.kind = GammaSpec::Kind::linear;
    g.c = parse_number(text.substr(7), "gamma rule");
    if (!(g.c > 0.0)) throw Error(ErrorKind::validation, "linear gamma rule needs C > 0");
  } else if (text.starts_with("fixed:")) {
    g.kind = GammaSpec::Kind::fixed;
    g.c = parse_number(text.substr(6), "gamma rule");
    if (!(g.c >= 0.0)) throw Error(ErrorKind::validation, "fixed gamma must be >= 0");
  } else {
    throw Error(ErrorKind::validation,
                "unknown gamma rule '" + std::string(text) +
                    "' (expected path-caption, path-lipschitz, lemma2, linear:C or fixed:G)");
  }
  return g;
}

// ---------------------------------------------------------------------------
// config

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw Error(ErrorKind::validation, "config: n must be at least 2");
  if (cfg.trials < 1) throw Error(ErrorKind::validation, "config: trials must be at least 1");
  if (cfg.sigma_grid.empty()) throw Error(ErrorKind::validation, "config: sigma grid is empty");
  for (std::size_t i = 0; i < cfg.sigma_grid.size(); ++i) {
    const double s = cfg.sigma_grid[i];
    if (!std::isfinite(s) || s < 0.0) {
      throw Error(ErrorKind::validation, "config: sigma values must be finite and >= 0");
    }
    if (i > 0 && !(s > cfg.sigma_grid[i - 1])) {
      throw Error(ErrorKind::validation, "config: sigma grid must be strictly increasing");
    }
  }
  if (cfg.methods.empty()) throw Error(ErrorKind::validation, "config: no methods selected");
  if (cfg.sigma_grid.size() > std::numeric_limits<std::uint32_t>::max() ||
      cfg.trials > std::numeric_limits<int>::max() / 2) {
    throw Error(ErrorKind::validation, "config: grid or trial count too large");
  }
}

std::string config_to_json(const ExperimentConfig& cfg) {
  if (cfg.function.kind == FunctionKind::custom) {
    throw Error(ErrorKind::unsupported, "custom functions cannot be written to a config file");
  }
  json j;
  j["n"] = cfg.n;
  j["function"] = std::string(to_string(cfg.function.kind));
  j["graph"] = std::string(to_string(cfg.graph_family));
  j["sigma_grid"] = cfg.sigma_grid;
  j["trials"] = cfg.trials;
  j["gamma_rule"] = gamma_to_json(cfg.gamma);
  if (cfg.gamma.lambda_bar) j["lambda_bar"] = *cfg.gamma.lambda_bar;
  j["seed"] = cfg.base_seed;
  json methods = json::array();
  for (auto m : cfg.methods) methods.push_back(std::string(to_string(m)));
  j["methods"] = methods;
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::validation, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::validation, "config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("function")) cfg.function = parse_function(j.at("function").get<std::string>());
    if (j.contains("graph")) {
      cfg.graph_family = parse_graph_family(j.at("graph").get<std::string>());
    }
    if (!j.contains("sigma_grid")) {
      throw Error(ErrorKind::validation, "config needs field 'sigma_grid'");
    }
    const json& grid = j.at("sigma_grid");
    if (grid.is_array()) {
      cfg.sigma_grid = grid.get<std::vector<double>>();
    } else if (grid.is_object()) {
      cfg.sigma_grid = log_grid(grid.at("log_from").get<double>(), grid.at("log_to").get<double>(),
                                grid.value("per_decade", 12));
    } else {
      throw Error(ErrorKind::validation, "config field 'sigma_grid' must be an array or object");
    }
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("gamma_rule")) {
      cfg.gamma = parse_gamma_spec(j.at("gamma_rule").get<std::string>());
    }
    if (j.contains("lambda_bar")) cfg.gamma.lambda_bar = j.at("lambda_bar").get<double>();
    if (j.contains("seed")) cfg.base_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : j.at("methods")) {
        const auto name = m.get<std::string>();
        if (name == "both") {
          cfg.methods = {Method::ucqp, Method::trs};
        } else {
          cfg.methods.push_back(parse_method(name));
        }
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::validation, std::string("malformed config: ") + e.what());
  }
  validate_config(cfg);
  return cfg;
}

std::vector<double> log_grid(double from, double to, int per_decade) {
  if (!(from > 0.0) || !(to >= from) || per_decade < 1) {
    throw Error(ErrorKind::validation, "log grid needs 0 < from <= to and per_decade >= 1");
  }
  std::vector<double> grid;
  const double decades = std::log10(to / from);
  const int steps = static_cast<int>(std::floor(decades * per_decade + 1e-9));
  for (int k = 0; k <= steps; ++k) {
    grid.push_back(from * std::pow(10.0, static_cast<double>(k) / per_decade));
  }
  if (std::abs(grid.back() - to) > 1e-12 * to) {
    grid.push_back(to);
  } else {
    grid.back() = to;
  }
  return grid;
}

// ---------------------------------------------------------------------------
// trials

ExperimentContext make_context(const ExperimentConfig& cfg) {
  Graph g = build_graph(cfg.graph_family, cfg.n);
  SpectralDecomposition spec = spectral_decomposition(g);
  Eigen::VectorXd grid = uniform_grid(cfg.n);
  Eigen::VectorXd samples = sample_function(cfg.function, grid);
  TorusSignal h = lift_to_torus(samples);
  const double b = smoothness(h, g);
  return ExperimentContext{std::move(g), std::move(spec), std::move(grid), std::move(samples),
                           std::move(h), b};
}

double gamma_for(const ExperimentConfig& cfg, const ExperimentContext& ctx, double sigma) {
  BoundQuery q;
  q.n = cfg.n;
  q.sigma = sigma;
  switch (cfg.gamma.kind) {
    case GammaSpec::Kind::path_caption:
      return gamma_rule(GammaRule::path_caption, q);
    case GammaSpec::Kind::path_lipschitz:
      q.M = cfg.function.lipschitz_M;
      return gamma_rule(GammaRule::path_lipschitz, q);
    case GammaSpec::Kind::linear:
      return gamma_rule(GammaRule::linear, q, cfg.gamma.c);
    case GammaSpec::Kind::fixed:
      return cfg.gamma.c;
    case GammaSpec::Kind::lemma2:
      q.delta = ctx.graph.max_degree();
      q.B_n = ctx.smoothness;
      q.lambda_bar = cfg.gamma.lambda_bar.value_or(ctx.spectrum.lambda_max());
      return gamma_rule(GammaRule::lemma2, q);
  }
  return 0.0;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const ExperimentContext& ctx, double sigma,
                      std::uint32_t sigma_index, std::uint32_t trial_index) {
  TrialRecord rec;
  rec.sigma = sigma;
  rec.sigma_index = sigma_index;
  rec.trial_index = trial_index;
  try {
    rec.gamma = gamma_for(cfg, ctx, sigma);
    NormalStream stream(derive_stream_seed(cfg.base_seed, sigma_index, trial_index));
    const TorusSignal z = add_modulo_noise(ctx.h, sigma, stream);
    rec.mse_input = mse(z, ctx.h);
    for (Method m : cfg.methods) {
      if (m == Method::ucqp) {
        const auto sol = solve_ucqp(z, ctx.spectrum, rec.gamma);
        rec.mse_ucqp = mse(project_to_torus(sol.g_hat), ctx.h);
      } else {
        const auto sol = solve_trs(z, ctx.spectrum, rec.gamma);
        rec.mse_trs = mse(project_to_torus(sol.g_hat), ctx.h);
        rec.mu_star = sol.mu_star;
      }
    }
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << "trial failed (sigma index " << sigma_index << ", sigma " << sigma << ", trial "
        << trial_index << "): " << e.what();
    throw Error(e.kind(), msg.str());
  }
  return rec;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint32_t sigma_index,
                      std::uint32_t trial_index) {
  validate_config(cfg);
  if (sigma_index >= cfg.sigma_grid.size()) {
    throw Error(ErrorKind::parameter, "sigma index out of range");
  }
  return run_trial(cfg, make_context(cfg), cfg.sigma_grid[sigma_index], sigma_index,
                   trial_index);
}

// ---------------------------------------------------------------------------
// sweeps

const SweepRow& SweepResult::row(std::size_t sigma_index, std::string_view method) const {
  std::size_t seen = 0;
  double last_sigma = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    if (!(r.sigma == last_sigma)) {
      if (!std::isnan(last_sigma)) ++seen;
      last_sigma = r.sigma;
    }
    if (seen == sigma_index && r.method == method) return r;
  }
  throw Error(ErrorKind::parameter, "no sweep row for sigma index " +
                                        std::to_string(sigma_index) + " and method " +
                                        std::string(method));
}

int resolve_thread_count(int requested) {
  int threads = requested;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("MODDENOISE_THREADS")) {
      try {
        const long long cap = parse_integer(env);
        if (cap >= 1) threads = std::min<long long>(threads, cap);
      } catch (const Error&) {
        // ignore an unparsable value
      }
    }
  }
  return std::max(1, threads);
}

double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += values[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

namespace {

struct Moments {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  const double n = static_cast<double>(v.size());
  m.mean = pairwise_sum(v.data(), v.size()) / n;
  if (v.size() > 1) {
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - m.mean) * (v[i] - m.mean);
    const double var = pairwise_sum(dev.data(), dev.size()) / (n - 1.0);
    m.stderr_mean = std::sqrt(var / n);
  }
  return m;
}

}  // namespace

std::vector<SweepRow> aggregate(const ExperimentConfig& cfg, std::vector<TrialRecord> records) {
  std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return a.sigma_index != b.sigma_index ? a.sigma_index < b.sigma_index
                                          : a.trial_index < b.trial_index;
  });
  std::vector<SweepRow> rows;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    while (j < records.size() && records[j].sigma_index == records[i].sigma_index) ++j;
    std::vector<double> input, ucqp, trs, mu;
    for (std::size_t t = i; t < j; ++t) {
      input.push_back(records[t].mse_input);
      if (records[t].mse_ucqp) ucqp.push_back(*records[t].mse_ucqp);
      if (records[t].mse_trs) trs.push_back(*records[t].mse_trs);
      if (records[t].mu_star) mu.push_back(*records[t].mu_star);
    }
    const double sigma = records[i].sigma;
    const double gamma = records[i].gamma;
    const int count = static_cast<int>(j - i);
    auto push = [&](const char* method, const std::vector<double>& v,
                    std::optional<double> mu_mean) {
      const Moments m = moments(v);
      rows.push_back({sigma, method, m.mean, m.stderr_mean, mu_mean, count, gamma});
    };
    push("input", input, std::nullopt);
    for (Method m : cfg.methods) {
      if (m == Method::ucqp && !ucqp.empty()) push("ucqp", ucqp, std::nullopt);
      if (m == Method::trs && !trs.empty()) push("trs", trs, moments(mu).mean);
    }
    i = j;
  }
  return rows;
}

SweepResult sweep_sigma(const ExperimentConfig& cfg, const ExperimentContext& ctx,
                        const SweepOptions& options) {
  validate_config(cfg);
  const std::size_t per_sigma = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = cfg.sigma_grid.size() * per_sigma;
  std::vector<std::optional<TrialRecord>> slots(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::optional<Error> first_error;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const auto si = static_cast<std::uint32_t>(task / per_sigma);
      const auto ti = static_cast<std::uint32_t>(task % per_sigma);
      try {
        slots[task] = run_trial(cfg, ctx, cfg.sigma_grid[si], si, ti);
      } catch (const Error& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = e;
        failed = true;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = Error(ErrorKind::numerical, e.what());
        failed = true;
      }
    }
  };

  const int threads =
      static_cast<int>(std::min<std::size_t>(resolve_thread_count(options.threads), total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  for (auto& slot : slots) {
    if (slot) result.records.push_back(*slot);
  }
  if (first_error) {
    throw SweepError(first_error->kind(), first_error->what(), std::move(result.records));
  }
  result.rows = aggregate(cfg, result.records);
  return result;
}

SweepResult sweep_sigma(const ExperimentConfig& cfg, const SweepOptions& options) {
  validate_config(cfg);
  return sweep_sigma(cfg, make_context(cfg), options);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "# mse is the raw squared l2 distance ||u - h||_2^2, summed over all n entries\n";
  out << "sigma,method,mean_mse,stderr_mse,mean_mu_star,trials,gamma\n";
  for (const auto& r : rows) {
    out << format_double(r.sigma) << ',' << r.method << ',' << format_double(r.mean_mse) << ','
        << format_double(r.stderr_mse) << ','
        << (r.mean_mu_star ? format_double(*r.mean_mu_star) : std::string()) << ',' << r.trials
        << ',' << format_double(r.gamma) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const SweepResult& result) { return sweep_csv(result.rows); }

// ---------------------------------------------------------------------------
// verification

std::string_view to_string(Identity id) noexcept {
  switch (id) {
    case Identity::prop1_i: return "prop1_i";
    case Identity::prop1_ii: return "prop1_ii";
    case Identity::prop1_iii: return "prop1_iii";
    case Identity::prop1_iv: return "prop1_iv";
    case Identity::prop1_v: return "prop1_v";
    case Identity::input_error_bracket: return "input_error_bracket";
  }
  return "prop1_i";
}

std::string_view to_string(EventItem item) noexcept {
  switch (item) {
    case EventItem::prop2_ii: return "prop2_ii";
    case EventItem::prop2_iii: return "prop2_iii";
    case EventItem::prop2_iv: return "prop2_iv";
    case EventItem::lemma7: return "lemma7";
  }
  return "prop2_ii";
}

namespace {

ComplexVector random_unit_vector(int n, std::uint64_t seed) {
  NormalStream stream(seed);
  ComplexVector u(n);
  for (int i = 0; i < n; ++i) u(i) = {stream.normal(), stream.normal()};
  u /= u.norm();
  return u;
}

TorusSignal reference_signal(const FunctionSpec& f, int n, double amplitude) {
  return lift_to_torus(amplitude * sample_function(f, uniform_grid(n)));
}

}  // namespace

IdentityCheck verify_identity(Identity id, int n, double sigma, int trials, std::uint64_t seed) {
  if (trials < 2) throw Error(ErrorKind::parameter, "identity check needs at least 2 trials");
  if (!(sigma >= 0.0)) throw Error(ErrorKind::parameter, "sigma must be >= 0");
  const TorusSignal h = reference_signal(FunctionSpec::f1(), n, 1.0);
  const ComplexVector& hv = h.values();
  const double s2 = kPi * kPi * sigma * sigma;
  const double e2 = std::exp(-2.0 * s2);
  const double e4 = std::exp(-4.0 * s2);
  const double nd = n;
  const ComplexVector u = random_unit_vector(n, derive_stream_seed(seed, 0xFFFFFFFFu, 0));

  IdentityCheck out;
  switch (id) {
    case Identity::prop1_i: out.theoretical = e2; break;
    case Identity::prop1_ii: out.theoretical = 1.0 - e4; break;
    case Identity::prop1_iii: out.theoretical = e4 * std::norm(u.dot(hv)) + 1.0 - e4; break;
    case Identity::prop1_iv: out.theoretical = nd * (1.0 - e4); break;
    case Identity::prop1_v: out.theoretical = 2.0 * nd * (1.0 - e2); break;
    case Identity::input_error_bracket:
      out.lower = 2.0 * s2 * nd;
      out.upper = 4.0 * s2 * nd;
      out.theoretical = 0.5 * (out.lower + out.upper);
      break;
  }
  if (id != Identity::input_error_bracket) out.lower = out.upper = out.theoretical;

  std::vector<double> stats(trials);
  for (int t = 0; t < trials; ++t) {
    NormalStream stream(derive_stream_seed(seed, 0, static_cast<std::uint32_t>(t)));
    const ComplexVector z = add_modulo_noise(h, sigma, stream).values();
    double s = 0.0;
    switch (id) {
      case Identity::prop1_i: s = hv.dot(z).real() / nd; break;
      case Identity::prop1_ii: s = std::norm(u.dot(z - e2 * hv)); break;
      case Identity::prop1_iii: s = std::norm(u.dot(z)); break;
      case Identity::prop1_iv: s = (z - e2 * hv).squaredNorm(); break;
      case Identity::prop1_v:
      case Identity::input_error_bracket: s = (z - hv).squaredNorm(); break;
    }
    stats[t] = s;
  }
  const Moments m = moments(stats);
  out.empirical = m.mean;
  out.stderr_mean = m.stderr_mean;
  const double gap = out.empirical < out.lower   ? out.lower - out.empirical
                     : out.empirical > out.upper ? out.empirical - out.upper
                                                 : 0.0;
  // round-off in the statistic itself is not a discrepancy
  if (gap <= 1e-12 * std::max(1.0, std::abs(out.theoretical))) {
    out.z_score = 0.0;
  } else {
    out.z_score = out.stderr_mean > 0.0 ? gap / out.stderr_mean
                                        : std::numeric_limits<double>::infinity();
  }
  return out;
}

EventCheck verify_event_bound(EventItem item, const EventParams& p, int trials,
                              std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::parameter, "event check needs at least 1 trial");
  const Graph g = build_graph(p.family, p.n);
  const TorusSignal h = reference_signal(p.function, p.n, p.amplitude);
  const ComplexVector& hv = h.values();
  const double nd = p.n;
  const double e2 = std::exp(-2.0 * kPi * kPi * p.sigma * p.sigma);

  std::optional<SpectralDecomposition> spec;
  if (item == EventItem::prop2_ii || item == EventItem::lemma7) spec = spectral_decomposition(g);

  EventCheck out;
  out.trials = trials;
  double threshold = 0.0;
  double gamma = 0.0;
  Eigen::MatrixXd U;
  switch (item) {
    case EventItem::prop2_ii: {
      if (p.k < 1 || p.k > p.n) throw Error(ErrorKind::parameter, "k must lie in [1, n]");
      U = spec->eigenvectors().rightCols(p.k);
      const auto rhs = concentration_rhs(ConcentrationItem::ii, p.n, p.sigma, p.k);
      threshold = rhs.threshold;
      out.stated_probability = rhs.failure_probability;
      break;
    }
    case EventItem::prop2_iii:
    case EventItem::prop2_iv: {
      const auto rhs = concentration_rhs(
          item == EventItem::prop2_iii ? ConcentrationItem::iii : ConcentrationItem::iv, p.n,
          p.sigma);
      threshold = rhs.threshold;
      out.stated_probability = rhs.failure_probability;
      break;
    }
    case EventItem::lemma7: {
      BoundQuery q = query_from_spectrum(*spec, p.lambda_bar.value_or(spec->lambda_max()), p.k,
                                         p.family);
      q.B_n = smoothness(h, g);
      q.sigma = p.sigma;
      gamma = p.sigma == 0.0 ? 0.0 : gamma_rule(GammaRule::lemma2, q);
      out.mu_bound = mu_star_lower_bound(q, gamma);
      threshold = out.mu_bound->value;
      out.stated_probability = 4.0 / (nd * nd);
      break;
    }
  }

  out.min_mu_star = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    NormalStream stream(derive_stream_seed(seed, 0, static_cast<std::uint32_t>(t)));
    const TorusSignal z = add_modulo_noise(h, p.sigma, stream);
    bool violated = false;
    switch (item) {
      case EventItem::prop2_ii: {
        const ComplexVector w = z.values() - e2 * hv;
        const double x = (U.transpose() * w.real()).squaredNorm() +
                         (U.transpose() * w.imag()).squaredNorm();
        violated = x > threshold;
        break;
      }
      case EventItem::prop2_iii:
        violated = (z.values() - hv).squaredNorm() > threshold;
        break;
      case EventItem::prop2_iv:
        violated = (z.values() - e2 * hv).squaredNorm() > threshold;
        break;
      case EventItem::lemma7: {
        const double mu = solve_trs(z, *spec, gamma).mu_star;
        out.min_mu_star = std::min(out.min_mu_star, mu);
        violated = mu < threshold;
        break;
      }
    }
    if (violated) ++out.violations;
  }
  out.frequency = static_cast<double>(out.violations) / trials;
  const double pp = out.stated_probability;
  out.stderr_binomial = std::sqrt(pp * (1.0 - pp) / trials);
  return out;
}

}  // namespace moddenoise

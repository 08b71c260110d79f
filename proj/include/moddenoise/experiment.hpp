#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moddenoise/bounds.hpp"
#include "moddenoise/errors.hpp"
#include "moddenoise/graph.hpp"
#include "moddenoise/signal.hpp"
#include "moddenoise/solvers.hpp"
#include "moddenoise/spectral.hpp"

namespace moddenoise {

/// How gamma is chosen at each sigma.
struct GammaSpec {
  enum class Kind { path_caption, path_lipschitz, linear, fixed, lemma2 };
  Kind kind = Kind::path_caption;
  /// Slope for `linear`, the value itself for `fixed`.
  double c = 0.0;
  /// Cutoff for `lemma2`; defaults to lambda_1 of the graph.
  std::optional<double> lambda_bar;
};

std::string to_string(const GammaSpec& g);
/// "path-caption", "path-lipschitz", "lemma2", "linear:C" or "fixed:G".
GammaSpec parse_gamma_spec(std::string_view text);

struct ExperimentConfig {
  int n = 500;
  FunctionSpec function = FunctionSpec::f1();
  GraphFamily graph_family = GraphFamily::path;
  std::vector<double> sigma_grid;
  int trials = 30;
  GammaSpec gamma;
  std::uint64_t base_seed = 1;
  std::vector<Method> methods{Method::ucqp, Method::trs};
};

/// Throws ErrorKind::validation unless trials >= 1, n >= 2, the sigma grid is
/// nonempty, nonnegative and strictly increasing, and methods is nonempty.
void validate_config(const ExperimentConfig& cfg);

/// JSON form. The sigma grid may be read either as an explicit array or as
/// {"log_from": a, "log_to": b, "per_decade": m}; it is always written as
/// an explicit array so a written file replays exactly.
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(std::string_view text);

/// a, a 10^{1/m}, a 10^{2/m}, ... up to b, with b appended when the last
/// step falls short of it.
std::vector<double> log_grid(double from, double to, int per_decade = 12);

/// Per-config state shared read-only by every trial.
struct ExperimentContext {
  Graph graph;
  SpectralDecomposition spectrum;
  Eigen::VectorXd grid;
  Eigen::VectorXd samples;
  TorusSignal h;
  /// h* L h of the ground truth.
  double smoothness = 0.0;
};

ExperimentContext make_context(const ExperimentConfig& cfg);

double gamma_for(const ExperimentConfig& cfg, const ExperimentContext& ctx, double sigma);

struct TrialRecord {
  double sigma = 0.0;
  std::uint32_t sigma_index = 0;
  std::uint32_t trial_index = 0;
  double gamma = 0.0;
  double mse_input = 0.0;
  std::optional<double> mse_ucqp;
  std::optional<double> mse_trs;
  std::optional<double> mu_star;
};

/// One noise draw at `sigma`, seeded from (base_seed, sigma_index, trial_index).
TrialRecord run_trial(const ExperimentConfig& cfg, const ExperimentContext& ctx, double sigma,
                      std::uint32_t sigma_index, std::uint32_t trial_index);
/// Same, with sigma = cfg.sigma_grid[sigma_index] and a freshly built context.
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint32_t sigma_index,
                      std::uint32_t trial_index);

struct SweepRow {
  double sigma = 0.0;
  std::string method;  // input, ucqp or trs
  double mean_mse = 0.0;
  double stderr_mse = 0.0;
  std::optional<double> mean_mu_star;
  int trials = 0;
  double gamma = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<TrialRecord> records;

  /// Row for (sigma index, method); throws if absent.
  const SweepRow& row(std::size_t sigma_index, std::string_view method) const;
};

/// Thrown when a trial fails mid-sweep. Carries the records that finished.
class SweepError : public Error {
 public:
  SweepError(ErrorKind kind, const std::string& what, std::vector<TrialRecord> partial)
      : Error(kind, what), partial_(std::move(partial)) {}

  const std::vector<TrialRecord>& partial() const noexcept { return partial_; }

 private:
  std::vector<TrialRecord> partial_;
};

struct SweepOptions {
  /// 0 means: MODDENOISE_THREADS if set, else hardware concurrency.
  int threads = 0;
};

int resolve_thread_count(int requested);

SweepResult sweep_sigma(const ExperimentConfig& cfg, const SweepOptions& options = {});
SweepResult sweep_sigma(const ExperimentConfig& cfg, const ExperimentContext& ctx,
                        const SweepOptions& options = {});

/// Aggregates records into rows. Records are sorted by (sigma index, trial
/// index) first, so the result does not depend on the order they arrive in.
std::vector<SweepRow> aggregate(const ExperimentConfig& cfg, std::vector<TrialRecord> records);

/// Pairwise (cascade) summation.
double pairwise_sum(const double* values, std::size_t count);

/// CSV `sigma,method,mean_mse,stderr_mse,mean_mu_star,trials,gamma`, preceded
/// by a comment line describing the MSE normalization.
std::string sweep_csv(const SweepResult& result);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// Monte-Carlo verification

enum class Identity { prop1_i, prop1_ii, prop1_iii, prop1_iv, prop1_v, input_error_bracket };

std::string_view to_string(Identity id) noexcept;

struct IdentityCheck {
  double empirical = 0.0;
  /// Closed form; for input_error_bracket the midpoint of [lower, upper].
  double theoretical = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double stderr_mean = 0.0;
  /// Distance from the empirical mean to [lower, upper] in standard errors
  /// (0 when inside, or off by round-off only).
  double z_score = 0.0;
};

/// Monte-Carlo check of an expectation identity with h lifted from f1 on a
/// uniform grid of n points. Statistics:
///   prop1_i:             Re<z, h>/n          -> e2
///   prop1_ii:            |<z - e2 h, u>|^2    -> 1 - e4
///   prop1_iii:           |<z, u>|^2           -> e4 |<h, u>|^2 + 1 - e4
///   prop1_iv:            ||z - e2 h||^2       -> n (1 - e4)
///   prop1_v:             ||z - h||^2          -> 2 n (1 - e2)
///   input_error_bracket: ||z - h||^2          in [2 pi^2 sigma^2 n, 4 pi^2 sigma^2 n]
/// u is a random complex unit vector drawn once per call from the seed.
IdentityCheck verify_identity(Identity id, int n, double sigma, int trials, std::uint64_t seed);

enum class EventItem { prop2_ii, prop2_iii, prop2_iv, lemma7 };

std::string_view to_string(EventItem item) noexcept;

struct EventParams {
  int n = 200;
  double sigma = 0.1;
  GraphFamily family = GraphFamily::path;
  FunctionSpec function = FunctionSpec::f1();
  /// Width of U for prop2_ii (the k lowest-frequency eigenvectors, q_n
  /// included); gap index for lemma7.
  int k = 1;
  /// Cutoff for the lemma2 gamma used by lemma7; defaults to lambda_1.
  std::optional<double> lambda_bar;
  /// Multiplies the function samples before lifting, to tune B_n.
  double amplitude = 1.0;
};

struct EventCheck {
  int trials = 0;
  int violations = 0;
  double frequency = 0.0;
  /// Failure probability the statement allows.
  double stated_probability = 0.0;
  /// sqrt(p (1 - p) / trials) with p = stated_probability.
  double stderr_binomial = 0.0;
  /// For lemma7: the bound value, whether its four conditions hold, and the
  /// smallest mu* seen.
  std::optional<MuStarBound> mu_bound;
  double min_mu_star = 0.0;

  /// frequency <= stated_probability + 3 stderr.
  bool within_budget() const {
    return frequency <= stated_probability + 3.0 * stderr_binomial;
  }
};

EventCheck verify_event_bound(EventItem item, const EventParams& params, int trials,
                              std::uint64_t seed);

}  // namespace moddenoise

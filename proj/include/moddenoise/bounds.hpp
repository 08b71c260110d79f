#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "moddenoise/graph.hpp"
#include "moddenoise/spectral.hpp"

namespace moddenoise {

/// Scalars consumed by the bound evaluators and condition checkers. Fields
/// are optional so a checker can report exactly which one it is missing.
///
/// k is the spectral gap index: lambda_{n-k+1} < lambda_{n-k} must hold.
/// For k = 1 that is lambda_n = 0 < lambda_min, true on any connected graph.
struct BoundQuery {
  std::optional<std::int64_t> n;
  std::optional<double> delta;
  std::optional<double> B_n;
  std::optional<double> sigma;
  std::optional<double> lambda_bar;
  std::optional<double> lambda_min;
  std::optional<double> lambda_1;
  std::optional<std::int64_t> L_size;
  std::optional<double> epsilon;
  std::optional<std::int64_t> k;
  std::optional<double> lambda_n_minus_k;
  std::optional<double> lambda_n_minus_k_plus_1;
  std::optional<double> M;
  std::optional<double> theta;
  GraphFamily family = GraphFamily::custom;
  /// Multiplier used for order-level (suppressed-constant) conditions:
  /// "a <~ b" is checked as a <= order_constant * b.
  double order_constant = 1.0;
};

/// Fills n, delta, lambda_min, lambda_1, lambda_bar and |L_lambda_bar| from a
/// decomposition; with k, also lambda_{n-k} and lambda_{n-k+1}.
BoundQuery query_from_spectrum(const SpectralDecomposition& spec, double lambda_bar,
                               std::optional<int> k = std::nullopt,
                               GraphFamily family = GraphFamily::custom);

/// Throws ErrorKind::parameter for epsilon outside (0, 1), theta outside
/// [0, 1), or a k that is not a gap index ("invalid gap index").
void validate_query(const BoundQuery& q);

// ---------------------------------------------------------------------------
// gamma rules

enum class GammaRule {
  lemma2,         // (4 pi^2 sigma^2 n / (Delta B_n lambda_bar^2))^{1/4}
  path_lipschitz, // (sigma^2 n^{10/3} / M^2)^{1/4}
  path_caption,   // (sigma^2 n^{10/3})^{1/4}, the same rule with M dropped
  linear,         // c * sigma
};

std::string_view to_string(GammaRule rule) noexcept;

double gamma_rule(GammaRule rule, const BoundQuery& q, double c = 0.0);

// ---------------------------------------------------------------------------
// error bounds

struct UcqpExpectedBound {
  /// 16 Delta gamma^2 B_n / (1 + gamma lambda_min)^2
  ///   + 64 pi^2 sigma^2 (1 + |L| / (1 + gamma lambda_min)^2 + n / (1 + gamma lambda_bar)^2)
  double general = 0.0;
  /// 64 pi (sigma / lambda_bar sqrt(Delta B_n n) + pi sigma^2 (1 + |L|))
  double simplified = 0.0;
  /// gamma agrees with the lemma2 rule to 1e-12 relative.
  bool gamma_is_lemma2 = false;
  /// sigma <= 1/(2 pi), the range where the simplified form is valid.
  bool sigma_in_domain = false;
};

UcqpExpectedBound ucqp_expected_bound(const BoundQuery& q, double gamma);

struct FlaggedBound {
  double value = 0.0;
  bool in_domain = false;
};

/// 72 pi sigma sqrt(Delta B_n n) / lambda_bar
///   + 99040 sigma^2 (1 + |L| + sqrt((1 + |L|) log n)) + 65536 log n,
/// flagged with 72 log n / (pi sqrt(n)) <= sigma <= 1 / (2 sqrt(2) pi).
FlaggedBound ucqp_highprob_bound(const BoundQuery& q, double gamma);

inline constexpr double kC1 = 288.0 * std::numbers::pi;
inline constexpr double kC2 = 396160.0;
inline constexpr double kC3 = 230400.0;
inline constexpr double kC4 = 262144.0;
inline constexpr double kC5 = 144.0;

/// C1 (sigma / lambda_bar) (sqrt(Delta B_n n) + n^{3/2} lambda_{n-k+1}^2 / sqrt(Delta B_n))
///   + C2 sigma^2 (1 + |L| + sqrt((1 + |L|) log n)) + C3 sigma^4 n + C4 log n
///   + C5 B_n^2 / (n lambda_{n-k}^2)
double trs_highprob_bound(const BoundQuery& q, double gamma);

/// The k = 1 specialization written out separately, in terms of lambda_min:
/// C1 (sigma / lambda_bar) sqrt(Delta B_n n) + C2 sigma^2 (...) + C3 sigma^4 n
///   + C4 log n + C5 B_n^2 / (n lambda_min^2)
double trs_highprob_bound_k1(const BoundQuery& q, double gamma);

// ---------------------------------------------------------------------------
// condition reports

struct Condition {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string citation;
  bool ok = false;
  bool order_level = false;
};

struct ConditionReport {
  std::string theorem;
  std::vector<Condition> conditions;

  bool satisfied() const;
  std::vector<Condition> failed_conditions() const;
  /// One line per condition plus a verdict line.
  std::string to_text() const;
};

/// 2 (1 - (B_n / (n lambda_{n-k}) + 4 pi^2 sigma^2 + 24760 log n / sqrt(n)
///   + gamma lambda_{n-k+1})), plus the four conditions that guarantee it.
struct MuStarBound {
  double value = 0.0;
  bool conditions_hold = false;
  ConditionReport conditions;
};

MuStarBound mu_star_lower_bound(const BoundQuery& q, double gamma);

// ---------------------------------------------------------------------------
// concentration right-hand sides

enum class ConcentrationItem { i, ii, iii, iv };

/// Each event compares a random quantity X with `threshold`:
///   i:   X = z* U U^T z,                  event X >= mean - deviation
///   ii:  X = (z - e2 h)* U U^T (z - e2 h), event X <= mean + deviation
///   iii: X = ||z - h||^2,                 event X - mean <= deviation
///   iv:  X = ||z - e2 h||^2,              event X - mean <= deviation
/// with eX = exp(-X pi^2 sigma^2). Items iii and iv also hold with the sign
/// of the deviation reversed.
struct ConcentrationRhs {
  double mean = 0.0;
  double deviation = 0.0;
  double threshold = 0.0;
  /// Failure probability the statement allows (per tail).
  double failure_probability = 0.0;
};

ConcentrationRhs concentration_rhs(ConcentrationItem item, std::int64_t n, double sigma, std::int64_t k = 0,
                                   double h_proj_inf = 0.0, double h_proj_2 = 0.0);

/// Simplified forms, valid for sigma <= 1/(2 sqrt(2) pi):
///   (z - zbar)* U U^T (z - zbar) <= 6190 sigma^2 (sqrt((1+|L|) log n) + 1 + |L|) + 4096 log n
///   ||z - zbar||^2 <= 5 pi^2 sigma^2 n
///   ||z - h||^2 >= pi^2 sigma^2 n
/// (the last two also need sigma >= 72 log n / (pi sqrt(n))).
struct SimplifiedConcentration {
  double projected_upper = 0.0;
  double centered_upper = 0.0;
  double distance_lower = 0.0;
  bool in_domain = false;
};

SimplifiedConcentration simplified_concentration(std::int64_t n, double sigma, std::int64_t L_size);

// ---------------------------------------------------------------------------
// denoising conditions

enum class Theorem { thm2, thm6, thm8, cor1, cor2, cor3, cor5, cor6, cor7 };

std::string_view to_string(Theorem theorem) noexcept;
/// Accepts the aliases thm3 (= thm6) and thm4 (= thm8).
Theorem parse_theorem(std::string_view name);

ConditionReport check_denoising_conditions(Theorem theorem, const BoundQuery& q);

// ---------------------------------------------------------------------------
// bound curves

enum class BoundKind { ucqp_expected, ucqp_general, ucqp_highprob, trs_highprob };

std::string_view to_string(BoundKind kind) noexcept;
BoundKind parse_bound_kind(std::string_view name);

/// CSV `sigma,bound_value,condition_ok` with gamma from the lemma2 rule at
/// each sigma (0 when sigma = 0). condition_ok is the sigma-domain flag of
/// the chosen bound (1 or 0).
std::string bound_curve_csv(const BoundQuery& q, const std::vector<double>& sigmas,
                            BoundKind kind);

}  // namespace moddenoise

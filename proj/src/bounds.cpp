#include "moddenoise/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "detail/query_access.hpp"
#include "moddenoise/errors.hpp"
#include "moddenoise/io.hpp"

namespace moddenoise {

namespace {

constexpr double kPi = std::numbers::pi;

double log_n(std::int64_t n) { return std::log(static_cast<double>(n)); }

double set_term(std::int64_t L_size, std::int64_t n) {
  const double s = 1.0 + L_size;
  return s + std::sqrt(s * log_n(n));
}

}  // namespace

namespace detail {

void check_gap(const BoundQuery& q, std::string_view context) {
  const double upper = need(q.lambda_n_minus_k, "lambda_n_minus_k", context);
  const double lower = need(q.lambda_n_minus_k_plus_1, "lambda_n_minus_k_plus_1", context);
  std::ostringstream msg;
  if (q.k) {
    const std::int64_t k = *q.k;
    if (k < 1 || (q.n && k > *q.n - 1)) {
      msg << "invalid gap index k=" << k << ": need 1 <= k <= n-1";
      throw Error(ErrorKind::parameter, msg.str());
    }
  }
  if (!(lower < upper) || !(upper > 0.0) || lower < 0.0) {
    msg << "invalid gap index";
    if (q.k) msg << " k=" << *q.k;
    msg << ": need 0 <= lambda_{n-k+1} < lambda_{n-k}, got " << lower << " and " << upper;
    throw Error(ErrorKind::parameter, msg.str());
  }
}

}  // namespace detail

using detail::need;

BoundQuery query_from_spectrum(const SpectralDecomposition& spec, double lambda_bar,
                               std::optional<int> k, GraphFamily family) {
  BoundQuery q;
  const int n = spec.size();
  q.n = n;
  q.delta = spec.max_degree();
  q.lambda_min = spec.lambda_min();
  q.lambda_1 = spec.lambda_max();
  q.lambda_bar = lambda_bar;
  q.L_size = spectral_sets(spec, lambda_bar).low_size();
  q.family = family;
  if (k) {
    if (*k < 1 || *k > n - 1) {
      throw Error(ErrorKind::parameter, "invalid gap index k=" + std::to_string(*k) +
                                            ": need 1 <= k <= n-1");
    }
    q.k = *k;
    q.lambda_n_minus_k = spec.lambda(n - *k);
    q.lambda_n_minus_k_plus_1 = spec.lambda(n - *k + 1);
    detail::check_gap(q, "spectral query");
  }
  return q;
}

void validate_query(const BoundQuery& q) {
  if (q.epsilon && !(*q.epsilon > 0.0 && *q.epsilon < 1.0)) {
    std::ostringstream msg;
    msg << "epsilon must lie in (0, 1), got " << *q.epsilon;
    throw Error(ErrorKind::parameter, msg.str());
  }
  if (q.theta && !(*q.theta >= 0.0 && *q.theta < 1.0)) {
    std::ostringstream msg;
    msg << "theta must lie in [0, 1), got " << *q.theta;
    throw Error(ErrorKind::parameter, msg.str());
  }
  if (q.n && *q.n < 2) throw Error(ErrorKind::parameter, "n must be at least 2");
  if (q.sigma && !(*q.sigma >= 0.0)) throw Error(ErrorKind::parameter, "sigma must be >= 0");
  if (q.B_n && !(*q.B_n >= 0.0)) throw Error(ErrorKind::parameter, "B_n must be >= 0");
  if (q.L_size && *q.L_size < 0) throw Error(ErrorKind::parameter, "L_size must be >= 0");
  if (q.M && !(*q.M > 0.0)) throw Error(ErrorKind::parameter, "M must be positive");
  if (!(q.order_constant > 0.0)) {
    throw Error(ErrorKind::parameter, "order_constant must be positive");
  }
  if (q.k || q.lambda_n_minus_k || q.lambda_n_minus_k_plus_1) detail::check_gap(q, "query");
}

std::string_view to_string(GammaRule rule) noexcept {
  switch (rule) {
    case GammaRule::lemma2: return "lemma2";
    case GammaRule::path_lipschitz: return "path-lipschitz";
    case GammaRule::path_caption: return "path-caption";
    case GammaRule::linear: return "linear";
  }
  return "linear";
}

double gamma_rule(GammaRule rule, const BoundQuery& q, double c) {
  constexpr std::string_view ctx = "gamma rule";
  const double sigma = MD_NEED(q, sigma, ctx);
  if (!(sigma >= 0.0)) throw Error(ErrorKind::parameter, "sigma must be >= 0");
  switch (rule) {
    case GammaRule::lemma2: {
      const double n = MD_NEED(q, n, ctx);
      const double delta = MD_NEED(q, delta, ctx);
      const double b = MD_NEED(q, B_n, ctx);
      const double lb = MD_NEED(q, lambda_bar, ctx);
      if (!(b > 0.0) || !(delta > 0.0) || !(lb > 0.0)) {
        throw Error(ErrorKind::domain,
                    "lemma2 gamma rule divides by Delta B_n lambda_bar^2, which is zero");
      }
      return std::pow(4.0 * kPi * kPi * sigma * sigma * n / (delta * b * lb * lb), 0.25);
    }
    case GammaRule::path_lipschitz: {
      const double n = MD_NEED(q, n, ctx);
      const double m = MD_NEED(q, M, ctx);
      if (!(m > 0.0)) throw Error(ErrorKind::parameter, "M must be positive");
      return std::pow(sigma * sigma * std::pow(n, 10.0 / 3.0) / (m * m), 0.25);
    }
    case GammaRule::path_caption: {
      const double n = MD_NEED(q, n, ctx);
      return std::pow(sigma * sigma * std::pow(n, 10.0 / 3.0), 0.25);
    }
    case GammaRule::linear:
      if (!(c > 0.0)) throw Error(ErrorKind::parameter, "linear gamma rule needs c > 0");
      return c * sigma;
  }
  return 0.0;
}

UcqpExpectedBound ucqp_expected_bound(const BoundQuery& q, double gamma) {
  constexpr std::string_view ctx = "ucqp expected bound";
  const double n = MD_NEED(q, n, ctx);
  const double delta = MD_NEED(q, delta, ctx);
  const double b = MD_NEED(q, B_n, ctx);
  const double sigma = MD_NEED(q, sigma, ctx);
  const double lb = MD_NEED(q, lambda_bar, ctx);
  const double lmin = MD_NEED(q, lambda_min, ctx);
  const double ls = MD_NEED(q, L_size, ctx);
  if (!(gamma >= 0.0)) throw Error(ErrorKind::parameter, "gamma must be >= 0");
  if (!(lb > 0.0)) throw Error(ErrorKind::domain, "lambda_bar must be positive");

  UcqpExpectedBound out;
  const double a = 1.0 + gamma * lmin;
  const double c = 1.0 + gamma * lb;
  out.general = 16.0 * delta * gamma * gamma * b / (a * a) +
                64.0 * kPi * kPi * sigma * sigma * (1.0 + ls / (a * a) + n / (c * c));
  out.simplified =
      64.0 * kPi * (sigma / lb * std::sqrt(delta * b * n) + kPi * sigma * sigma * (1.0 + ls));
  out.sigma_in_domain = sigma <= 1.0 / (2.0 * kPi);
  if (b > 0.0 && delta > 0.0) {
    const double g2 = gamma_rule(GammaRule::lemma2, q);
    out.gamma_is_lemma2 = std::abs(g2 - gamma) <= 1e-12 * std::max(1.0, std::abs(g2));
  }
  return out;
}

FlaggedBound ucqp_highprob_bound(const BoundQuery& q, double /*gamma*/) {
  constexpr std::string_view ctx = "ucqp high-probability bound";
  const std::int64_t n = MD_NEED(q, n, ctx);
  const double delta = MD_NEED(q, delta, ctx);
  const double b = MD_NEED(q, B_n, ctx);
  const double sigma = MD_NEED(q, sigma, ctx);
  const double lb = MD_NEED(q, lambda_bar, ctx);
  const std::int64_t ls = MD_NEED(q, L_size, ctx);
  if (!(lb > 0.0)) throw Error(ErrorKind::domain, "lambda_bar must be positive");
  FlaggedBound out;
  out.value = 72.0 * kPi * sigma * std::sqrt(delta * b * n) / lb +
              99040.0 * sigma * sigma * set_term(ls, n) + 65536.0 * log_n(n);
  out.in_domain = 72.0 * log_n(n) / (kPi * std::sqrt(static_cast<double>(n))) <= sigma &&
                  sigma <= 1.0 / (2.0 * std::sqrt(2.0) * kPi);
  return out;
}

double trs_highprob_bound(const BoundQuery& q, double /*gamma*/) {
  constexpr std::string_view ctx = "trs high-probability bound";
  detail::check_gap(q, ctx);
  const std::int64_t n = MD_NEED(q, n, ctx);
  const double delta = MD_NEED(q, delta, ctx);
  const double b = MD_NEED(q, B_n, ctx);
  const double sigma = MD_NEED(q, sigma, ctx);
  const double lb = MD_NEED(q, lambda_bar, ctx);
  const std::int64_t ls = MD_NEED(q, L_size, ctx);
  const double upper = *q.lambda_n_minus_k;
  const double lower = *q.lambda_n_minus_k_plus_1;
  if (!(b > 0.0) || !(delta > 0.0)) {
    throw Error(ErrorKind::domain, "trs bound divides by sqrt(Delta B_n), which is zero");
  }
  if (!(lb > 0.0)) throw Error(ErrorKind::domain, "lambda_bar must be positive");
  const double nd = n;
  const double s2 = sigma * sigma;
  return kC1 * (sigma / lb) *
             (std::sqrt(delta * b * nd) + std::pow(nd, 1.5) * lower * lower / std::sqrt(delta * b)) +
         kC2 * s2 * set_term(ls, n) + kC3 * s2 * s2 * nd + kC4 * log_n(n) +
         kC5 * b * b / (nd * upper * upper);
}

double trs_highprob_bound_k1(const BoundQuery& q, double /*gamma*/) {
  constexpr std::string_view ctx = "trs high-probability bound (k = 1)";
  const std::int64_t n = MD_NEED(q, n, ctx);
  const double delta = MD_NEED(q, delta, ctx);
  const double b = MD_NEED(q, B_n, ctx);
  const double sigma = MD_NEED(q, sigma, ctx);
  const double lb = MD_NEED(q, lambda_bar, ctx);
  const std::int64_t ls = MD_NEED(q, L_size, ctx);
  const double lmin = MD_NEED(q, lambda_min, ctx);
  if (!(b > 0.0) || !(delta > 0.0)) {
    throw Error(ErrorKind::domain, "trs bound divides by sqrt(Delta B_n), which is zero");
  }
  if (!(lb > 0.0) || !(lmin > 0.0)) {
    throw Error(ErrorKind::domain, "lambda_bar and lambda_min must be positive");
  }
  const double nd = n;
  const double s2 = sigma * sigma;
  return kC1 * (sigma / lb) * std::sqrt(delta * b * nd) + kC2 * s2 * set_term(ls, n) +
         kC3 * s2 * s2 * nd + kC4 * log_n(n) + kC5 * b * b / (nd * lmin * lmin);
}

MuStarBound mu_star_lower_bound(const BoundQuery& q, double gamma) {
  constexpr std::string_view ctx = "mu* lower bound";
  detail::check_gap(q, ctx);
  const std::int64_t n = MD_NEED(q, n, ctx);
  const double b = MD_NEED(q, B_n, ctx);
  const double sigma = MD_NEED(q, sigma, ctx);
  const double upper = *q.lambda_n_minus_k;
  const double lower = *q.lambda_n_minus_k_plus_1;
  if (!(gamma >= 0.0)) throw Error(ErrorKind::parameter, "gamma must be >= 0");

  const double nd = n;
  const double t_smooth = b / (nd * upper);
  const double t_noise = 4.0 * kPi * kPi * sigma * sigma;
  const double t_conc = 24760.0 * log_n(n) / std::sqrt(nd);
  const double t_gap = gamma * lower;

  MuStarBound out;
  out.value = 2.0 * (1.0 - (t_smooth + t_noise + t_conc + t_gap));
  auto& c = out.conditions;
  c.theorem = "mu-star-lower-bound";
  auto add = [&](std::string name, double lhs, double rhs) {
    c.conditions.push_back({std::move(name), lhs, rhs, "mu-star", lhs <= rhs, false});
  };
  add("B_n/lambda_{n-k} <= n/12", b / upper, nd / 12.0);
  add("sigma^2 <= 1/(48 pi^2)", sigma * sigma, 1.0 / (48.0 * kPi * kPi));
  add("24760 log n/sqrt(n) <= 1/12", t_conc, 1.0 / 12.0);
  add("gamma lambda_{n-k+1} <= 1/4", t_gap, 0.25);
  out.conditions_hold = c.satisfied();
  return out;
}

ConcentrationRhs concentration_rhs(ConcentrationItem item, std::int64_t n, double sigma, std::int64_t k,
                                   double h_proj_inf, double h_proj_2) {
  if (n < 2) throw Error(ErrorKind::parameter, "n must be at least 2");
  if (!(sigma >= 0.0)) throw Error(ErrorKind::parameter, "sigma must be >= 0");
  if (k < 0 || h_proj_inf < 0.0 || h_proj_2 < 0.0) {
    throw Error(ErrorKind::parameter, "k and the projection norms must be nonnegative");
  }
  const double s2 = kPi * kPi * sigma * sigma;
  const double e2 = std::exp(-2.0 * s2);
  const double e4 = std::exp(-4.0 * s2);
  const double e8 = std::exp(-8.0 * s2);
  const double L = log_n(n);
  const double nd = n;
  const double n2 = nd * nd;

  ConcentrationRhs out;
  switch (item) {
    case ConcentrationItem::i:
      out.mean = k * (1.0 - e4) + e4 * h_proj_2 * h_proj_2;
      out.deviation = 4096.0 * L + 32.0 * std::sqrt(6.0 * k) * (1.0 - e8) * std::sqrt(L) +
                      11.0 * L * (h_proj_inf + std::sqrt(1.0 - e8) * h_proj_2);
      out.threshold = out.mean - out.deviation;
      out.failure_probability = 4.0 / n2;
      break;
    case ConcentrationItem::ii:
      out.mean = k * (1.0 - e4);
      out.deviation = 4096.0 * L + 32.0 * std::sqrt(6.0 * k) * (1.0 - e8) * std::sqrt(L);
      out.threshold = out.mean + out.deviation;
      out.failure_probability = 2.0 / n2;
      break;
    case ConcentrationItem::iii:
    case ConcentrationItem::iv:
      out.mean = item == ConcentrationItem::iii ? 2.0 * nd * (1.0 - e2) : nd * (1.0 - e4);
      out.deviation = 3.0 * L * (2.0 + std::sqrt(4.0 + 9.0 * (1.0 - e8) * nd));
      out.threshold = out.mean + out.deviation;
      out.failure_probability = 2.0 / n2;
      break;
  }
  return out;
}

SimplifiedConcentration simplified_concentration(std::int64_t n, double sigma, std::int64_t L_size) {
  if (n < 2) throw Error(ErrorKind::parameter, "n must be at least 2");
  const double nd = n;
  const double L = log_n(n);
  SimplifiedConcentration out;
  out.projected_upper = 6190.0 * sigma * sigma * set_term(L_size, n) + 4096.0 * L;
  out.centered_upper = 5.0 * kPi * kPi * sigma * sigma * nd;
  out.distance_lower = kPi * kPi * sigma * sigma * nd;
  out.in_domain = 72.0 * L / (kPi * std::sqrt(nd)) <= sigma &&
                  sigma <= 1.0 / (2.0 * std::sqrt(2.0) * kPi);
  return out;
}

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::ucqp_expected: return "ucqp-expected";
    case BoundKind::ucqp_general: return "ucqp-general";
    case BoundKind::ucqp_highprob: return "ucqp-highprob";
    case BoundKind::trs_highprob: return "trs-highprob";
  }
  return "ucqp-highprob";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (auto kind : {BoundKind::ucqp_expected, BoundKind::ucqp_general, BoundKind::ucqp_highprob,
                    BoundKind::trs_highprob}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::validation,
              "unknown bound '" + std::string(name) +
                  "' (expected ucqp-expected, ucqp-general, ucqp-highprob or trs-highprob)");
}

std::string bound_curve_csv(const BoundQuery& q, const std::vector<double>& sigmas,
                            BoundKind kind) {
  std::ostringstream out;
  out << "sigma,bound_value,condition_ok\n";
  for (double sigma : sigmas) {
    BoundQuery row = q;
    row.sigma = sigma;
    const double gamma = sigma == 0.0 ? 0.0 : gamma_rule(GammaRule::lemma2, row);
    double value = 0.0;
    bool ok = false;
    switch (kind) {
      case BoundKind::ucqp_expected:
      case BoundKind::ucqp_general: {
        const auto b = ucqp_expected_bound(row, gamma);
        value = kind == BoundKind::ucqp_expected ? b.simplified : b.general;
        ok = b.sigma_in_domain;
        break;
      }
      case BoundKind::ucqp_highprob: {
        const auto b = ucqp_highprob_bound(row, gamma);
        value = b.value;
        ok = b.in_domain;
        break;
      }
      case BoundKind::trs_highprob: {
        value = trs_highprob_bound(row, gamma);
        const std::int64_t n = *row.n;
        const double L = log_n(n);
        const double b = *row.B_n;
        const double upper = *row.lambda_n_minus_k;
        const double lower = *row.lambda_n_minus_k_plus_1;
        const double cap =
            lower > 0.0 ? *row.lambda_bar / (16.0 * lower * lower) *
                              std::sqrt(*row.delta * b / (4.0 * kPi * kPi * n))
                        : std::numeric_limits<double>::infinity();
        ok = b <= std::min(n * upper / 12.0, n * *row.lambda_bar / 2.0) &&
             286.0 * std::sqrt(L / std::sqrt(static_cast<double>(n))) <= sigma &&
             sigma <= std::min(1.0 / (4.0 * std::sqrt(3.0) * kPi), cap);
        break;
      }
    }
    out << format_double(sigma) << ',' << format_double(value) << ',' << (ok ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace moddenoise

#include <cmath>
#include <limits>
#include <sstream>

#include "detail/query_access.hpp"
#include "moddenoise/bounds.hpp"
#include "moddenoise/io.hpp"

namespace moddenoise {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Collects conditions for one theorem. `at_most(lhs, rhs)` records lhs <= rhs;
/// the order-level variant scales the right side by the query's constant.
class Builder {
 public:
  Builder(std::string theorem, double order_constant) : order_constant_(order_constant) {
    report_.theorem = std::move(theorem);
  }

  void at_most(std::string name, double lhs, double rhs, std::string citation) {
    report_.conditions.push_back({std::move(name), lhs, rhs, std::move(citation), lhs <= rhs,
                                  false});
  }

  void order_at_most(std::string name, double lhs, double rhs, std::string citation) {
    const double scaled = order_constant_ * rhs;
    report_.conditions.push_back({std::move(name), lhs, scaled, std::move(citation),
                                  lhs <= scaled, true});
  }

  ConditionReport done() { return std::move(report_); }

 private:
  ConditionReport report_;
  double order_constant_;
};

double set_term(std::int64_t L_size, double log_n) {
  const double s = 1.0 + L_size;
  return s + std::sqrt(s * log_n);
}

GraphFamily need_family(const BoundQuery& q, std::string_view ctx) {
  if (q.family == GraphFamily::custom) {
    throw Error(ErrorKind::parameter, std::string(ctx) +
                                          " needs field 'family' (path, complete or star)");
  }
  return q.family;
}

ConditionReport check_thm2(const BoundQuery& q) {
  constexpr std::string_view ctx = "thm2";
  const double n = MD_NEED(q, n, ctx);
  const double eps = MD_NEED(q, epsilon, ctx);
  const double lb = MD_NEED(q, lambda_bar, ctx);
  const std::int64_t ls = MD_NEED(q, L_size, ctx);
  const double delta = MD_NEED(q, delta, ctx);
  const double b = MD_NEED(q, B_n, ctx);
  const double sigma = MD_NEED(q, sigma, ctx);
  Builder r("thm2", q.order_constant);
  r.at_most("1 + |L| <= eps n / 64", 1.0 + ls, eps * n / 64.0, "ucqp-expectation/set-size");
  r.at_most("64/(pi eps lambda_bar) sqrt(Delta B_n / n) <= sigma",
            64.0 / (kPi * eps * lb) * std::sqrt(delta * b / n), sigma,
            "ucqp-expectation/noise-floor");
  r.at_most("sigma <= 1/(2 pi)", sigma, 1.0 / (2.0 * kPi), "ucqp-expectation/noise-ceiling");
  return r.done();
}

ConditionReport check_thm6(const BoundQuery& q) {
  constexpr std::string_view ctx = "thm6";
  const std::int64_t n = MD_NEED(q, n, ctx);
  const double eps = MD_NEED(q, epsilon, ctx);
  const double lb = MD_NEED(q, lambda_bar, ctx);
  const std::int64_t ls = MD_NEED(q, L_size, ctx);
  const double delta = MD_NEED(q, delta, ctx);
  const double b = MD_NEED(q, B_n, ctx);
  const double sigma = MD_NEED(q, sigma, ctx);
  const double nd = n;
  const double L = std::log(nd);
  Builder r("thm6", q.order_constant);
  r.at_most("69/(eps lambda_bar) sqrt(Delta B_n / n) <= sigma",
            69.0 / (eps * lb) * std::sqrt(delta * b / nd), sigma, "ucqp-whp/noise-floor-bias");
  r.at_most("142 log n / sqrt(eps n) <= sigma", 142.0 * L / std::sqrt(eps * nd), sigma,
            "ucqp-whp/noise-floor-log");
  r.at_most("sigma <= 1/(2 sqrt(2) pi)", sigma, 1.0 / (2.0 * std::sqrt(2.0) * kPi),
            "ucqp-whp/noise-ceiling");
  r.at_most("1 + |L| + sqrt((1 + |L|) log n) <= eps n / 10035", set_term(ls, L),
            eps * nd / 10035.0, "ucqp-whp/set-size");
  return r.done();
}

struct TrsInputs {
  double n, eps, lb, delta, b, sigma, L, upper, lower;
  std::int64_t ls;
};

/// Shared by thm8 (general k) and cor6 (k = 1 written with lambda_min).
void add_trs_common(Builder& r, const TrsInputs& in, std::string_view tag) {
  const std::string t(tag);
  r.at_most("1 + |L| + sqrt((1 + |L|) log n) <= pi^2 eps n / (5 C2)", set_term(in.ls, in.L),
            kPi * kPi * in.eps * in.n / (5.0 * kC2), t + "/set-size");
  r.at_most("sigma <= pi sqrt(eps) / sqrt(5 C3)", in.sigma,
            kPi * std::sqrt(in.eps) / std::sqrt(5.0 * kC3), t + "/noise-ceiling");
  r.at_most("286 (log n / sqrt(n))^{1/2} <= sigma", 286.0 * std::sqrt(in.L / std::sqrt(in.n)),
            in.sigma, t + "/noise-floor-concentration");
  r.at_most("sqrt(5 C5)/pi B_n / (n lambda_{n-k} sqrt(eps)) <= sigma",
            std::sqrt(5.0 * kC5) / kPi * in.b / (in.n * in.upper * std::sqrt(in.eps)), in.sigma,
            t + "/noise-floor-smoothness");
  r.at_most("sqrt(5 C4 / (eps pi^2) log n / n) <= sigma",
            std::sqrt(5.0 * kC4 / (in.eps * kPi * kPi) * in.L / in.n), in.sigma,
            t + "/noise-floor-log");
}

ConditionReport check_thm8(const BoundQuery& q) {
  constexpr std::string_view ctx = "thm8";
  detail::check_gap(q, ctx);
  TrsInputs in{};
  in.n = MD_NEED(q, n, ctx);
  in.eps = MD_NEED(q, epsilon, ctx);
  in.lb = MD_NEED(q, lambda_bar, ctx);
  in.ls = MD_NEED(q, L_size, ctx);
  in.delta = MD_NEED(q, delta, ctx);
  in.b = MD_NEED(q, B_n, ctx);
  in.sigma = MD_NEED(q, sigma, ctx);
  in.L = std::log(in.n);
  in.upper = *q.lambda_n_minus_k;
  in.lower = *q.lambda_n_minus_k_plus_1;
  if (!(in.b > 0.0) || !(in.delta > 0.0)) {
    throw Error(ErrorKind::domain, "thm8 divides by sqrt(Delta B_n), which is zero");
  }
  Builder r("thm8", q.order_constant);
  r.at_most("B_n <= n lambda_{n-k} / 12", in.b, in.n * in.upper / 12.0, "trs-whp/smoothness-gap");
  r.at_most("B_n <= n lambda_bar / 2", in.b, in.n * in.lb / 2.0, "trs-whp/smoothness-cutoff");
  add_trs_common(r, in, "trs-whp");
  const double cap = in.lower > 0.0 ? in.lb / (16.0 * in.lower * in.lower) *
                                          std::sqrt(in.delta * in.b / (4.0 * kPi * kPi * in.n))
                                    : kInf;
  r.at_most("sigma <= lambda_bar/(16 lambda_{n-k+1}^2) sqrt(Delta B_n / (4 pi^2 n))", in.sigma,
            cap, "trs-whp/noise-ceiling-gap");
  r.at_most("5 C1/(pi^2 eps lambda_bar) (sqrt(Delta B_n / n) + lambda_{n-k+1}^2 "
            "sqrt(n / (Delta B_n))) <= sigma",
            5.0 * kC1 / (kPi * kPi * in.eps * in.lb) *
                (std::sqrt(in.delta * in.b / in.n) +
                 in.lower * in.lower * std::sqrt(in.n / (in.delta * in.b))),
            in.sigma, "trs-whp/noise-floor-bias");
  return r.done();
}

ConditionReport check_cor6(const BoundQuery& q) {
  constexpr std::string_view ctx = "cor6";
  TrsInputs in{};
  in.n = MD_NEED(q, n, ctx);
  in.eps = MD_NEED(q, epsilon, ctx);
  in.lb = MD_NEED(q, lambda_bar, ctx);
  in.ls = MD_NEED(q, L_size, ctx);
  in.delta = MD_NEED(q, delta, ctx);
  in.b = MD_NEED(q, B_n, ctx);
  in.sigma = MD_NEED(q, sigma, ctx);
  in.L = std::log(in.n);
  in.upper = MD_NEED(q, lambda_min, ctx);
  in.lower = 0.0;
  if (!(in.upper > 0.0)) throw Error(ErrorKind::domain, "lambda_min must be positive");
  if (!(in.b > 0.0) || !(in.delta > 0.0)) {
    throw Error(ErrorKind::domain, "cor6 divides by sqrt(Delta B_n), which is zero");
  }
  Builder r("cor6", q.order_constant);
  r.at_most("B_n <= n lambda_min / 12", in.b, in.n * in.upper / 12.0, "trs-whp-k1/smoothness");
  add_trs_common(r, in, "trs-whp-k1");
  r.at_most("5 C1/(pi^2 eps lambda_bar) sqrt(Delta B_n / n) <= sigma",
            5.0 * kC1 / (kPi * kPi * in.eps * in.lb) * std::sqrt(in.delta * in.b / in.n),
            in.sigma, "trs-whp-k1/noise-floor-bias");
  return r.done();
}

struct OrderInputs {
  double n, eps, b, sigma, L;
};

OrderInputs order_inputs(const BoundQuery& q, std::string_view ctx) {
  OrderInputs in{};
  in.n = MD_NEED(q, n, ctx);
  in.eps = MD_NEED(q, epsilon, ctx);
  in.sigma = MD_NEED(q, sigma, ctx);
  in.L = std::log(in.n);
  return in;
}

double need_theta(const BoundQuery& q, std::string_view ctx) {
  return MD_NEED(q, theta, ctx);
}

ConditionReport check_cor1(const BoundQuery& q) {
  constexpr std::string_view ctx = "cor1";
  const GraphFamily family = need_family(q, ctx);
  OrderInputs in = order_inputs(q, ctx);
  in.b = MD_NEED(q, B_n, ctx);
  Builder r("cor1", q.order_constant);
  const double sb = std::sqrt(in.b);
  switch (family) {
    case GraphFamily::complete:
      r.order_at_most("1/eps <~ n", 1.0 / in.eps, in.n, "ucqp-expectation-Kn/size");
      r.order_at_most("sqrt(B_n)/(n eps) <~ sigma", sb / (in.n * in.eps), in.sigma,
                      "ucqp-expectation-Kn/noise-floor");
      break;
    case GraphFamily::star:
      r.order_at_most("1/eps <~ n", 1.0 / in.eps, in.n, "ucqp-expectation-Sn/size");
      r.order_at_most("sqrt(B_n)/eps <~ sigma", sb / in.eps, in.sigma,
                      "ucqp-expectation-Sn/noise-floor");
      break;
    default: {
      const double theta = need_theta(q, ctx);
      r.order_at_most("(1/eps)^{1/(1-theta)} <~ n", std::pow(1.0 / in.eps, 1.0 / (1.0 - theta)),
                      in.n, "ucqp-expectation-Pn/size");
      r.order_at_most("n^{3/2-2 theta} sqrt(B_n)/eps <~ sigma",
                      std::pow(in.n, 1.5 - 2.0 * theta) * sb / in.eps, in.sigma,
                      "ucqp-expectation-Pn/noise-floor");
      break;
    }
  }
  r.order_at_most("sigma <~ 1", in.sigma, 1.0, "ucqp-expectation/noise-ceiling");
  return r.done();
}

ConditionReport check_cor2(const BoundQuery& q) {
  constexpr std::string_view ctx = "cor2";
  const GraphFamily family = need_family(q, ctx);
  OrderInputs in = order_inputs(q, ctx);
  in.b = MD_NEED(q, B_n, ctx);
  Builder r("cor2", q.order_constant);
  const double sb = std::sqrt(in.b);
  const double log_floor = in.L / std::sqrt(in.eps * in.n);
  switch (family) {
    case GraphFamily::complete:
    case GraphFamily::star: {
      const bool k = family == GraphFamily::complete;
      const std::string tag = k ? "ucqp-whp-Kn" : "ucqp-whp-Sn";
      r.order_at_most("1/eps <~ n / sqrt(log n)", 1.0 / in.eps, in.n / std::sqrt(in.L),
                      tag + "/size");
      r.order_at_most(k ? "sqrt(B_n)/(n eps) <~ sigma" : "sqrt(B_n)/eps <~ sigma",
                      k ? sb / (in.n * in.eps) : sb / in.eps, in.sigma, tag + "/noise-floor");
      break;
    }
    default: {
      const double theta = need_theta(q, ctx);
      const double nt = std::pow(in.n, theta);
      r.order_at_most("n^theta + sqrt(n^theta log n) <~ eps n", nt + std::sqrt(nt * in.L),
                      in.eps * in.n, "ucqp-whp-Pn/size");
      r.order_at_most("n^{(3-4 theta)/2} sqrt(B_n)/eps <~ sigma",
                      std::pow(in.n, (3.0 - 4.0 * theta) / 2.0) * sb / in.eps, in.sigma,
                      "ucqp-whp-Pn/noise-floor");
      break;
    }
  }
  r.order_at_most("log n / sqrt(eps n) <~ sigma", log_floor, in.sigma, "ucqp-whp/noise-floor-log");
  r.order_at_most("sigma <~ 1", in.sigma, 1.0, "ucqp-whp/noise-ceiling");
  return r.done();
}

ConditionReport check_cor3(const BoundQuery& q) {
  constexpr std::string_view ctx = "cor3";
  const GraphFamily family = need_family(q, ctx);
  OrderInputs in = order_inputs(q, ctx);
  in.b = MD_NEED(q, B_n, ctx);
  Builder r("cor3", q.order_constant);
  const double sb = std::sqrt(in.b);
  const double se = std::sqrt(in.eps);
  switch (family) {
    case GraphFamily::complete:
      r.order_at_most("1/eps <~ n / sqrt(log n)", 1.0 / in.eps, in.n / std::sqrt(in.L),
                      "trs-whp-Kn/size");
      r.order_at_most("B_n <~ n^2", in.b, in.n * in.n, "trs-whp-Kn/smoothness");
      r.order_at_most("sqrt(B_n)/(n eps) <~ sigma", sb / (in.n * in.eps), in.sigma,
                      "trs-whp-Kn/noise-floor-bias");
      r.order_at_most("B_n/(n^2 sqrt(eps)) <~ sigma", in.b / (in.n * in.n * se), in.sigma,
                      "trs-whp-Kn/noise-floor-smoothness");
      break;
    case GraphFamily::star:
      r.order_at_most("1/eps <~ n / sqrt(log n)", 1.0 / in.eps, in.n / std::sqrt(in.L),
                      "trs-whp-Sn/size");
      r.order_at_most("B_n <~ n", in.b, in.n, "trs-whp-Sn/smoothness");
      r.order_at_most("sqrt(B_n)/eps <~ sigma", sb / in.eps, in.sigma,
                      "trs-whp-Sn/noise-floor-bias");
      r.order_at_most("B_n/(n sqrt(eps)) <~ sigma", in.b / (in.n * se), in.sigma,
                      "trs-whp-Sn/noise-floor-smoothness");
      break;
    default: {
      const double theta = need_theta(q, ctx);
      const double nt = std::pow(in.n, theta);
      r.order_at_most("n^theta + sqrt(n^theta log n) <~ eps n", nt + std::sqrt(nt * in.L),
                      in.eps * in.n, "trs-whp-Pn/size");
      r.order_at_most("B_n <~ 1/n", in.b, 1.0 / in.n, "trs-whp-Pn/smoothness");
      r.order_at_most("n^{(3-4 theta)/2} sqrt(B_n)/eps <~ sigma",
                      std::pow(in.n, (3.0 - 4.0 * theta) / 2.0) * sb / in.eps, in.sigma,
                      "trs-whp-Pn/noise-floor-bias");
      r.order_at_most("n B_n / sqrt(eps) <~ sigma", in.n * in.b / se, in.sigma,
                      "trs-whp-Pn/noise-floor-smoothness");
      break;
    }
  }
  r.order_at_most("(log n / sqrt(n))^{1/2} <~ sigma", std::sqrt(in.L / std::sqrt(in.n)),
                  in.sigma, "trs-whp/noise-floor-concentration");
  r.order_at_most("(log n / (eps n))^{1/2} <~ sigma", std::sqrt(in.L / (in.eps * in.n)),
                  in.sigma, "trs-whp/noise-floor-log");
  r.order_at_most("sigma <~ sqrt(eps)", in.sigma, se, "trs-whp/noise-ceiling");
  return r.done();
}

ConditionReport check_cor5(const BoundQuery& q) {
  constexpr std::string_view ctx = "cor5";
  const OrderInputs in = order_inputs(q, ctx);
  const double m = MD_NEED(q, M, ctx);
  Builder r("cor5", q.order_constant);
  r.order_at_most("(1/eps)^3 <~ n", std::pow(1.0 / in.eps, 3.0), in.n, "ucqp-lipschitz/size");
  r.order_at_most("M/(eps n^{1/3}) <~ sigma", m / (in.eps * std::cbrt(in.n)), in.sigma,
                  "ucqp-lipschitz/noise-floor-bias");
  r.order_at_most("log n / sqrt(eps n) <~ sigma", in.L / std::sqrt(in.eps * in.n), in.sigma,
                  "ucqp-lipschitz/noise-floor-log");
  r.order_at_most("sigma <~ 1", in.sigma, 1.0, "ucqp-lipschitz/noise-ceiling");
  return r.done();
}

ConditionReport check_cor7(const BoundQuery& q) {
  constexpr std::string_view ctx = "cor7";
  const OrderInputs in = order_inputs(q, ctx);
  const double m = MD_NEED(q, M, ctx);
  const double se = std::sqrt(in.eps);
  Builder r("cor7", q.order_constant);
  r.order_at_most("(1/eps)^3 <~ n", std::pow(1.0 / in.eps, 3.0), in.n, "trs-lipschitz/size");
  r.order_at_most("M^2 <~ n", m * m, in.n, "trs-lipschitz/size-lipschitz");
  r.order_at_most("(M + 1/M)/(eps n^{1/3}) <~ sigma", (m + 1.0 / m) / (in.eps * std::cbrt(in.n)),
                  in.sigma, "trs-lipschitz/noise-floor-bias");
  r.order_at_most("M^2/(n sqrt(eps)) <~ sigma", m * m / (in.n * se), in.sigma,
                  "trs-lipschitz/noise-floor-smoothness");
  r.order_at_most("(log n / sqrt(n))^{1/2} <~ sigma", std::sqrt(in.L / std::sqrt(in.n)), in.sigma,
                  "trs-lipschitz/noise-floor-concentration");
  r.order_at_most("(log n / (eps n))^{1/2} <~ sigma", std::sqrt(in.L / (in.eps * in.n)),
                  in.sigma, "trs-lipschitz/noise-floor-log");
  r.order_at_most("sigma <~ sqrt(eps)", in.sigma, se, "trs-lipschitz/noise-ceiling");
  r.order_at_most("sigma <~ n^{1/3} M", in.sigma, std::cbrt(in.n) * m,
                  "trs-lipschitz/noise-ceiling-lipschitz");
  return r.done();
}

}  // namespace

bool ConditionReport::satisfied() const {
  for (const auto& c : conditions) {
    if (!c.ok) return false;
  }
  return true;
}

std::vector<Condition> ConditionReport::failed_conditions() const {
  std::vector<Condition> failed;
  for (const auto& c : conditions) {
    if (!c.ok) failed.push_back(c);
  }
  return failed;
}

std::string ConditionReport::to_text() const {
  std::ostringstream out;
  out << "conditions for " << theorem << '\n';
  for (const auto& c : conditions) {
    out << (c.ok ? "  [ok]   " : "  [FAIL] ") << c.name << (c.order_level ? " (order-level)" : "")
        << "\n         lhs = " << format_double(c.lhs) << ", rhs = " << format_double(c.rhs)
        << "  [" << c.citation << "]\n";
  }
  const auto failed = failed_conditions();
  if (failed.empty()) {
    out << "satisfied: all " << conditions.size() << " conditions hold\n";
  } else {
    out << "not satisfied: " << failed.size() << " of " << conditions.size()
        << " conditions fail\n";
  }
  return out.str();
}

std::string_view to_string(Theorem theorem) noexcept {
  switch (theorem) {
    case Theorem::thm2: return "thm2";
    case Theorem::thm6: return "thm6";
    case Theorem::thm8: return "thm8";
    case Theorem::cor1: return "cor1";
    case Theorem::cor2: return "cor2";
    case Theorem::cor3: return "cor3";
    case Theorem::cor5: return "cor5";
    case Theorem::cor6: return "cor6";
    case Theorem::cor7: return "cor7";
  }
  return "thm2";
}

Theorem parse_theorem(std::string_view name) {
  if (name == "thm3") return Theorem::thm6;
  if (name == "thm4") return Theorem::thm8;
  for (auto t : {Theorem::thm2, Theorem::thm6, Theorem::thm8, Theorem::cor1, Theorem::cor2,
                 Theorem::cor3, Theorem::cor5, Theorem::cor6, Theorem::cor7}) {
    if (name == to_string(t)) return t;
  }
  throw Error(ErrorKind::validation,
              "unknown theorem id '" + std::string(name) +
                  "' (expected thm2, thm3, thm4, thm6, thm8, cor1, cor2, cor3, cor5, cor6, cor7)");
}

ConditionReport check_denoising_conditions(Theorem theorem, const BoundQuery& q) {
  validate_query(q);
  switch (theorem) {
    case Theorem::thm2: return check_thm2(q);
    case Theorem::thm6: return check_thm6(q);
    case Theorem::thm8: return check_thm8(q);
    case Theorem::cor1: return check_cor1(q);
    case Theorem::cor2: return check_cor2(q);
    case Theorem::cor3: return check_cor3(q);
    case Theorem::cor5: return check_cor5(q);
    case Theorem::cor6: return check_cor6(q);
    case Theorem::cor7: return check_cor7(q);
  }
  throw Error(ErrorKind::unsupported, "unknown theorem");
}

}  // namespace moddenoise

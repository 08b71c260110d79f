#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "moddenoise/errors.hpp"
#include "moddenoise/experiment.hpp"
#include "moddenoise/rng.hpp"
#include "support.hpp"

using namespace moddenoise;
using testsupport::kPi;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n = 120;
  cfg.sigma_grid = {0.01, 0.05, 0.1};
  cfg.trials = 6;
  cfg.base_seed = 17;
  return cfg;
}

}  // namespace

TEST_CASE("gamma spec strings") {
  for (const char* s : {"path-caption", "path-lipschitz", "lemma2", "linear:400", "fixed:2.5"}) {
    CHECK(to_string(parse_gamma_spec(s)) == s);
  }
  CHECK(parse_gamma_spec("linear:400").c == 400.0);
  CHECK_THROWS_AS(parse_gamma_spec("linear:-1"), Error);
  CHECK_THROWS_AS(parse_gamma_spec("linear:x"), Error);
  CHECK_THROWS_AS(parse_gamma_spec("cubic"), Error);
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-3, 0.096);
  CHECK(g.size() == 25);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 0.096);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    CHECK(g[i] / g[i - 1] == doctest::Approx(std::pow(10.0, 1.0 / 12)));
  }
  const auto low = log_grid(1e-4, 1e-3);
  CHECK(low.size() == 13);
  CHECK(low.back() == 1e-3);
  CHECK_THROWS_AS(log_grid(0, 1), Error);
}

TEST_CASE("config json") {
  ExperimentConfig cfg = small_config();
  cfg.function = FunctionSpec::f2();
  cfg.gamma = parse_gamma_spec("linear:400");
  cfg.methods = {Method::trs};
  const ExperimentConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.n == cfg.n);
  CHECK(back.function.kind == FunctionKind::f2);
  CHECK(back.sigma_grid == cfg.sigma_grid);
  CHECK(back.trials == cfg.trials);
  CHECK(back.base_seed == cfg.base_seed);
  CHECK(back.gamma.kind == GammaSpec::Kind::linear);
  CHECK(back.methods == cfg.methods);
  CHECK(config_to_json(back) == config_to_json(cfg));

  const auto from_grid = config_from_json(
      R"({"sigma_grid": {"log_from": 0.0001, "log_to": 0.001, "per_decade": 12}, "seed": 18446744073709551615})");
  CHECK(from_grid.sigma_grid.size() == 13);
  CHECK(from_grid.base_seed == 18446744073709551615ULL);

  CHECK_THROWS_AS(config_from_json("{"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"trials": 3})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"sigma_grid": [0.1, 0.05]})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"sigma_grid": [0.1], "trials": 0})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"sigma_grid": [0.1], "n": 1})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"sigma_grid": [0.1], "methods": []})"), Error);

  ExperimentConfig custom = small_config();
  custom.function = FunctionSpec::make_custom([](double x) { return x; }, 1.0);
  CHECK_THROWS_AS(config_to_json(custom), Error);
}

TEST_CASE("single trials") {
  ExperimentConfig cfg = small_config();
  cfg.sigma_grid = {0.0, 0.05};
  cfg.gamma = parse_gamma_spec("fixed:5");
  const auto ctx = make_context(cfg);
  const auto zero = run_trial(cfg, ctx, 0.0, 0, 0);
  CHECK(zero.mse_input == 0.0);
  CHECK(*zero.mse_ucqp > 0.0);
  CHECK(*zero.mse_trs > 0.0);
  CHECK(zero.mu_star.has_value());

  const auto a = run_trial(cfg, ctx, 0.05, 1, 3);
  const auto b = run_trial(cfg, 1, 3);
  CHECK(a.mse_input == b.mse_input);
  CHECK(*a.mse_ucqp == *b.mse_ucqp);
  CHECK(*a.mse_trs == *b.mse_trs);
  CHECK(*a.mu_star == *b.mu_star);
  CHECK(run_trial(cfg, 1, 4).mse_input != a.mse_input);
  CHECK_THROWS_AS(run_trial(cfg, 5, 0), Error);
}

TEST_CASE("caption gamma denoises f2 at the top of the grid") {
  ExperimentConfig cfg;
  cfg.n = 500;
  cfg.function = FunctionSpec::f2();
  cfg.sigma_grid = {0.096};
  cfg.trials = 30;
  cfg.methods = {Method::ucqp};
  const auto result = sweep_sigma(cfg);
  CHECK(result.row(0, "ucqp").mean_mse < result.row(0, "input").mean_mse);
}

TEST_CASE("sweeps") {
  ExperimentConfig cfg = small_config();
  const auto one = sweep_sigma(cfg, SweepOptions{1});
  const auto four = sweep_sigma(cfg, SweepOptions{4});
  CHECK(sweep_csv(one) == sweep_csv(four));
  CHECK(one.rows.size() == 9);
  CHECK(one.records.size() == 18);
  for (const auto& r : one.rows) {
    CHECK(r.stderr_mse >= 0);
    CHECK(r.trials == 6);
    CHECK(r.mean_mu_star.has_value() == (r.method == "trs"));
  }
  CHECK(one.row(2, "trs").sigma == 0.1);
  CHECK_THROWS_AS(one.row(3, "input"), Error);

  // order-independent aggregation
  auto shuffled = one.records;
  std::mt19937_64 rng(1);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto rows = aggregate(cfg, shuffled);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(rows[i].mean_mse - one.rows[i].mean_mse) <= 1e-12 * one.rows[i].mean_mse);
  }

  // mean and sample standard error against a direct computation
  std::vector<double> v;
  for (const auto& r : one.records) {
    if (r.sigma_index == 1) v.push_back(*r.mse_ucqp);
  }
  double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  double s2 = 0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= v.size() - 1;
  CHECK(one.row(1, "ucqp").mean_mse == doctest::Approx(m).epsilon(1e-14));
  CHECK(one.row(1, "ucqp").stderr_mse == doctest::Approx(std::sqrt(s2 / v.size())).epsilon(1e-12));

  const std::string csv = sweep_csv(one);
  CHECK(csv.rfind("# ", 0) == 0);
  CHECK(csv.find("sigma,method,mean_mse,stderr_mse,mean_mu_star,trials,gamma\n") != std::string::npos);

  cfg.trials = 1;
  cfg.sigma_grid = {0.05};
  CHECK(sweep_sigma(cfg).rows.size() == 3);
}

TEST_CASE("failing trials abort the sweep with partial results") {
  // on four grid points f(x) = 3x/4 lifts to (1, i, -1, -i), which sums to zero
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.function = FunctionSpec::make_custom([](double x) { return 0.75 * x; }, 1.0);
  cfg.sigma_grid = {0.0, 0.1};
  cfg.trials = 3;
  cfg.gamma = parse_gamma_spec("fixed:1");
  cfg.methods = {Method::trs};
  try {
    sweep_sigma(cfg, SweepOptions{1});
    FAIL("sweep should fail");
  } catch (const SweepError& e) {
    CHECK(e.kind() == ErrorKind::degeneracy);
    CHECK(e.partial().size() < 6);
    CHECK(std::string(e.what()).find("sigma index 0") != std::string::npos);
  }
}

TEST_CASE("seed streams are disjoint across the figure grid") {
  std::set<std::array<std::uint64_t, 4>> seen;
  const auto grid = log_grid(1e-3, 0.096);
  for (std::uint32_t s = 0; s < grid.size(); ++s) {
    for (std::uint32_t t = 0; t < 30; ++t) {
      NormalStream stream(derive_stream_seed(20240601, s, t));
      std::array<std::uint64_t, 4> head{stream.raw(), stream.raw(), stream.raw(), stream.raw()};
      CHECK(seen.insert(head).second);
    }
  }
}

TEST_CASE("thread count") {
  CHECK(resolve_thread_count(3) == 3);
  CHECK(resolve_thread_count(0) >= 1);
}

TEST_CASE("identity checks") {
  const auto zero = verify_identity(Identity::prop1_i, 300, 0.0, 30, 1);
  CHECK(zero.z_score == 0.0);
  CHECK(zero.theoretical == 1.0);
  for (auto id : {Identity::prop1_i, Identity::prop1_ii, Identity::prop1_iii, Identity::prop1_iv,
                  Identity::prop1_v, Identity::input_error_bracket}) {
    // six skewed statistics at 100 trials: a 3 se cut trips on about 1 seed in 30
    const auto r = verify_identity(id, 500, 0.1, 100, 5);
    CHECK_MESSAGE(r.z_score <= 4.0, to_string(id) << " z=" << r.z_score);
  }
  const auto v = verify_identity(Identity::prop1_v, 2000, 0.1, 30, 2);
  CHECK(v.theoretical == doctest::Approx(2 * 2000 * (1 - std::exp(-2 * kPi * kPi * 0.01))));
  const auto e = verify_identity(Identity::input_error_bracket, 400, 0.1, 30, 3);
  CHECK(e.lower == doctest::Approx(2 * kPi * kPi * 0.01 * 400));
  CHECK(e.upper == doctest::Approx(4 * kPi * kPi * 0.01 * 400));
  CHECK_THROWS_AS(verify_identity(Identity::input_error_bracket, 400, 0.1, 1, 3), Error);
}

TEST_CASE("event checks") {
  EventParams p;
  p.sigma = 0.0;
  for (auto item : {EventItem::prop2_ii, EventItem::prop2_iii, EventItem::prop2_iv}) {
    CHECK(verify_event_bound(item, p, 50, 1).violations == 0);
  }
  p.sigma = 0.1;
  const auto r = verify_event_bound(EventItem::prop2_iii, p, 500, 2);
  CHECK(r.stated_probability == doctest::Approx(2.0 / (200 * 200)));
  CHECK(r.stderr_binomial == doctest::Approx(std::sqrt(r.stated_probability * (1 - r.stated_probability) / 500)));
  CHECK(r.within_budget());

  p.sigma = 0.01;
  p.k = 1;
  const auto l = verify_event_bound(EventItem::lemma7, p, 20, 3);
  REQUIRE(l.mu_bound.has_value());
  CHECK(l.stated_probability == doctest::Approx(4.0 / (200 * 200)));
  CHECK(l.min_mu_star > 0);
  CHECK(l.min_mu_star <= 2);
}

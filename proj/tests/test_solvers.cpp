#include <doctest.h>

#include <cmath>
#include <random>

#include "moddenoise/errors.hpp"
#include "moddenoise/bounds.hpp"
#include "moddenoise/solvers.hpp"
#include "moddenoise/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace moddenoise;
using testsupport::kPi;
using cd = std::complex<double>;

namespace {

TorusSignal torus(std::initializer_list<cd> v) {
  ComplexVector out(v.size());
  int i = 0;
  for (auto x : v) out(i++) = x;
  return TorusSignal::on_torus(out);
}

const cd I(0, 1);

}  // namespace

TEST_CASE("ucqp closed form") {
  const auto p2 = spectral_decomposition(build_graph(GraphFamily::path, 2));
  const auto z = torus({1, -1});
  for (auto backend : {UcqpBackend::spectral, UcqpBackend::direct}) {
    const auto sol = solve_ucqp(z, p2, 1.0, backend);
    CHECK(std::abs(sol.g_hat(0) - 1.0 / 3) <= 1e-15);
    CHECK(std::abs(sol.g_hat(1) + 1.0 / 3) <= 1e-15);
    CHECK(sol.residual <= 1e-15);
  }
  CHECK(solve_ucqp(z, p2, 0.0).g_hat == z.values());

  std::mt19937_64 rng(1);
  const Graph g = testsupport::random_connected_graph(30, 0.1, rng);
  const auto spec = spectral_decomposition(g);
  const auto c = TorusSignal::on_torus(ComplexVector::Constant(30, std::polar(1.0, 1.1)));
  CHECK((solve_ucqp(c, spec, 7.5).g_hat - c.values()).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(solve_ucqp(z, p2, -1.0), Error);
  try {
    solve_ucqp(z, p2, -1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parameter);
  }
}

TEST_CASE("ucqp backends agree and minimize the objective") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> log_gamma(-2, 2);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 5 + 7 * rep;
    const Graph g = testsupport::random_connected_graph(n, 0.08, rng);
    const auto spec = spectral_decomposition(g);
    const auto z = testsupport::random_torus(n, rng);
    const double gamma = std::pow(10.0, log_gamma(rng));
    const auto a = solve_ucqp(z, spec, gamma, UcqpBackend::spectral);
    const auto b = solve_ucqp(z, spec, gamma, UcqpBackend::direct);
    CHECK((a.g_hat - b.g_hat).norm() <= 1e-9 * b.g_hat.norm());
    CHECK(a.residual <= 1e-10);
    CHECK(b.residual <= 1e-10);
    // stationarity means small perturbations never lower the objective
    const Eigen::MatrixXd L = g.laplacian();
    const double best = tikhonov_objective(a.g_hat, z.values(), L, gamma);
    for (int k = 0; k < 5; ++k) {
      const ComplexVector d = 1e-3 * testsupport::random_complex(n, rng);
      CHECK(tikhonov_objective(a.g_hat + d, z.values(), L, gamma) >= best);
    }
  }
}

TEST_CASE("secular function") {
  const auto p2 = spectral_decomposition(build_graph(GraphFamily::path, 2));
  CHECK(trs_secular(1.0, torus({1, I}), p2, 0.25) == doctest::Approx(5.0).epsilon(1e-14));

  std::mt19937_64 rng(3);
  const Graph g = testsupport::random_connected_graph(20, 0.2, rng);
  const auto spec = spectral_decomposition(g);
  const auto z = testsupport::random_torus(20, rng);
  for (double mu : {0.3, 1.0, 2.0}) {
    CHECK(trs_secular(mu, z, spec, 0.0) == doctest::Approx(4.0 * 20 / (mu * mu)).epsilon(1e-13));
  }
  CHECK(trs_secular(2.0, z, spec, 0.0) == doctest::Approx(20.0).epsilon(1e-13));
  // dense-inverse oracle
  for (double mu : {0.05, 0.7, 1.9}) {
    const double dense = oracles::dense_phi(mu, z.values(), g.laplacian(), 0.8);
    CHECK(trs_secular(mu, z, spec, 0.8) == doctest::Approx(dense).epsilon(1e-11));
  }
  double prev = trs_secular(1e-3, z, spec, 0.8);
  for (double mu = 2e-3; mu < 4; mu *= 1.3) {
    const double cur = trs_secular(mu, z, spec, 0.8);
    CHECK(cur < prev);
    prev = cur;
  }
  // analytic derivative against a central difference
  const SecularFunction phi(spec, eigen_coefficients(spec, z.values()), 0.8);
  const double h = 1e-6;
  CHECK(phi.derivative(0.9) ==
        doctest::Approx((phi(0.9 + h) - phi(0.9 - h)) / (2 * h)).epsilon(1e-6));

  for (double bad : {0.0, -1.0}) {
    try {
      trs_secular(bad, z, spec, 0.8);
      FAIL("mu <= 0 accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::domain);
    }
  }
}

TEST_CASE("trs on small instances") {
  const auto p2 = spectral_decomposition(build_graph(GraphFamily::path, 2));
  const auto z = torus({1, I});
  const auto sol = solve_trs(z, p2, 0.25);
  // bisection oracle on 4(1/mu^2 + 1/(1+mu)^2) = 2
  double lo = 1e-6, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = 4 * (1 / (mid * mid) + 1 / ((1 + mid) * (1 + mid))) - 2;
    (f > 0 ? lo : hi) = mid;
  }
  CHECK(sol.mu_star == doctest::Approx(lo).epsilon(1e-12));
  CHECK(sol.mu_star > 0);
  CHECK(sol.mu_star <= 2);
  CHECK(sol.kkt_residual <= 1e-8);
  CHECK(sol.norm_gap / 2 <= 1e-10);

  const auto flat = solve_trs(z, p2, 0.0);
  CHECK(flat.mu_star == 2.0);
  CHECK((flat.g_hat - z.values()).cwiseAbs().maxCoeff() <= 1e-15);

  try {
    solve_trs(torus({1, -1}), p2, 0.5);
    FAIL("z orthogonal to the null space accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degeneracy);
  }
  CHECK_THROWS_AS(solve_trs(z, p2, -0.5), Error);
}

TEST_CASE("trs on random graphs") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> log_gamma(-2, 1.5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int rep = 0; rep < 15; ++rep) {
    const int n = 6 + 9 * rep;
    const Graph g = testsupport::random_connected_graph(n, 0.1, rng);
    const auto spec = spectral_decomposition(g);
    const auto z = testsupport::random_torus(n, rng);
    const double gamma = std::pow(10.0, log_gamma(rng));
    const auto sol = solve_trs(z, spec, gamma);
    CHECK(sol.mu_star > 0);
    CHECK(sol.mu_star <= 2);
    CHECK(sol.kkt_residual <= 1e-8);
    CHECK(sol.norm_gap / n <= 1e-10);
    const double oracle = oracles::grid_bisection_mu_star(z.values(), g.laplacian(), gamma);
    CHECK(std::abs(sol.mu_star - oracle) <= 1e-8);

    // global optimality on the sphere against random feasible points and z
    const Eigen::MatrixXd L = g.laplacian();
    const double best = tikhonov_objective(sol.g_hat, z.values(), L, gamma);
    CHECK(best <= tikhonov_objective(z.values(), z.values(), L, gamma) + 1e-9);
    for (int k = 0; k < 20; ++k) {
      ComplexVector p = testsupport::random_complex(n, rng);
      p *= std::sqrt(static_cast<double>(n)) / p.norm();
      CHECK(best <= tikhonov_objective(p, z.values(), L, gamma) + 1e-9);
    }

    // multiplier lower bound from the low band energy below each eigenvalue
    const ComplexVector a = eigen_coefficients(spec, z.values());
    for (int j = 1; j <= n; ++j) {
      const double cut = spec.lambda(j);
      double energy = 0;
      for (int i = 1; i <= n; ++i) {
        if (spec.lambda(i) <= cut) energy += std::norm(a(i - 1));
      }
      const double root = std::sqrt(energy / n);
      if (root > gamma * cut) CHECK(sol.mu_star >= 2 * root - 2 * gamma * cut - 1e-12);
    }
  }
}

TEST_CASE("projection onto the torus") {
  ComplexVector zero(1);
  zero << cd(0, 0);
  CHECK(project_to_torus(zero)[0] == cd(1, 0));
  ComplexVector a(1);
  a << cd(0, 3);
  CHECK(project_to_torus(a)[0] == cd(0, 1));
  ComplexVector b(2);
  b << cd(-2, 0), cd(0.5, 0);
  CHECK(project_to_torus(b)[0] == cd(-1, 0));
  CHECK(project_to_torus(b)[1] == cd(1, 0));
  // tiny but nonzero entries are normalized, not snapped
  ComplexVector tiny(1);
  tiny << cd(0, 1e-300);
  CHECK(project_to_torus(tiny)[0] == cd(0, 1));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logt(-3, 3);
  for (int rep = 0; rep < 500; ++rep) {
    const ComplexVector w = testsupport::random_complex(12, rng);
    const ComplexVector g = testsupport::random_torus(12, rng).values();
    const ComplexVector pw = project_to_torus(w).values();
    CHECK((pw - g).lpNorm<1>() <= 2 * (w - g).lpNorm<1>() * (1 + 1e-14));
    CHECK((pw - g).norm() <= 2 * (w - g).norm() * (1 + 1e-14));
    CHECK((pw - g).lpNorm<Eigen::Infinity>() <= 2 * (w - g).lpNorm<Eigen::Infinity>() * (1 + 1e-14));
    const double t = std::pow(10.0, logt(rng));
    CHECK((project_to_torus(t * w).values() - pw).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("denoise pipeline") {
  const Graph p = build_graph(GraphFamily::path, 50);
  const auto c = TorusSignal::on_torus(ComplexVector::Constant(50, std::polar(1.0, -0.4)));
  CHECK((denoise(c, p, 3.0, Method::ucqp).values() - c.values()).cwiseAbs().maxCoeff() <= 1e-12);
  const auto h = lift_to_torus(sample_function(FunctionSpec::f2(), uniform_grid(50)));
  CHECK((denoise(h, p, 0.0, Method::trs).values() - h.values()).cwiseAbs().maxCoeff() <= 1e-14);

  // caption gamma on f1 beats the raw input in most trials at sigma = 0.05
  const int n = 500;
  const double sigma = 0.05;
  const Graph path = build_graph(GraphFamily::path, n);
  const auto spec = spectral_decomposition(path);
  const auto truth = lift_to_torus(sample_function(FunctionSpec::f1(), uniform_grid(n)));
  BoundQuery q;
  q.n = n;
  q.sigma = sigma;
  const double gamma = gamma_rule(GammaRule::path_caption, q);
  CHECK(gamma == doctest::Approx(std::pow(sigma * sigma * std::pow(n, 10.0 / 3.0), 0.25)));
  int wins = 0;
  for (int t = 0; t < 30; ++t) {
    NormalStream stream(derive_stream_seed(99, 0, t));
    const auto z = add_modulo_noise(truth, sigma, stream);
    if (mse(denoise(z, spec, gamma, Method::ucqp), truth) < mse(z, truth)) ++wins;
  }
  CHECK(wins >= 25);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "moddenoise/errors.hpp"
#include "moddenoise/io.hpp"
#include "moddenoise/rng.hpp"
#include "moddenoise/signal.hpp"
#include "support.hpp"

using namespace moddenoise;
using testsupport::kPi;
using cd = std::complex<double>;

TEST_CASE("uniform grid") {
  CHECK(uniform_grid(2) == Eigen::Vector2d(0, 1));
  CHECK(uniform_grid(3) == Eigen::Vector3d(0, 0.5, 1));
  Eigen::VectorXd five(5);
  five << 0, 0.25, 0.5, 0.75, 1;
  CHECK(uniform_grid(5) == five);
  CHECK_THROWS_AS(uniform_grid(1), Error);
}

TEST_CASE("test functions") {
  const auto f1 = FunctionSpec::f1();
  const auto f2 = FunctionSpec::f2();
  CHECK(f1(0.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(f1(0.25) == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(f1(0.5) == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(f2(0.25) == doctest::Approx(1.0));
  CHECK(f2.lipschitz_M == 2 * kPi);
  CHECK(parse_function("f2").kind == FunctionKind::f2);
  CHECK_THROWS_AS(parse_function("f3"), Error);

  // the stored constant is an upper bound on |f1'| over a fine grid
  double worst = 0.0;
  for (int i = 0; i <= 2000000; ++i) {
    const double x = i / 2000000.0;
    const double d = 3 * std::pow(std::cos(2 * kPi * x), 2) -
                     (6 * kPi * x + 2 * kPi) * std::sin(4 * kPi * x);
    worst = std::max(worst, std::abs(d));
  }
  CHECK(worst <= kF1Lipschitz);
  CHECK(worst >= kF1Lipschitz - 1e-3);
}

TEST_CASE("lifting to the torus") {
  auto lifted = lift_to_torus(Eigen::Vector2d(0, 0.25));
  CHECK(lifted.is_on_torus());
  CHECK(std::abs(lifted[0] - cd(1, 0)) <= 1e-15);
  CHECK(std::abs(lifted[1] - cd(0, 1)) <= 1e-15);
  CHECK(std::abs(lift_to_torus(Eigen::VectorXd::Constant(1, 0.5))[0] - cd(-1, 0)) <= 1e-15);
  CHECK(std::abs(lift_to_torus(Eigen::VectorXd::Constant(1, 1.25))[0] - cd(0, 1)) <= 1e-15);
  CHECK_THROWS_AS(lift_to_torus(Eigen::VectorXd::Constant(1, std::nan(""))), Error);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> shift(-5, 5);
  Eigen::VectorXd s(200), t(200);
  for (int i = 0; i < 200; ++i) {
    s(i) = u(rng);
    t(i) = s(i) + shift(rng);
  }
  CHECK((lift_to_torus(s).values() - lift_to_torus(t).values()).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("torus signal validation") {
  ComplexVector v(2);
  v << cd(1, 0), cd(0, 1.1);
  CHECK_THROWS_AS(TorusSignal::on_torus(v), Error);
  CHECK_FALSE(TorusSignal::raw(v).is_on_torus());
  CHECK(TorusSignal::raw(v).torus_deviation() == doctest::Approx(0.1));
}

TEST_CASE("modulo noise") {
  const TorusSignal h = lift_to_torus(sample_function(FunctionSpec::f1(), uniform_grid(300)));
  NormalStream s0(9);
  CHECK(add_modulo_noise(h, 0.0, s0).values() == h.values());

  const auto a = add_modulo_noise(h, NoiseModel{0.2, 42});
  const auto b = add_modulo_noise(h, NoiseModel{0.2, 42});
  CHECK(a.values() == b.values());
  CHECK(a.is_on_torus());
  CHECK(a.torus_deviation() <= 1e-12);
  CHECK(add_modulo_noise(h, NoiseModel{0.2, 43}).values() != a.values());

  // the phase increment is 2 pi eta with eta drawn from the same stream
  NormalStream s1(42);
  for (int i = 0; i < 5; ++i) {
    const double eta = s1.normal() * 0.2;
    CHECK(std::abs(a[i] - h[i] * std::polar(1.0, 2 * kPi * eta)) <= 1e-14);
  }
}

TEST_CASE("mean of the noisy signal shrinks by exp(-2 pi^2 sigma^2)") {
  // independent of the experiment module: plain loop over seeded streams
  const int n = 2000, trials = 200;
  const double sigma = 0.1;
  const TorusSignal h = lift_to_torus(sample_function(FunctionSpec::f1(), uniform_grid(n)));
  std::vector<double> stats;
  for (int t = 0; t < trials; ++t) {
    NormalStream stream(derive_stream_seed(77, 0, t));
    const auto z = add_modulo_noise(h, sigma, stream);
    stats.push_back(h.values().dot(z.values()).real() / n);
  }
  double mean = 0, var = 0;
  for (double s : stats) mean += s;
  mean /= trials;
  for (double s : stats) var += (s - mean) * (s - mean);
  const double se = std::sqrt(var / (trials - 1) / trials);
  const double expected = std::exp(-2 * kPi * kPi * sigma * sigma);
  CHECK(expected == doctest::Approx(0.8208).epsilon(1e-4));
  CHECK(std::abs(mean - expected) <= 3 * se);
}

TEST_CASE("smoothness") {
  const Graph p2 = build_graph(GraphFamily::path, 2);
  ComplexVector v(2);
  v << cd(1, 0), cd(-1, 0);
  CHECK(smoothness(TorusSignal::on_torus(v), p2) == 4.0);
  ComplexVector w(3);
  w << cd(1, 0), cd(0, 1), cd(-1, 0);
  CHECK(smoothness(TorusSignal::on_torus(w), build_graph(GraphFamily::path, 3)) ==
        doctest::Approx(4.0).epsilon(1e-15));
  const ComplexVector c = ComplexVector::Constant(10, std::polar(1.0, 0.3));
  CHECK(smoothness(TorusSignal::on_torus(c), build_graph(GraphFamily::complete, 10)) == 0.0);
  CHECK_THROWS_AS(smoothness(TorusSignal::on_torus(v), build_graph(GraphFamily::path, 3)), Error);

  // edge sum against the quadratic form h* L h
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = testsupport::random_connected_graph(40, 0.1, rng);
    const TorusSignal h = testsupport::random_torus(40, rng);
    const Eigen::MatrixXd L = g.laplacian();
    const double quad = h.values().dot(L.cast<cd>() * h.values()).real();
    CHECK(std::abs(smoothness(h, g) - quad) <= 1e-10 * std::max(1.0, quad));
  }
}

TEST_CASE("quadratic variation bound") {
  CHECK(quadratic_variation_bound(Eigen::VectorXd::Constant(5, 0.3)) == 0.0);
  CHECK(quadratic_variation_bound(Eigen::Vector2d(0, 0.5)) == doctest::Approx(kPi * kPi));
  CHECK_THROWS_AS(quadratic_variation_bound(Eigen::VectorXd::Zero(1)), Error);
  const auto f2 = sample_function(FunctionSpec::f2(), uniform_grid(500));
  CHECK(quadratic_variation_bound(f2) <= lipschitz_budget(2 * kPi, 500));
}

TEST_CASE("mse") {
  ComplexVector a(1), b(1);
  a << cd(1, 0);
  b << cd(-1, 0);
  const auto u = TorusSignal::on_torus(a), v = TorusSignal::on_torus(b);
  CHECK(mse(u, u) == 0.0);
  CHECK(mse(u, v) == 4.0);
  CHECK_THROWS_AS(mse(u, TorusSignal::on_torus(ComplexVector::Ones(2))), Error);
}

TEST_CASE("signal csv round trip") {
  std::mt19937_64 rng(4);
  const TorusSignal h = testsupport::random_torus(17, rng);
  const std::string csv = signal_csv(h);
  CHECK(csv.rfind("i,re,im\n", 0) == 0);
  const TorusSignal back = parse_signal_csv(csv, true);
  CHECK(back.values() == h.values());
  CHECK(back.is_on_torus());

  CHECK_THROWS_AS(parse_signal_csv("i,re,im\n1,2,0\n", true), Error);
  CHECK_FALSE(parse_signal_csv("i,re,im\n1,2,0\n", false).is_on_torus());
  CHECK_THROWS_AS(parse_signal_csv("i,re,im\n1,1,0\n1,1,0\n", true), Error);

  const std::string samples = samples_csv(uniform_grid(3), Eigen::Vector3d(1, 2, 3));
  CHECK(samples == "i,x,f\n1,0,1\n2,0.5,2\n3,1,3\n");
}

TEST_CASE("stream seeds") {
  CHECK(derive_stream_seed(1, 0, 0) != derive_stream_seed(1, 0, 1));
  CHECK(derive_stream_seed(1, 1, 0) != derive_stream_seed(1, 0, 1));
  NormalStream a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.normal() == b.normal());
  // sample moments of the Box-Muller output
  NormalStream s(123);
  double m = 0, m2 = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double x = s.normal();
    m += x;
    m2 += x * x;
  }
  CHECK(std::abs(m / N) <= 4 / std::sqrt(N));
  CHECK(std::abs(m2 / N - 1) <= 4 * std::sqrt(2.0 / N));
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(3) == "3");
  CHECK(parse_double("2.5") == 2.5);
  CHECK_THROWS_AS(parse_double("x"), Error);
}

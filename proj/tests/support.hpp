#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "moddenoise/graph.hpp"
#include "moddenoise/signal.hpp"

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;

// Random spanning tree plus extra edges, so the result is always connected.
inline moddenoise::Graph random_connected_graph(int n, double extra_density, std::mt19937_64& rng) {
  std::vector<moddenoise::Edge> edges;
  std::vector<std::vector<bool>> has(n + 1, std::vector<bool>(n + 1, false));
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> pick(1, v - 1);
    const int u = pick(rng);
    edges.push_back({u, v});
    has[u][v] = has[v][u] = true;
  }
  std::bernoulli_distribution coin(extra_density);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (!has[u][v] && coin(rng)) edges.push_back({u, v});
    }
  }
  return moddenoise::Graph::custom(n, std::move(edges));
}

inline moddenoise::TorusSignal random_torus(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  moddenoise::ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, 2.0 * kPi * phase(rng));
  return moddenoise::TorusSignal::on_torus(std::move(v));
}

inline moddenoise::ComplexVector random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  moddenoise::ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v;
}

// Projector onto the span of the columns, for basis-free comparisons.
inline Eigen::MatrixXd projector(const Eigen::MatrixXd& cols) { return cols * cols.transpose(); }

}  // namespace testsupport

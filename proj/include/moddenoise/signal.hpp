#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "moddenoise/graph.hpp"
#include "moddenoise/rng.hpp"

namespace moddenoise {

/// Complex vectors are Eigen::VectorXcd: std::complex<double> entries, stored
/// as interleaved (re, im) pairs.
using ComplexVector = Eigen::VectorXcd;

/// Complex signal that may carry a unit-modulus guarantee.
///
/// `TorusSignal::on_torus` checks max_i ||v_i| - 1| <= 1e-12 and sets the
/// flag; `TorusSignal::raw` wraps any finite complex vector without it.
class TorusSignal {
 public:
  static constexpr double kTorusTolerance = 1e-12;

  TorusSignal() = default;

  static TorusSignal on_torus(ComplexVector values, double tolerance = kTorusTolerance);
  static TorusSignal raw(ComplexVector values);

  const ComplexVector& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  bool is_on_torus() const noexcept { return on_torus_; }

  std::complex<double> operator[](Eigen::Index i) const { return values_(i); }

  /// Largest ||v_i| - 1| over entries.
  double torus_deviation() const;

 private:
  TorusSignal(ComplexVector values, bool on_torus)
      : values_(std::move(values)), on_torus_(on_torus) {}

  ComplexVector values_;
  bool on_torus_ = false;
};

enum class FunctionKind { f1, f2, custom };

/// Sampled ground-truth function with its Lipschitz constant M.
struct FunctionSpec {
  FunctionKind kind = FunctionKind::f1;
  double lipschitz_M = 0.0;
  std::function<double(double)> custom;  // used when kind == custom

  /// f1(x) = 3x cos^2(2 pi x) - sin^2(2 pi x) + 0.7
  static FunctionSpec f1();
  /// f2(x) = sin(2 pi x), M = 2 pi exactly.
  static FunctionSpec f2();
  static FunctionSpec make_custom(std::function<double(double)> f, double lipschitz_M);

  double operator()(double x) const;
};

/// Certified Lipschitz constant of f1 on [0, 1].
///
/// f1'(x) = 3 cos^2(2 pi x) - (6 pi x + 2 pi) sin(4 pi x). Its maximum
/// modulus on a grid of spacing 5e-7 is 24.472162 (near x = 0.8853), and
/// |f1''| <= 316 on [0, 1], so between grid points |f1'| can exceed the grid
/// maximum by at most 316 * 2.5e-7 < 8e-5. Rounded up: 24.4723.
inline constexpr double kF1Lipschitz = 24.4723;
inline constexpr double kF2Lipschitz = 2.0 * std::numbers::pi;

std::string_view to_string(FunctionKind kind) noexcept;
FunctionSpec parse_function(std::string_view name);

struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// x_i = (i - 1) / (n - 1), i = 1..n.
Eigen::VectorXd uniform_grid(int n);

/// Elementwise f(x_i).
Eigen::VectorXd sample_function(const FunctionSpec& f, const Eigen::VectorXd& grid);

/// h_i = exp(i 2 pi s_i). Samples are reduced mod 1 first, so integer shifts
/// of the input give the same signal up to the rounding of that reduction.
TorusSignal lift_to_torus(const Eigen::VectorXd& samples);

/// z_i = h_i exp(i 2 pi eta_i), eta_i ~ N(0, sigma^2) i.i.d.
TorusSignal add_modulo_noise(const TorusSignal& h, const NoiseModel& noise);
/// Same, drawing from a caller-owned stream.
TorusSignal add_modulo_noise(const TorusSignal& h, double sigma, NormalStream& stream);

/// h* L h evaluated as the edge sum sum_{ij in E} |h_i - h_j|^2.
double smoothness(const TorusSignal& h, const Graph& g);

/// 4 pi^2 sum_i (f_i - f_{i+1})^2: the path-graph smoothness budget implied
/// by real samples.
double quadratic_variation_bound(const Eigen::VectorXd& f_samples);

/// 8 pi^2 M^2 / n, the uniform-grid budget for an M-Lipschitz f.
inline double lipschitz_budget(double lipschitz_M, int n) {
  return 8.0 * std::numbers::pi * std::numbers::pi * lipschitz_M * lipschitz_M / n;
}

/// ||u - v||_2^2 over C^n.
template <typename DerivedA, typename DerivedB>
double squared_distance(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  return (u - v).squaredNorm();
}

double mse(const TorusSignal& u, const TorusSignal& v);

/// CSV `i,re,im` (1-based i).
std::string signal_csv(const TorusSignal& s);
/// Parses `i,re,im`. With `require_torus`, entries must be unit modulus to
/// `tolerance`; the returned signal then carries the torus flag.
TorusSignal parse_signal_csv(std::string_view text, bool require_torus, double tolerance = 1e-9);

/// CSV `i,x,f`.
std::string samples_csv(const Eigen::VectorXd& grid, const Eigen::VectorXd& f_samples);

}  // namespace moddenoise

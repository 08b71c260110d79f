#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "moddenoise/graph.hpp"
#include "moddenoise/signal.hpp"
#include "moddenoise/spectral.hpp"

namespace moddenoise {

enum class UcqpBackend { spectral, direct };
enum class Method { ucqp, trs };

std::string_view to_string(UcqpBackend backend) noexcept;
std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view name);

struct UcqpSolution {
  ComplexVector g_hat;
  double gamma = 0.0;
  UcqpBackend backend = UcqpBackend::spectral;
  /// ||(I + gamma L) g_hat - z|| / ||z||
  double residual = 0.0;
};

struct TrsSolution {
  ComplexVector g_hat;
  double mu_star = 0.0;
  double gamma = 0.0;
  /// ||(2 gamma L + mu* I) g_hat - 2 z|| / ||z||
  double kkt_residual = 0.0;
  /// | ||g_hat||^2 - n |
  double norm_gap = 0.0;
  int iterations = 0;
};

/// Coefficients a_j = <q_j, z> (column j-1), computed as Q^T [Re z, Im z].
template <typename Derived>
ComplexVector eigen_coefficients(const SpectralDecomposition& spec,
                                 const Eigen::MatrixBase<Derived>& z) {
  Eigen::MatrixXd parts(z.size(), 2);
  parts.col(0) = z.real();
  parts.col(1) = z.imag();
  const Eigen::MatrixXd c = spec.eigenvectors().transpose() * parts;
  ComplexVector a(c.rows());
  a.real() = c.col(0);
  a.imag() = c.col(1);
  return a;
}

/// Q a for complex coefficients a.
ComplexVector synthesize(const SpectralDecomposition& spec, const ComplexVector& a);

/// Real symmetric matrix times complex vector, without promoting the matrix.
template <typename DerivedM, typename DerivedV>
ComplexVector real_times_complex(const Eigen::MatrixBase<DerivedM>& m,
                                 const Eigen::MatrixBase<DerivedV>& v) {
  ComplexVector out(m.rows());
  out.real() = m * v.real();
  out.imag() = m * v.imag();
  return out;
}

/// ||g - z||^2 + gamma g* L g
template <typename DerivedG, typename DerivedZ>
double tikhonov_objective(const Eigen::MatrixBase<DerivedG>& g, const Eigen::MatrixBase<DerivedZ>& z,
                          const Eigen::MatrixXd& lap, double gamma) {
  const ComplexVector lg = real_times_complex(lap, g);
  return (g - z).squaredNorm() + gamma * g.dot(lg).real();
}

/// g_hat = (I + gamma L)^{-1} z. The spectral backend filters the
/// eigen-coefficients by 1/(1 + gamma lambda_j); the direct backend runs a
/// Cholesky solve on I + gamma L.
UcqpSolution solve_ucqp(const TorusSignal& z, const SpectralDecomposition& spec, double gamma,
                        UcqpBackend backend = UcqpBackend::spectral);

/// phi(mu) = ||2 (2 gamma L + mu I)^{-1} z||^2 in the eigenbasis:
/// 4 sum_j w_j / (2 gamma lambda_j + mu)^2 with w_j = |<q_j, z>|^2.
class SecularFunction {
 public:
  SecularFunction(const SpectralDecomposition& spec, const ComplexVector& coefficients,
                  double gamma);

  double operator()(double mu) const;
  double derivative(double mu) const;

  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  const Eigen::VectorXd& shifts() const noexcept { return shifts_; }

 private:
  Eigen::VectorXd weights_;
  Eigen::VectorXd shifts_;
};

double trs_secular(double mu, const TorusSignal& z, const SpectralDecomposition& spec,
                   double gamma);

/// min ||g - z||^2 + gamma g* L g subject to ||g||^2 = n.
///
/// Solves phi(mu) = n for mu* by Newton's method on 1/sqrt(phi) - 1/sqrt(n)
/// inside a bisection bracket. Stops when |phi - n|/n <= tol or the bracket
/// is narrower than 1e-14; 200 iterations at most.
/// Throws ErrorKind::degeneracy when |<z, q_n>| < 1e-12 sqrt(n).
TrsSolution solve_trs(const TorusSignal& z, const SpectralDecomposition& spec, double gamma,
                      double tol = 1e-12);

/// Entrywise g_i / |g_i|; an exact zero maps to 1.
template <typename Derived>
TorusSignal project_to_torus(const Eigen::MatrixBase<Derived>& g) {
  ComplexVector out(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const std::complex<double> v = g(i);
    const double r = std::abs(v);
    out(i) = r > 0.0 ? v / r : std::complex<double>(1.0, 0.0);
  }
  return TorusSignal::on_torus(std::move(out));
}

/// Solver followed by projection onto the torus.
TorusSignal denoise(const TorusSignal& z, const SpectralDecomposition& spec, double gamma,
                    Method method);
TorusSignal denoise(const TorusSignal& z, const Graph& g, double gamma, Method method);

}  // namespace moddenoise

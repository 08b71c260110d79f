#include "moddenoise/solvers.hpp"

#include <cmath>
#include <sstream>

#include "moddenoise/errors.hpp"

namespace moddenoise {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kBracketWidth = 1e-14;
constexpr double kDegeneracy = 1e-12;

void check_sizes(const TorusSignal& z, const SpectralDecomposition& spec) {
  if (z.size() != spec.size()) {
    throw Error(ErrorKind::validation, "signal length " + std::to_string(z.size()) +
                                           " does not match graph size " +
                                           std::to_string(spec.size()));
  }
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    std::ostringstream msg;
    msg << "gamma must be finite and >= 0, got " << gamma;
    throw Error(ErrorKind::parameter, msg.str());
  }
}

double relative_norm(const ComplexVector& r, const ComplexVector& z) {
  const double zn = z.norm();
  return zn > 0.0 ? r.norm() / zn : r.norm();
}

}  // namespace

std::string_view to_string(UcqpBackend backend) noexcept {
  return backend == UcqpBackend::spectral ? "spectral" : "direct";
}

std::string_view to_string(Method method) noexcept {
  return method == Method::ucqp ? "ucqp" : "trs";
}

Method parse_method(std::string_view name) {
  if (name == "ucqp") return Method::ucqp;
  if (name == "trs") return Method::trs;
  throw Error(ErrorKind::validation, "unknown method '" + std::string(name) +
                                         "' (expected ucqp or trs)");
}

ComplexVector synthesize(const SpectralDecomposition& spec, const ComplexVector& a) {
  return real_times_complex(spec.eigenvectors(), a);
}

UcqpSolution solve_ucqp(const TorusSignal& z, const SpectralDecomposition& spec, double gamma,
                        UcqpBackend backend) {
  check_sizes(z, spec);
  check_gamma(gamma);
  UcqpSolution sol;
  sol.gamma = gamma;
  sol.backend = backend;
  if (gamma == 0.0) {
    sol.g_hat = z.values();
    return sol;
  }
  const int n = spec.size();
  if (backend == UcqpBackend::spectral) {
    ComplexVector a = eigen_coefficients(spec, z.values());
    a.array() /= (1.0 + gamma * spec.eigenvalues().array()).cast<std::complex<double>>();
    sol.g_hat = synthesize(spec, a);
  } else {
    Eigen::MatrixXd system = gamma * spec.laplacian();
    system.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorKind::numerical, "Cholesky factorization of I + gamma L failed (n=" +
                                            std::to_string(n) + ")");
    }
    Eigen::MatrixXd rhs(n, 2);
    rhs.col(0) = z.values().real();
    rhs.col(1) = z.values().imag();
    const Eigen::MatrixXd x = llt.solve(rhs);
    sol.g_hat.resize(n);
    sol.g_hat.real() = x.col(0);
    sol.g_hat.imag() = x.col(1);
  }
  const ComplexVector r =
      sol.g_hat + gamma * real_times_complex(spec.laplacian(), sol.g_hat) - z.values();
  sol.residual = relative_norm(r, z.values());
  return sol;
}

SecularFunction::SecularFunction(const SpectralDecomposition& spec,
                                 const ComplexVector& coefficients, double gamma)
    : weights_(coefficients.cwiseAbs2()), shifts_(2.0 * gamma * spec.eigenvalues()) {}

double SecularFunction::operator()(double mu) const {
  return 4.0 * (weights_.array() / (shifts_.array() + mu).square()).sum();
}

double SecularFunction::derivative(double mu) const {
  return -8.0 * (weights_.array() / (shifts_.array() + mu).cube()).sum();
}

double trs_secular(double mu, const TorusSignal& z, const SpectralDecomposition& spec,
                   double gamma) {
  check_sizes(z, spec);
  check_gamma(gamma);
  if (!(mu > 0.0)) {
    std::ostringstream msg;
    msg << "secular function needs mu > 0, got " << mu;
    throw Error(ErrorKind::domain, msg.str());
  }
  return SecularFunction(spec, eigen_coefficients(spec, z.values()), gamma)(mu);
}

TrsSolution solve_trs(const TorusSignal& z, const SpectralDecomposition& spec, double gamma,
                      double tol) {
  check_sizes(z, spec);
  check_gamma(gamma);
  if (!(tol > 0.0)) throw Error(ErrorKind::parameter, "tolerance must be positive");

  const int n = spec.size();
  const double target = static_cast<double>(n);
  const ComplexVector a = eigen_coefficients(spec, z.values());
  const double null_part = std::abs(a(n - 1));
  if (null_part < kDegeneracy * std::sqrt(target)) {
    std::ostringstream msg;
    msg << "z is orthogonal to the Laplacian null space (|<z, q_n>| = " << null_part
        << "); the sphere-constrained problem has no interior multiplier";
    throw Error(ErrorKind::degeneracy, msg.str());
  }

  const SecularFunction phi(spec, a, gamma);
  auto converged = [&](double value) { return std::abs(value - target) / target <= tol; };

  double mu = 2.0;
  double value = phi(mu);
  int iterations = 0;
  if (!converged(value)) {
    double lo = 2.0;
    double hi = 2.0;
    if (value < target) {
      lo = 1.0;
      while (phi(lo) <= target) {
        lo *= 0.5;
        if (lo < 1e-300) {
          throw Error(ErrorKind::numerical, "could not bracket the secular root below mu=2");
        }
      }
    } else {
      hi = 4.0;
      while (phi(hi) >= target) {
        hi *= 2.0;
        if (!std::isfinite(hi) || hi > 1e300) {
          throw Error(ErrorKind::numerical, "could not bracket the secular root above mu=2");
        }
      }
    }
    const double inv_root_target = 1.0 / std::sqrt(target);
    mu = 0.5 * (lo + hi);
    bool done = false;
    while (iterations < kMaxIterations) {
      ++iterations;
      value = phi(mu);
      if (converged(value)) {
        done = true;
        break;
      }
      if (value > target) {
        lo = mu;
      } else {
        hi = mu;
      }
      if (hi - lo <= kBracketWidth * std::max(1.0, hi)) {
        mu = 0.5 * (lo + hi);
        value = phi(mu);
        done = true;
        break;
      }
      // psi(mu) = phi^{-1/2} - n^{-1/2} is close to linear near the root.
      const double psi = 1.0 / std::sqrt(value) - inv_root_target;
      const double dpsi = -0.5 * phi.derivative(mu) / (value * std::sqrt(value));
      double next = mu - psi / dpsi;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      mu = next;
    }
    if (!done) {
      std::ostringstream msg;
      msg << "secular root finder did not converge in " << kMaxIterations
          << " iterations: bracket [" << lo << ", " << hi << "], phi(mu)/n = " << value / target;
      throw Error(ErrorKind::numerical, msg.str());
    }
  }

  TrsSolution sol;
  sol.mu_star = mu;
  sol.gamma = gamma;
  sol.iterations = iterations;
  if (gamma == 0.0) {
    sol.g_hat = (2.0 / mu) * z.values();
  } else {
    ComplexVector c = a;
    c.array() *= (2.0 / (phi.shifts().array() + mu)).cast<std::complex<double>>();
    sol.g_hat = synthesize(spec, c);
  }
  const ComplexVector r = 2.0 * gamma * real_times_complex(spec.laplacian(), sol.g_hat) +
                          mu * sol.g_hat - 2.0 * z.values();
  sol.kkt_residual = relative_norm(r, z.values());
  sol.norm_gap = std::abs(sol.g_hat.squaredNorm() - target);
  return sol;
}

TorusSignal denoise(const TorusSignal& z, const SpectralDecomposition& spec, double gamma,
                    Method method) {
  if (method == Method::ucqp) return project_to_torus(solve_ucqp(z, spec, gamma).g_hat);
  return project_to_torus(solve_trs(z, spec, gamma).g_hat);
}

TorusSignal denoise(const TorusSignal& z, const Graph& g, double gamma, Method method) {
  return denoise(z, spectral_decomposition(g), gamma, method);
}

}  // namespace moddenoise

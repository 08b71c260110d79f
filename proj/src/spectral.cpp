#include "moddenoise/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "moddenoise/errors.hpp"
#include "moddenoise/io.hpp"

namespace moddenoise {

namespace {

constexpr double kSignThreshold = 1e-12;

double spectral_tolerance(const Eigen::VectorXd& eigenvalues) {
  return 1e-9 * std::max(1.0, eigenvalues(0));
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(Eigen::VectorXd eigenvalues,
                                             Eigen::MatrixXd eigenvectors,
                                             Eigen::MatrixXd laplacian, int max_degree)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      laplacian_(std::move(laplacian)),
      max_degree_(max_degree) {}

double SpectralDecomposition::reconstruction_residual() const {
  const Eigen::MatrixXd rebuilt =
      eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
  const double denom = laplacian_.norm();
  return denom > 0 ? (laplacian_ - rebuilt).norm() / denom : (laplacian_ - rebuilt).norm();
}

SpectralDecomposition spectral_decomposition(const Graph& g) {
  const int n = g.size();
  Eigen::MatrixXd lap = g.laplacian();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Laplacian eigensolver did not converge (n=" << n << ", edges=" << g.edges().size()
        << ", info=" << static_cast<int>(solver.info()) << ")";
    throw Error(ErrorKind::numerical, msg.str());
  }

  Eigen::VectorXd values = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  const double tol = spectral_tolerance(values);
  if (std::abs(values(n - 1)) > tol) {
    std::ostringstream msg;
    msg << "smallest Laplacian eigenvalue " << values(n - 1) << " is not zero";
    throw Error(ErrorKind::numerical, msg.str());
  }
  if (!(values(n - 2) > tol)) {
    std::ostringstream msg;
    msg << "Fiedler value " << values(n - 2) << " is not positive; graph not connected?";
    throw Error(ErrorKind::numerical, msg.str());
  }

  values(n - 1) = 0.0;
  vectors.col(n - 1).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (int j = 0; j + 1 < n; ++j) {
    auto col = vectors.col(j);
    for (int i = 0; i < n; ++i) {
      if (std::abs(col(i)) > kSignThreshold) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
  }
  return SpectralDecomposition(std::move(values), std::move(vectors), std::move(lap),
                               g.max_degree());
}

Eigen::VectorXd analytic_spectrum(GraphFamily family, int n) {
  if (n < 2) {
    throw Error(ErrorKind::validation, "invalid graph size n=" + std::to_string(n));
  }
  Eigen::VectorXd values(n);
  switch (family) {
    case GraphFamily::path:
      for (int j = 1; j <= n; ++j) {
        const double s = std::sin(std::numbers::pi * (n - j) / (2.0 * n));
        values(j - 1) = 4.0 * s * s;
      }
      break;
    case GraphFamily::complete:
      values.setConstant(static_cast<double>(n));
      break;
    case GraphFamily::star:
      values.setOnes();
      values(0) = static_cast<double>(n);
      break;
    case GraphFamily::custom:
      throw Error(ErrorKind::unsupported, "no closed-form spectrum for custom graphs");
  }
  values(n - 1) = 0.0;
  return values;
}

SpectralIndexSets spectral_sets(const SpectralDecomposition& spec, double cutoff) {
  const int n = spec.size();
  const double tol = spectral_tolerance(spec.eigenvalues());
  if (!std::isfinite(cutoff) || cutoff < spec.lambda_min() - tol ||
      cutoff > spec.lambda_max() + tol) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " outside [lambda_min, lambda_1] = [" << spec.lambda_min()
        << ", " << spec.lambda_max() << "]";
    throw Error(ErrorKind::range, msg.str());
  }
  SpectralIndexSets sets;
  sets.threshold = cutoff;
  for (int j = 1; j <= n - 1; ++j) {
    if (spec.lambda(j) < cutoff - tol) {
      sets.low.push_back(j);
    } else {
      sets.high.push_back(j);
    }
  }
  return sets;
}

std::string spectrum_csv(const Eigen::VectorXd& eigenvalues) {
  std::ostringstream out;
  out << "j,lambda_j\n";
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
    out << (j + 1) << ',' << format_double(eigenvalues(j)) << '\n';
  }
  return out.str();
}

}  // namespace moddenoise

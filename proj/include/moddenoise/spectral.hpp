#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moddenoise/graph.hpp"

namespace moddenoise {

/// Eigen-decomposition of a connected graph's Laplacian.
///
/// Indexing is descending: index 0 holds lambda_1 (the largest eigenvalue)
/// and index n-1 holds lambda_n = 0. Eigen's SelfAdjointEigenSolver returns
/// ascending order, so position p here is position n-1-p there. With
/// `lambda(j)` / `q(j)` the 1-based label j of the bound formulas maps
/// straight onto this storage.
///
/// The null-space pair is pinned exactly: lambda_n = 0 and
/// q_n = (1, ..., 1) / sqrt(n). Every other column has its first entry with
/// magnitude above 1e-12 positive. Within a repeated eigenvalue the basis is
/// whatever the solver produced; compare projectors, not columns.
class SpectralDecomposition {
 public:
  SpectralDecomposition(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors,
                        Eigen::MatrixXd laplacian, int max_degree);

  int size() const noexcept { return static_cast<int>(eigenvalues_.size()); }

  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }
  const Eigen::MatrixXd& laplacian() const noexcept { return laplacian_; }

  /// 1-based accessors following the descending convention.
  double lambda(int j) const { return eigenvalues_(j - 1); }
  Eigen::MatrixXd::ConstColXpr q(int j) const { return eigenvectors_.col(j - 1); }

  double lambda_max() const { return eigenvalues_(0); }
  /// Fiedler value lambda_{n-1}.
  double lambda_min() const { return eigenvalues_(size() - 2); }
  int max_degree() const noexcept { return max_degree_; }

  /// ||L - Q diag(lambda) Q^T||_F / ||L||_F.
  double reconstruction_residual() const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::MatrixXd laplacian_;
  int max_degree_ = 0;
};

/// Dense symmetric eigensolve of L. Intended for n up to a few thousand.
SpectralDecomposition spectral_decomposition(const Graph& g);

/// Closed-form Laplacian spectrum in descending order:
///   path:     lambda_j = 4 sin^2(pi (n - j) / (2n))
///   complete: n (n-1 times), then 0
///   star:     n, 1 (n-2 times), then 0
Eigen::VectorXd analytic_spectrum(GraphFamily family, int n);

/// Frequency split at a cutoff: low = {j in [n-1] : lambda_j < cutoff},
/// high = {j in [n-1] : lambda_j >= cutoff}. Indices are 1-based; n is in
/// neither set.
struct SpectralIndexSets {
  std::vector<int> low;
  std::vector<int> high;
  double threshold = 0.0;

  int low_size() const noexcept { return static_cast<int>(low.size()); }
};

/// Comparisons use a relative tolerance of 1e-9 * max(1, lambda_1), so an
/// eigenvalue that equals the cutoff up to round-off counts as "high".
/// Throws ErrorKind::range when the cutoff lies outside [lambda_min, lambda_1].
SpectralIndexSets spectral_sets(const SpectralDecomposition& spec, double cutoff);

/// CSV with header `j,lambda_j`.
std::string spectrum_csv(const Eigen::VectorXd& eigenvalues);

}  // namespace moddenoise

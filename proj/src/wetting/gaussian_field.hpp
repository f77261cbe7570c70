#pragma once

#include "wetting/lattice.hpp"
#include "wetting/numerics.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace wetting {

/// A height function on every site of a box. Boundary entries act as the
/// fixed boundary condition; interior entries are the free field values.
class FieldConfig {
public:
  explicit FieldConfig(std::shared_ptr<const BoxLattice> lattice, double fill = 0.0);

  const BoxLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const BoxLattice>& lattice_ptr() const { return lattice_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](SiteId s) { return values_[s]; }
  double operator[](SiteId s) const { return values_[s]; }

  std::vector<double> interior_values() const;
  void set_boundary(double value);

private:
  std::shared_ptr<const BoxLattice> lattice_;
  std::vector<double> values_;
};

struct GaussianSolveOptions {
  /// Interior sizes up to this use a sparse Cholesky factorization; above it,
  /// conjugate gradients with random right-hand sides.
  std::size_t factorization_threshold = 65536;
  double cg_tolerance = 1e-13;
  int cg_max_iterations = 20000;
};

/// Interior Dirichlet Laplacian of a box: 2d on the diagonal, -1 between
/// interior neighbours. Its inverse is the zero-boundary free-field covariance.
///
/// Immutable after construction apart from a lazily filled variance cache
/// (guarded), so one instance can be shared across workers.
class GaussianSolve {
public:
  explicit GaussianSolve(std::shared_ptr<const BoxLattice> lattice,
                         GaussianSolveOptions options = {});

  const BoxLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const BoxLattice>& lattice_ptr() const { return lattice_; }
  bool uses_factorization() const { return llt_.has_value(); }
  const Eigen::SparseMatrix<double>& precision() const { return precision_; }

  /// Solves precision * x = rhs over interior flat ids. Throws NumericalError
  /// if the relative residual exceeds 1e-10.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// Interior values equal to the average of their 2d neighbours, with the
  /// boundary entries of `boundary` held fixed.
  FieldConfig harmonic_extension(const FieldConfig& boundary) const;

  /// Centered Gaussian vector over interior flat ids with covariance
  /// precision^{-1}.
  Eigen::VectorXd sample_fluctuation(Rng& rng) const;

  /// harmonic_extension(boundary) + sample_fluctuation(rng).
  FieldConfig sample(const FieldConfig& boundary, Rng& rng) const;

  /// Entry (x, y) of the inverse Laplacian; both sites must be interior.
  double green(SiteId x, SiteId y) const;
  /// Column y of the inverse Laplacian over interior flat ids.
  Eigen::VectorXd green_column(SiteId y) const;
  /// Zero-boundary marginal variance of every interior site (flat order).
  const std::vector<double>& diag_variances() const;

private:
  std::shared_ptr<const BoxLattice> lattice_;
  GaussianSolveOptions options_;
  Eigen::SparseMatrix<double> precision_;
  std::optional<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> llt_;
  mutable std::once_flag diag_once_;
  mutable std::vector<double> diag_;
};

/// Zero-boundary variance at the near-centre site of the corner box of side L.
double center_variance(int dim, int side, const GaussianSolveOptions& options = {});

struct SigmaSpec {
  /// Box sides for the Dirichlet sequence; consecutive entries should double.
  std::vector<int> sides{8, 16, 32, 64};
};

struct SigmaEstimate {
  double value = 0.0; ///< extrapolated infinite-volume variance (implemented Hamiltonian)
  double error = 0.0; ///< |last Richardson estimate - previous one|
  double walk_value = 0.0; ///< value * 2d: expected visits of simple random walk
  double walk_error = 0.0;
  std::vector<int> sides;
  std::vector<double> center_variances; ///< c_L for each side
  std::vector<double> richardson;       ///< estimate from each consecutive pair
};

/// Infinite-volume one-site variance from Dirichlet boxes, using Richardson
/// steps against the L^{-(d-2)} finite-size correction. Requires d >= 3.
SigmaEstimate sigma_d_sq(int dim, const SigmaSpec& spec = {});

/// Expected number of visits to the start site by a simple random walk killed
/// on leaving the interior of the corner box of side L, started at its
/// near-centre site. Monte Carlo estimate with its standard error.
struct VisitEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t walks = 0;
};
VisitEstimate killed_walk_visits(int dim, int side, std::size_t walks, std::uint64_t seed);

} // namespace wetting

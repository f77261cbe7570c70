#include "wetting/gaussian_field.hpp"

#include "wetting/errors.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <sstream>

namespace wetting {

FieldConfig::FieldConfig(std::shared_ptr<const BoxLattice> lattice, double fill)
    : lattice_(std::move(lattice)), values_(lattice_->site_count(), fill) {}

std::vector<double> FieldConfig::interior_values() const {
  std::vector<double> out;
  out.reserve(lattice_->interior_count());
  for (SiteId s : lattice_->interior_sites())
    out.push_back(values_[s]);
  return out;
}

void FieldConfig::set_boundary(double value) {
  for (SiteId s : lattice_->boundary_sites())
    values_[s] = value;
}

namespace {

Eigen::SparseMatrix<double> build_precision(const BoxLattice& lat) {
  const auto n = static_cast<Eigen::Index>(lat.interior_count());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * (2 * lat.dim() + 1));
  for (Eigen::Index f = 0; f < n; ++f) {
    trips.emplace_back(f, f, 2.0 * lat.dim());
    for (SiteId y : lat.interior_neighbors(static_cast<std::size_t>(f))) {
      const long g = lat.flat_id(y);
      if (g >= 0)
        trips.emplace_back(f, g, -1.0);
    }
  }
  Eigen::SparseMatrix<double> q(n, n);
  q.setFromTriplets(trips.begin(), trips.end());
  return q;
}

} // namespace

GaussianSolve::GaussianSolve(std::shared_ptr<const BoxLattice> lattice,
                             GaussianSolveOptions options)
    : lattice_(std::move(lattice)), options_(options), precision_(build_precision(*lattice_)) {
  if (lattice_->interior_count() <= options_.factorization_threshold) {
    llt_.emplace(precision_);
    if (llt_->info() != Eigen::Success)
      throw NumericalError("sparse Cholesky factorization of the Dirichlet Laplacian failed");
  }
}

Eigen::VectorXd GaussianSolve::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x;
  if (llt_) {
    x = llt_->solve(rhs);
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(options_.cg_tolerance);
    cg.setMaxIterations(options_.cg_max_iterations);
    cg.compute(precision_);
    x = cg.solve(rhs);
  }
  const double bnorm = rhs.norm();
  const double res = (precision_ * x - rhs).norm();
  if (bnorm > 0.0 && res > 1e-10 * bnorm) {
    std::ostringstream msg;
    msg << "Dirichlet solve did not converge: relative residual " << res / bnorm;
    throw NumericalError(msg.str());
  }
  return x;
}

FieldConfig GaussianSolve::harmonic_extension(const FieldConfig& boundary) const {
  const BoxLattice& lat = *lattice_;
  const auto n = static_cast<Eigen::Index>(lat.interior_count());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (Eigen::Index f = 0; f < n; ++f)
    for (SiteId y : lat.interior_neighbors(static_cast<std::size_t>(f)))
      if (!lat.is_interior(y))
        rhs[f] += boundary[y];
  const Eigen::VectorXd m = solve(rhs);
  FieldConfig out = boundary;
  for (Eigen::Index f = 0; f < n; ++f)
    out[lat.interior_site(static_cast<std::size_t>(f))] = m[f];
  return out;
}

Eigen::VectorXd GaussianSolve::sample_fluctuation(Rng& rng) const {
  const BoxLattice& lat = *lattice_;
  const auto n = static_cast<Eigen::Index>(lat.interior_count());
  if (llt_) {
    // precision = P^{-1} L L^T P, so P^{-1} L^{-T} z has covariance precision^{-1}.
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i)
      z[i] = rng.normal();
    Eigen::VectorXd y = llt_->matrixU().solve(z);
    return llt_->permutationPinv() * y;
  }
  // precision = B^T B with one row of B per edge touching the interior; the
  // solve of precision x = B^T zeta therefore has covariance precision^{-1}.
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (Eigen::Index f = 0; f < n; ++f) {
    for (SiteId y : lat.interior_neighbors(static_cast<std::size_t>(f))) {
      const long g = lat.flat_id(y);
      if (g >= 0 && g < f)
        continue; // interior edge already drawn from its lower endpoint
      const double zeta = rng.normal();
      rhs[f] += zeta;
      if (g >= 0)
        rhs[g] -= zeta;
    }
  }
  return solve(rhs);
}

FieldConfig GaussianSolve::sample(const FieldConfig& boundary, Rng& rng) const {
  FieldConfig out = harmonic_extension(boundary);
  const Eigen::VectorXd eta = sample_fluctuation(rng);
  for (Eigen::Index f = 0; f < eta.size(); ++f)
    out[lattice_->interior_site(static_cast<std::size_t>(f))] += eta[f];
  return out;
}

Eigen::VectorXd GaussianSolve::green_column(SiteId y) const {
  const long g = lattice_->flat_id(y);
  if (g < 0)
    throw ContractViolation("green function arguments must be interior sites");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lattice_->interior_count()));
  e[g] = 1.0;
  return solve(e);
}

double GaussianSolve::green(SiteId x, SiteId y) const {
  const long f = lattice_->flat_id(x);
  if (f < 0)
    throw ContractViolation("green function arguments must be interior sites");
  return green_column(y)[f];
}

const std::vector<double>& GaussianSolve::diag_variances() const {
  std::call_once(diag_once_, [this] {
    const auto n = lattice_->interior_count();
    diag_.resize(n);
    for (std::size_t f = 0; f < n; ++f)
      diag_[f] = green_column(lattice_->interior_site(f))[static_cast<Eigen::Index>(f)];
  });
  return diag_;
}

double center_variance(int dim, int side, const GaussianSolveOptions& options) {
  auto lat = std::make_shared<const BoxLattice>(dim, side, OriginMode::corner);
  GaussianSolveOptions opts = options;
  opts.factorization_threshold = std::min<std::size_t>(opts.factorization_threshold, 4096);
  const GaussianSolve solve(lat, opts);
  const SiteId c = lat->center();
  return solve.green(c, c);
}

SigmaEstimate sigma_d_sq(int dim, const SigmaSpec& spec) {
  if (dim < 3)
    throw DomainError("sigma_d^2 is finite only for d >= 3");
  if (spec.sides.size() < 3)
    throw DomainError("sigma_d^2 extrapolation needs at least three box sides");
  SigmaEstimate est;
  est.sides = spec.sides;
  for (int side : spec.sides)
    est.center_variances.push_back(center_variance(dim, side));
  const double p = dim - 2.0;
  for (std::size_t i = 1; i < spec.sides.size(); ++i) {
    const double ratio = std::pow(static_cast<double>(spec.sides[i]) / spec.sides[i - 1], p);
    est.richardson.push_back((ratio * est.center_variances[i] - est.center_variances[i - 1]) /
                             (ratio - 1.0));
  }
  const auto k = est.richardson.size();
  est.value = est.richardson[k - 1];
  est.error = std::abs(est.richardson[k - 1] - est.richardson[k - 2]);
  est.walk_value = est.value * 2.0 * dim;
  est.walk_error = est.error * 2.0 * dim;
  return est;
}

VisitEstimate killed_walk_visits(int dim, int side, std::size_t walks, std::uint64_t seed) {
  if (dim < 1 || side < 2)
    throw DomainError("killed_walk_visits needs d >= 1 and side >= 2");
  const int start = side / 2;
  Rng rng(seed);
  std::vector<int> pos(dim);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t w = 0; w < walks; ++w) {
    std::fill(pos.begin(), pos.end(), start);
    int at_start_offsets = 0; // number of coordinates away from start
    long visits = 1;
    std::uint64_t bits = 0;
    int bits_left = 0;
    while (true) {
      int dir;
      do {
        if (bits_left < 3) {
          bits = rng.bits();
          bits_left = 64;
        }
        dir = static_cast<int>(bits & 7u);
        bits >>= 3;
        bits_left -= 3;
      } while (dir >= 2 * dim);
      const int axis = dir >> 1;
      const int before = pos[axis];
      pos[axis] += (dir & 1) ? 1 : -1;
      if (pos[axis] == 0 || pos[axis] == side)
        break;
      if (before == start)
        ++at_start_offsets;
      else if (pos[axis] == start)
        --at_start_offsets;
      if (at_start_offsets == 0)
        ++visits;
    }
    sum += static_cast<double>(visits);
    sum_sq += static_cast<double>(visits) * static_cast<double>(visits);
  }
  const double n = static_cast<double>(walks);
  VisitEstimate est;
  est.walks = walks;
  est.mean = sum / n;
  est.std_error = walks > 1 ? std::sqrt(std::max(0.0, sum_sq / n - est.mean * est.mean) / (n - 1.0))
                            : 0.0;
  return est;
}

} // namespace wetting

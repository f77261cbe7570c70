#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace wetting {

/// Welford accumulator.
class RunningStats {
public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 with fewer than two points.
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Variance of the mean of a correlated series by non-overlapping batch means.
double batch_means_variance(std::span<const double> series, std::size_t batches = 20);

/// Replica summary for a quantity measured along one chain per replica.
struct ReplicaSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::size_t replicas = 0;
};

/// Collects per-replica time series and combines them. The variance of the
/// grand mean is the larger of the between-replica estimate (which already
/// contains the within-chain part by the law of total variance) and the
/// pooled batch-means estimate (which stays meaningful for few replicas).
class ReplicaAccumulator {
public:
  void add_replica(std::span<const double> series);
  ReplicaSummary summary() const;

private:
  RunningStats between_;
  double within_sum_ = 0.0;
  std::size_t samples_ = 0;
};

} // namespace wetting

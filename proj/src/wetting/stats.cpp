#include "wetting/stats.hpp"

#include <algorithm>

namespace wetting {

double batch_means_variance(std::span<const double> series, std::size_t batches) {
  const std::size_t n = series.size();
  if (n < 2)
    return 0.0;
  batches = std::clamp<std::size_t>(batches, 2, n);
  const std::size_t len = n / batches;
  RunningStats bm;
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i)
      s += series[i];
    bm.add(s / static_cast<double>(len));
  }
  return bm.variance() / static_cast<double>(batches);
}

void ReplicaAccumulator::add_replica(std::span<const double> series) {
  double s = 0.0;
  for (double x : series)
    s += x;
  between_.add(series.empty() ? 0.0 : s / static_cast<double>(series.size()));
  within_sum_ += batch_means_variance(series);
  samples_ += series.size();
}

ReplicaSummary ReplicaAccumulator::summary() const {
  ReplicaSummary out;
  out.replicas = between_.count();
  out.samples = samples_;
  out.mean = between_.mean();
  if (out.replicas == 0)
    return out;
  const double r = static_cast<double>(out.replicas);
  const double between = out.replicas > 1 ? between_.variance() / r : 0.0;
  const double within = within_sum_ / (r * r);
  out.std_error = std::sqrt(std::max(between, within));
  return out;
}

} // namespace wetting

#include "wetting/reduced.hpp"

#include "wetting/errors.hpp"
#include "wetting/numerics.hpp"
#include "wetting/stats.hpp"

#include <algorithm>
#include <cmath>

namespace wetting {

namespace {

struct FreeField {
  Eigen::VectorXd mu;  // mean on interior flat ids
  Eigen::MatrixXd cov; // dense covariance
  Eigen::VectorXd sd;
};

FreeField free_field_moments(const GaussianSolve& solve, const FieldConfig& boundary) {
  const BoxLattice& lat = solve.lattice();
  const auto n = static_cast<Eigen::Index>(lat.interior_count());
  FreeField ff;
  const FieldConfig mean = solve.harmonic_extension(boundary);
  ff.mu.resize(n);
  ff.cov.resize(n, n);
  for (Eigen::Index f = 0; f < n; ++f) {
    const SiteId s = lat.interior_site(static_cast<std::size_t>(f));
    ff.mu[f] = mean[s];
    ff.cov.col(f) = solve.green_column(s);
  }
  ff.sd = ff.cov.diagonal().cwiseSqrt();
  return ff;
}

/// Draw of the free field given phi_x = target, by correcting an unconditional
/// fluctuation along the covariance column of x.
void conditional_draw(const FreeField& ff, const GaussianSolve& solve, Eigen::Index x,
                      double target, Rng& rng, Eigen::VectorXd& out) {
  const Eigen::VectorXd eta = solve.sample_fluctuation(rng);
  out = ff.mu + eta;
  out += ff.cov.col(x) * ((target - out[x]) / ff.cov(x, x));
  out[x] = target;
}

double indicator_p_delta(double v) { return (v >= 0.0 && v <= 1.0) ? 1.0 : 0.0; }

} // namespace

ReducedQStructure reduced_q_structure(const ModelParams& params, const FieldConfig& boundary,
                                      const ReducedQSpec& spec, std::uint64_t seed) {
  params.validate();
  if (params.window.width != 1.0 || params.window.scale != 1.0)
    throw DomainError("the one-contact partition function uses the unit pinning band");
  if (spec.samples < 2)
    throw DomainError("reduced_Q needs at least two samples per site");

  const BoxLattice& lat = boundary.lattice();
  const GaussianSolve solve(boundary.lattice_ptr());
  const FreeField ff = free_field_moments(solve, boundary);
  const auto n = static_cast<Eigen::Index>(lat.interior_count());

  ReducedQStructure st;
  st.height = params.boundary.height;
  st.good_boundary = true;
  for (SiteId s : lat.boundary_sites())
    if (!(boundary[s] > 0.5 * st.height))
      st.good_boundary = false;

  std::vector<SiteId> fixed_low;
  for (SiteId s : lat.energy_window_sites()) {
    st.sites.push_back(s);
    const long f = lat.flat_id(s);
    if (f >= 0) {
      const double mu = ff.mu[f];
      const double sd = ff.sd[f];
      st.p_delta.push_back(normal_mass(-mu / sd, (1.0 - mu) / sd));
      st.p_le1.push_back(normal_cdf((1.0 - mu) / sd));
      st.p_neg.push_back(normal_cdf(-mu / sd));
    } else {
      const double v = boundary[s];
      st.p_delta.push_back(indicator_p_delta(v));
      st.p_le1.push_back(v <= 1.0 ? 1.0 : 0.0);
      st.p_neg.push_back(v < 0.0 ? 1.0 : 0.0);
      if (v <= 1.0)
        fixed_low.push_back(s);
    }
  }
  st.one_contact.assign(st.sites.size(), 0.0);
  st.one_contact_se.assign(st.sites.size(), 0.0);
  if (fixed_low.size() >= 2)
    return st;

  Rng rng(seed);
  Eigen::VectorXd phi;

  // P(every free site > 1) = 1 - P(union of {phi_x <= 1}), Karp-Luby.
  double p_all_free_above = 1.0;
  double p_all_free_above_se = 0.0;
  {
    std::vector<double> p(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Eigen::Index f = 0; f < n; ++f) {
      p[f] = normal_cdf((1.0 - ff.mu[f]) / ff.sd[f]);
      total += p[f];
    }
    if (total > 0.0) {
      RunningStats inv_count;
      for (std::uint64_t k = 0; k < spec.samples; ++k) {
        double pick = rng.uniform() * total;
        Eigen::Index x = 0;
        while (x + 1 < n && pick >= p[x]) {
          pick -= p[x];
          ++x;
        }
        const double hi = (1.0 - ff.mu[x]) / ff.sd[x];
        const double target = ff.mu[x] + ff.sd[x] * truncated_normal_quantile(-kInf, hi, rng.uniform());
        conditional_draw(ff, solve, x, target, rng, phi);
        int count = 0;
        for (Eigen::Index f = 0; f < n; ++f)
          count += phi[f] <= 1.0 ? 1 : 0;
        inv_count.add(1.0 / std::max(count, 1));
      }
      const double un = total * inv_count.mean();
      p_all_free_above = std::clamp(1.0 - un, 0.0, 1.0);
      p_all_free_above_se = total * inv_count.std_error();
    }
    st.n_samples += spec.samples;
  }

  if (fixed_low.size() == 1) {
    const SiteId z = fixed_low.front();
    const auto it = std::find(st.sites.begin(), st.sites.end(), z);
    const auto i = static_cast<std::size_t>(it - st.sites.begin());
    if (boundary[z] >= 0.0) {
      st.one_contact[i] = p_all_free_above;
      st.one_contact_se[i] = p_all_free_above_se;
    }
    return st;
  }

  st.p_none = p_all_free_above;
  st.p_none_se = p_all_free_above_se;

  for (std::size_t i = 0; i < st.sites.size(); ++i) {
    const long x = lat.flat_id(st.sites[i]);
    if (x < 0 || st.p_delta[i] == 0.0)
      continue;
    const double lo = -ff.mu[x] / ff.sd[x];
    const double hi = (1.0 - ff.mu[x]) / ff.sd[x];
    RunningStats ok;
    for (std::uint64_t k = 0; k < spec.samples; ++k) {
      const double target = ff.mu[x] + ff.sd[x] * truncated_normal_quantile(lo, hi, rng.uniform());
      conditional_draw(ff, solve, x, target, rng, phi);
      bool clear = true;
      for (Eigen::Index f = 0; f < n && clear; ++f)
        if (f != x && phi[f] <= 1.0)
          clear = false;
      ok.add(clear ? 1.0 : 0.0);
    }
    st.one_contact[i] = st.p_delta[i] * ok.mean();
    st.one_contact_se[i] = st.p_delta[i] * ok.std_error();
    st.n_samples += spec.samples;
  }
  return st;
}

ReducedQ reduced_Q(const ReducedQStructure& st, std::span<const double> rewards) {
  double value = st.p_none;
  double var = st.p_none_se * st.p_none_se;
  for (std::size_t i = 0; i < st.sites.size(); ++i) {
    if (st.one_contact[i] == 0.0)
      continue;
    const double w = std::exp(rewards[st.sites[i]]);
    value += w * st.one_contact[i];
    var += w * w * st.one_contact_se[i] * st.one_contact_se[i];
  }
  return {value, std::sqrt(var), st.good_boundary};
}

ReducedQ reduced_Q(const ModelParams& params, const FieldConfig& boundary,
                   std::span<const double> rewards, const ReducedQSpec& spec, std::uint64_t seed) {
  if (rewards.size() != boundary.lattice().site_count())
    throw ContractViolation("one reward per lattice site required");
  return reduced_Q(reduced_q_structure(params, boundary, spec, seed), rewards);
}

SecondMomentReport second_moment_report(const ModelParams& params, const FieldConfig& boundary,
                                        const ReducedQStructure& st, std::uint64_t replicas,
                                        std::uint64_t seed) {
  params.validate();
  if (replicas < 2)
    throw DomainError("second_moment_report needs at least two replicas");
  const BoxLattice& lat = boundary.lattice();

  std::vector<double> q(replicas);
  for (std::uint64_t r = 0; r < replicas; ++r) {
    const DisorderField env(params.law, derive_seed(seed, {static_cast<std::int64_t>(r), 21}));
    q[r] = reduced_Q(st, site_rewards(params, lat, env)).value;
  }
  const double rn = static_cast<double>(replicas);
  // Shifted by the first value so identical replicas give exactly zero.
  const double shift = q.front();
  double offset = 0.0;
  for (double v : q)
    offset += v - shift;
  offset /= rn;
  const double mean = shift + offset;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : q) {
    const double d = (v - shift) - offset;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  SecondMomentReport rep;
  rep.replicas = replicas;
  rep.good_boundary = st.good_boundary;
  rep.var_q = m2 / (rn - 1.0);
  rep.var_q_se = std::sqrt(std::max(0.0, m4 / rn - (m2 / rn) * (m2 / rn)) / rn);
  rep.mean_q_minus_1 = mean - 1.0;
  rep.mean_q_minus_1_se = std::sqrt(rep.var_q / rn);

  const double xi_var = params.beta == 0.0 ? 0.0 : params.law.xi_variance(params.beta);
  const double e2h = std::exp(2.0 * params.h);
  double sum_a2 = 0.0;
  double sum_a = 0.0;
  double sum_pd2 = 0.0;
  double sum_pd = 0.0;
  double sum_le1 = 0.0;
  double sum_neg = 0.0;
  for (std::size_t i = 0; i < st.sites.size(); ++i) {
    sum_a += st.one_contact[i];
    sum_a2 += st.one_contact[i] * st.one_contact[i];
    sum_pd += st.p_delta[i];
    sum_pd2 += st.p_delta[i] * st.p_delta[i];
    sum_le1 += st.p_le1[i];
    sum_neg += st.p_neg[i];
  }
  rep.var_q_given_structure = e2h * xi_var * sum_a2;
  rep.var_bound = e2h * xi_var * sum_pd2;
  rep.slack = rep.var_bound - rep.var_q_given_structure;
  rep.bound_holds = rep.slack >= 0.0 && rep.var_q <= rep.var_bound + 3.0 * rep.var_q_se;
  rep.mean_lower = 0.8 * params.h * sum_le1 - (1.0 + params.h) * sum_neg;
  rep.mean_upper = std::expm1(params.h) * sum_pd;
  rep.mean_given_structure = st.p_none + std::exp(params.h) * sum_a - 1.0;
  return rep;
}

} // namespace wetting

#include "wetting/suites.hpp"

#include "wetting/asymptotics.hpp"
#include "wetting/errors.hpp"
#include "wetting/exact.hpp"
#include "wetting/kgap.hpp"
#include "wetting/stats.hpp"
#include "wetting/superadd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace wetting {

namespace {

const std::vector<SuiteInfo> kSuites = {
    {"oracle", "MC estimators against quadrature on a one-site box, 27-point (beta, h, K) grid"},
    {"coupling", "monotone coupling of two chains, lower one started at upper - 1"},
    {"ti-curve", "free energy by thermodynamic integration of the contact density"},
    {"scaling", "explicit, Jensen and superadditive bounds along h = e^-k"},
    {"kgap", "soft-wall free-energy gap K_gap(K) and its exponential decay rate"},
    {"superadd", "superadditive lower bound with a free-field boundary"},
    {"marginal", "CDF of the center height for growing centered boxes"},
    {"second-moment", "variance of the one-contact partition function against its bound"},
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::int64_t tag_of(double x) { return static_cast<std::int64_t>(std::llround(x * 1e6)); }

ResultRow make_row(const RunConfig& c, const ModelParams& p, std::string method, double value,
                   double se, std::uint64_t n, std::uint64_t reps, double secs) {
  ResultRow r;
  r.experiment = c.experiment;
  r.d = p.dim;
  r.N = p.side;
  r.beta = p.beta;
  r.h = p.h;
  r.K = p.wall.value();
  r.law = std::string(p.law.name());
  r.seed = c.seed;
  r.method = std::move(method);
  r.value = value;
  r.std_error = se;
  r.n_samples = n;
  r.replicas = reps;
  r.wall_seconds = secs;
  return r;
}

WallStrength wall_of(double k) { return std::isinf(k) ? WallStrength::hard() : WallStrength::soft(k); }

std::string point_name(double beta, double h, double k) {
  return "beta=" + format_number(beta) + " h=" + format_number(h) + " K=" + format_number(k);
}

template <class T>
std::vector<T> or_default(const std::vector<T>& xs, std::vector<T> fallback) {
  return xs.empty() ? fallback : xs;
}

std::vector<double> uniform_grid(double from, double to, double step) {
  const auto n = static_cast<long>(std::llround((to - from) / step));
  std::vector<double> g;
  for (long i = 1; i <= n; ++i)
    g.push_back(from + static_cast<double>(i) * step);
  if (g.empty() || std::abs(g.back() - to) > 1e-9 * std::max(1.0, std::abs(to)))
    g.push_back(to);
  else
    g.back() = to;
  return g;
}

// ---------------------------------------------------------------------------

SuiteOutcome run_oracle(const RunConfig& c) {
  SuiteOutcome out;
  OracleSpec spec;
  spec.betas = or_default(c.beta_list, spec.betas);
  spec.hs = or_default(c.h_list, spec.hs);
  spec.ks = or_default(c.k_wall_list, spec.ks);
  spec.law = c.model.law;
  spec.mcmc = c.mcmc;
  spec.ti_step = c.suite.ti_step;
  spec.q.samples = c.suite.q_samples;
  if (c.model.boundary.kind == BoundaryKind::constant && c.model.boundary.height > 1.0)
    spec.boundary_height = c.model.boundary.height;
  else
    out.notes.push_back("oracle: boundary replaced by the constant " +
                        format_number(spec.boundary_height) + " (needs a constant u > 1)");
  if (c.model.dim != 3 || c.model.side != 2)
    out.notes.push_back("oracle: runs on the one-site box d=3, N=2");

  const auto points = oracle_grid(spec, derive_seed(c.seed, {101}));
  for (const auto& pt : points) {
    ModelParams p = c.model;
    p.dim = 3;
    p.side = 2;
    p.beta = pt.beta;
    p.h = pt.h;
    p.wall = wall_of(pt.K);
    const double t = pt.wall_seconds;
    out.rows.push_back(make_row(c, p, "free_energy_ti", pt.f_ti, pt.f_ti_se, pt.n_samples, pt.replicas, t));
    out.details.push_back({"oracle " + point_name(pt.beta, pt.h, pt.K),
                           {{"free_energy_exact", pt.f_exact},
                            {"free_energy_ti", pt.f_ti},
                            {"free_energy_ti_se", pt.f_ti_se},
                            {"contact_density_exact", pt.contact_exact},
                            {"contact_density", pt.contact_mc},
                            {"contact_density_se", pt.contact_se},
                            {"reduced_q_exact", pt.q_exact},
                            {"reduced_q", pt.q_mc},
                            {"reduced_q_se", pt.q_se},
                            {"wall_gap_exact", pt.wall_gap},
                            {"k_gap_bound", pt.kgap_bound}}});

    const std::string where = point_name(pt.beta, pt.h, pt.K);
    if (!within_4se(pt.f_ti, pt.f_exact, pt.f_ti_se))
      out.failures.push_back("oracle: free_energy_ti " + format_number(pt.f_ti) + " +- " +
                             format_number(pt.f_ti_se) + " disagrees with quadrature " +
                             format_number(pt.f_exact) + " at " + where);
    if (!within_4se(pt.contact_mc, pt.contact_exact, pt.contact_se))
      out.failures.push_back("oracle: contact_density " + format_number(pt.contact_mc) + " +- " +
                             format_number(pt.contact_se) + " disagrees with d log Z / dh " +
                             format_number(pt.contact_exact) + " at " + where);
    if (!within_4se(pt.q_mc, pt.q_exact, pt.q_se))
      out.failures.push_back("oracle: reduced_q " + format_number(pt.q_mc) + " disagrees with " +
                             format_number(pt.q_exact) + " at " + where);
    if (!(pt.wall_gap <= pt.kgap_bound + 1e-12))
      out.failures.push_back("oracle: E[log Z_K - log Z_inf] = " + format_number(pt.wall_gap) +
                             " exceeds |window| K_gap = " + format_number(pt.kgap_bound) + " at " + where);
  }
  return out;
}

SuiteOutcome run_coupling(const RunConfig& c) {
  SuiteOutcome out;
  const auto hs = or_default(c.h_list, {-0.5, 0.5, 1.0});
  const auto ks = or_default(c.k_wall_list, {1.0, kInf});
  for (double h : hs)
    for (double k : ks) {
      ModelParams p = c.model;
      p.h = h;
      p.wall = wall_of(k);
      const auto t0 = Clock::now();
      const auto run = coupling_run(p, c.suite.coupling_sweeps,
                                    derive_seed(c.seed, {201, tag_of(h), tag_of(std::min(k, 1e9))}));
      const double secs = seconds_since(t0);
      out.rows.push_back(make_row(c, p, "coupling_violations", static_cast<double>(run.violations), 0.0,
                                  run.sweeps_done, 1, secs));
      out.rows.push_back(make_row(c, p, "coupling_mean_gap", run.mean_gap, 0.0, run.sweeps_done, 1, secs));
      if (run.violations > 0)
        out.failures.push_back("coupling: order violated at " + point_name(p.beta, h, k) + ": " + run.message);
    }
  return out;
}

SuiteOutcome run_ti_curve(const RunConfig& c) {
  SuiteOutcome out;
  const auto betas = or_default(c.beta_list, {c.model.beta});
  std::vector<double> grid = c.h_list;
  if (grid.empty())
    grid = uniform_grid(c.suite.h_anchor, 1.0, c.suite.ti_step);
  for (double beta : betas) {
    ModelParams p = c.model;
    p.beta = beta;
    const auto t0 = Clock::now();
    const auto curve = free_energy_TI(p, grid, c.suite.h_anchor, c.mcmc, derive_seed(c.seed, {301, tag_of(beta)}));
    const double secs = seconds_since(t0);
    const std::uint64_t n = c.mcmc.samples * c.mcmc.replicas;
    for (std::size_t i = 0; i < curve.h.size(); ++i) {
      ModelParams q = p;
      q.h = curve.h[i];
      out.rows.push_back(make_row(c, q, "free_energy_ti", curve.f[i], curve.f_se[i], n * (i + 1), c.mcmc.replicas, secs));
      out.rows.push_back(make_row(c, q, "contact_density", curve.contact[i], curve.contact_se[i], n, c.mcmc.replicas, secs));
    }
    for (const auto& flag : curve.flags)
      out.notes.push_back("ti-curve beta=" + format_number(beta) + ": " + flag);
  }
  return out;
}

SuiteOutcome run_scaling(const RunConfig& c) {
  SuiteOutcome out;
  const auto t0 = Clock::now();
  const auto sigma = sigma_d_sq(c.model.dim);
  double k_wall = 1.0;
  for (double k : c.k_wall_list)
    if (std::isfinite(k)) {
      k_wall = k;
      break;
    }
  if (!c.model.wall.is_hard() && c.k_wall_list.empty())
    k_wall = c.model.wall.value();

  std::optional<ScalingSimulation> sim;
  if (c.suite.superadd_replicas >= 2) {
    ScalingSimulation s;
    s.side = c.model.side;
    s.beta = c.model.beta;
    s.replicas = c.suite.superadd_replicas;
    s.inner = c.mcmc;
    s.seed = derive_seed(c.seed, {401});
    sim = s;
  }
  const auto table = scaling_probe(k_wall, c.suite.k_list, sigma.value, sim);
  const double secs = seconds_since(t0);

  ModelParams p = c.model;
  p.wall = wall_of(k_wall);
  out.rows.push_back(make_row(c, p, "sigma_sq", sigma.value, sigma.error, 0, 0, secs));
  for (const auto& row : table.rows) {
    p.h = row.h;
    out.rows.push_back(make_row(c, p, "explicit_bound_exponent", row.analytic, 0.0, 0, 0, secs));
    out.rows.push_back(make_row(c, p, "jensen_bound_exponent", row.jensen, 0.0, 0, 0, secs));
    out.rows.push_back(make_row(c, p, "log_predicted_free_energy", row.log_predicted, 0.0, 0, 0, secs));
    if (row.simulated) {
      out.rows.push_back(make_row(c, p, "superadd_bound", *row.simulated, *row.simulated_se,
                                  sim->replicas, sim->replicas, secs));
      if (row.simulated_exponent)
        out.rows.push_back(make_row(c, p, "superadd_bound_exponent", *row.simulated_exponent, 0.0,
                                    sim->replicas, sim->replicas, secs));
    }
  }
  DetailRecord conj{"delta_pinning_conjecture (CONJECTURE, not a theorem)", {}};
  for (double j : {-1.0, 0.0, 1.0, 2.0, 3.0})
    conj.values.emplace_back("J=" + format_number(j), delta_pinning_conjecture(j, sigma.value));
  out.details.push_back(std::move(conj));
  if (table.unresolved_below_h)
    out.notes.push_back("scaling: simulated bound not resolved from zero for h <= " +
                        format_number(*table.unresolved_below_h));
  return out;
}

SuiteOutcome run_kgap(const RunConfig& c) {
  SuiteOutcome out;
  const auto betas = or_default(c.beta_list, {c.model.beta});
  const auto hs = or_default(c.h_list, {c.model.h});
  std::vector<double> ks;
  for (double k : c.k_wall_list)
    if (std::isfinite(k))
      ks.push_back(k);
  if (ks.empty())
    ks = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (double beta : betas)
    for (double h : hs) {
      const auto t0 = Clock::now();
      const auto fit = fit_kgap_decay(c.model.law, beta, h, ks);
      const double secs = seconds_since(t0);
      ModelParams p = c.model;
      p.beta = beta;
      p.h = h;
      for (std::size_t i = 0; i < fit.k.size(); ++i) {
        p.wall = WallStrength::soft(fit.k[i]);
        out.rows.push_back(make_row(c, p, "k_gap", fit.value[i], 0.0, 0, 0, secs));
      }
      p.wall = WallStrength::hard();
      out.rows.push_back(make_row(c, p, "k_gap_decay_c", fit.c_bound, 0.0, 0, 0, secs));
      out.rows.push_back(make_row(c, p, "k_gap_log_slope", fit.slope, 0.0, 0, 0, secs));
      if (!(fit.c_bound > 0.0))
        out.notes.push_back("kgap: no positive decay rate at beta=" + format_number(beta) + " h=" + format_number(h));
    }
  return out;
}

SuiteOutcome run_superadd(const RunConfig& c) {
  SuiteOutcome out;
  const auto ns = or_default(c.n_list, {c.model.side});
  const auto hs = or_default(c.h_list, {c.model.h});
  const auto ks = or_default(c.k_wall_list, {c.model.wall.value()});
  if (c.model.boundary.kind != BoundaryKind::free_field)
    out.notes.push_back("superadd: boundary drawn from the free field at height " +
                        format_number(c.model.boundary.height));
  for (int n : ns)
    for (double h : hs)
      for (double k : ks) {
        if (!std::isfinite(k)) {
          out.notes.push_back("superadd: skipped K=inf (finite K only)");
          continue;
        }
        ModelParams p = c.model;
        p.side = n;
        p.h = h;
        p.wall = WallStrength::soft(k);
        p.boundary.kind = BoundaryKind::free_field;
        const auto t0 = Clock::now();
        const auto rec = superadditive_lower_bound(p, c.suite.superadd_replicas, c.mcmc,
                                                   derive_seed(c.seed, {501, n, tag_of(h), tag_of(k)}));
        out.rows.push_back(make_row(c, p, rec.method, rec.value, rec.std_error, rec.n_samples, rec.replicas,
                                    seconds_since(t0)));
      }
  return out;
}

SuiteOutcome run_marginal(const RunConfig& c) {
  SuiteOutcome out;
  const auto sides = or_default(c.n_list, {4, 8, 12});
  ModelParams p = c.model;
  p.origin = OriginMode::centered;
  const Coords site(static_cast<std::size_t>(p.dim), 0);
  const auto t0 = Clock::now();
  const auto cdfs = marginal_probe(p, site, sides, c.suite.t_list, c.mcmc, derive_seed(c.seed, {601}));
  const double secs = seconds_since(t0);
  for (const auto& m : cdfs) {
    ModelParams q = p;
    q.side = m.side;
    for (std::size_t j = 0; j < m.t.size(); ++j)
      out.rows.push_back(make_row(c, q, "marginal_cdf[t=" + format_number(m.t[j]) + "]", m.cdf[j],
                                  m.std_error[j], c.mcmc.samples * c.mcmc.replicas, c.mcmc.replicas, secs));
  }
  // Larger boxes dominate smaller ones: the CDF may only go down with N.
  std::vector<std::size_t> order(cdfs.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cdfs[a].side < cdfs[b].side; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& small = cdfs[order[i - 1]];
    const auto& big = cdfs[order[i]];
    for (std::size_t j = 0; j < small.t.size(); ++j) {
      const double se = std::hypot(small.std_error[j], big.std_error[j]);
      if (big.cdf[j] > small.cdf[j] + 2.0 * se)
        out.notes.push_back("marginal: CDF at t=" + format_number(small.t[j]) + " rises from N=" +
                            std::to_string(small.side) + " to N=" + std::to_string(big.side) +
                            " by more than 2 SE");
    }
  }
  return out;
}

SuiteOutcome run_second_moment(const RunConfig& c) {
  SuiteOutcome out;
  const auto betas = or_default(c.beta_list, {c.model.beta});
  for (double beta : betas) {
    ModelParams p = c.model;
    p.beta = beta;
    const auto t0 = Clock::now();
    auto lat = p.make_lattice();
    const std::uint64_t seed = derive_seed(c.seed, {701, tag_of(beta)});
    const FieldConfig boundary = replica_boundary(p, lat, seed, 0);
    const auto structure = reduced_q_structure(p, boundary, {c.suite.q_samples}, derive_seed(seed, {1}));
    const auto rep = second_moment_report(p, boundary, structure, c.suite.moment_replicas, derive_seed(seed, {2}));
    const double secs = seconds_since(t0);
    const auto n = structure.n_samples;
    const auto r = rep.replicas;
    out.rows.push_back(make_row(c, p, "second_moment_var_q", rep.var_q, rep.var_q_se, n, r, secs));
    out.rows.push_back(make_row(c, p, "second_moment_var_bound", rep.var_bound, 0.0, n, r, secs));
    out.rows.push_back(make_row(c, p, "second_moment_var_given_structure", rep.var_q_given_structure, 0.0, n, r, secs));
    out.rows.push_back(make_row(c, p, "second_moment_slack", rep.slack, 0.0, n, r, secs));
    out.rows.push_back(make_row(c, p, "second_moment_mean_q_minus_1", rep.mean_q_minus_1, rep.mean_q_minus_1_se, n, r, secs));
    out.rows.push_back(make_row(c, p, "second_moment_mean_lower", rep.mean_lower, 0.0, n, r, secs));
    out.rows.push_back(make_row(c, p, "second_moment_mean_upper", rep.mean_upper, 0.0, n, r, secs));
    if (!rep.bound_holds)
      out.notes.push_back("second-moment beta=" + format_number(beta) + ": Var Q exceeds its bound by more than 3 SE");
    if (!rep.good_boundary)
      out.notes.push_back("second-moment beta=" + format_number(beta) + ": boundary has values <= u/2");
  }
  return out;
}

} // namespace

const std::vector<SuiteInfo>& suite_list() { return kSuites; }

bool is_known_suite(std::string_view name) {
  return std::any_of(kSuites.begin(), kSuites.end(), [&](const SuiteInfo& s) { return s.name == name; });
}

std::string suite_name_list() {
  std::string s;
  for (const auto& info : kSuites) {
    if (!s.empty())
      s += ", ";
    s += info.name;
  }
  return s;
}

SuiteOutcome run_suite(const RunConfig& config) {
  const auto& e = config.experiment;
  if (e == "oracle")
    return run_oracle(config);
  if (e == "coupling")
    return run_coupling(config);
  if (e == "ti-curve")
    return run_ti_curve(config);
  if (e == "scaling")
    return run_scaling(config);
  if (e == "kgap")
    return run_kgap(config);
  if (e == "superadd")
    return run_superadd(config);
  if (e == "marginal")
    return run_marginal(config);
  if (e == "second-moment")
    return run_second_moment(config);
  throw ConfigError("unknown suite '" + e + "' (known: " + suite_name_list() + ")");
}

// ---------------------------------------------------------------------------

bool within_4se(double mc, double exact, double se) {
  return std::abs(mc - exact) <= 4.0 * se + 1e-12 * (1.0 + std::abs(exact));
}

std::vector<OraclePoint> oracle_grid(const OracleSpec& spec, std::uint64_t seed) {
  std::vector<OraclePoint> points;
  const double eps = 1e-5;
  for (double beta : spec.betas)
    for (double h : spec.hs)
      for (double k : spec.ks) {
        const auto t0 = Clock::now();
        ModelParams p;
        p.dim = 3;
        p.side = 2;
        p.beta = beta;
        p.h = h;
        p.wall = wall_of(k);
        p.law = spec.law;
        p.boundary = {BoundaryKind::constant, spec.boundary_height, 0};
        p.disorder_seed = derive_seed(seed, {1});
        p.validate();
        auto lat = p.make_lattice();
        const FieldConfig boundary = make_boundary(p, lat);
        const double window = static_cast<double>(lat->energy_window_count());
        const SiteId free_site = lat->interior_site(0);
        const std::uint64_t point_seed = derive_seed(seed, {tag_of(beta), tag_of(h), tag_of(std::min(k, 1e9))});

        auto log_z_at = [&](double hh, const DisorderField& env) {
          ModelParams q = p;
          q.h = hh;
          return exact_log_Z_small(q, boundary, site_rewards(q, *lat, env));
        };

        const double h_anchor = h - spec.ti_span;
        RunningStats f_exact, f_anchor, contact_exact, q_exact, q_mc, q_se;
        const auto structure = reduced_q_structure(p, boundary, spec.q, derive_seed(point_seed, {3}));
        const double mu = spec.boundary_height;
        const double s = 1.0 / std::sqrt(2.0 * p.dim);
        for (std::uint64_t r = 0; r < spec.mcmc.replicas; ++r) {
          const DisorderField env(p.law, replica_disorder_seed(p, r));
          f_exact.add(log_z_at(h, env) / window);
          f_anchor.add(log_z_at(h_anchor, env) / window);
          contact_exact.add((log_z_at(h + eps, env) - log_z_at(h - eps, env)) / (2.0 * eps) / window);
          const auto rewards = site_rewards(p, *lat, env);
          q_exact.add(gaussian_tail((1.0 - mu) / s) +
                      std::exp(rewards[free_site]) * normal_mass(-mu / s, (1.0 - mu) / s));
          const auto q = reduced_Q(structure, rewards);
          q_mc.add(q.value);
          q_se.add(q.std_error);
        }

        const auto grid = uniform_grid(h_anchor, h, spec.ti_step);
        const auto curve = free_energy_TI(p, grid, h_anchor, spec.mcmc, derive_seed(point_seed, {2}),
                                          f_anchor.mean());

        OraclePoint pt{};
        pt.beta = beta;
        pt.h = h;
        pt.K = k;
        pt.f_exact = f_exact.mean();
        pt.f_ti = curve.f.back();
        pt.f_ti_se = curve.f_se.back();
        pt.contact_exact = contact_exact.mean();
        pt.contact_mc = curve.contact.back();
        pt.contact_se = curve.contact_se.back();
        pt.q_exact = q_exact.mean();
        pt.q_mc = q_mc.mean();
        pt.q_se = q_se.mean(); // same structure in every replica: errors add linearly

        // E over the free site's disorder of log Z_K - log Z_inf.
        if (std::isinf(k)) {
          pt.wall_gap = 0.0;
        } else {
          // One free site, every fixed window site above 1: log Z is the log
          // normalizer of the site conditional.
          auto gap = [&](double omega) {
            const double r = p.reward(omega);
            return SiteConditional(mu, s, r, p.wall).log_normalizer() -
                   SiteConditional(mu, s, r, WallStrength::hard()).log_normalizer();
          };
          const double kink = beta > 0.0 ? (p.law.lambda(beta) - h) / beta : 0.0;
          const double kinks[] = {kink};
          pt.wall_gap = beta == 0.0 ? gap(0.0) : p.law.expectation(gap, kinks);
        }
        pt.kgap_bound = window * K_gap(p.law, beta, h, k);
        pt.n_samples = spec.mcmc.samples * spec.mcmc.replicas * grid.size();
        pt.replicas = spec.mcmc.replicas;
        pt.wall_seconds = seconds_since(t0);
        points.push_back(pt);
      }
  return points;
}

CouplingRun coupling_run(const ModelParams& params, std::uint64_t sweeps, std::uint64_t seed) {
  params.validate();
  auto lat = params.make_lattice();
  Rng rng(derive_seed(seed, {1}));
  FieldConfig top = make_boundary(params, lat, &rng);
  for (SiteId s : lat->interior_sites())
    top[s] = std::max(top[s], 0.0) + 1.0;
  FieldConfig bottom = top;
  for (double& v : bottom.values())
    v -= 1.0;
  const DisorderField env(params.law, params.disorder_seed);
  CoupledPair pair(GibbsChain(params, top, env, derive_seed(seed, {2})),
                   GibbsChain(params, bottom, env, derive_seed(seed, {3})), derive_seed(seed, {4}));
  CouplingRun run{};
  try {
    for (std::uint64_t i = 0; i < sweeps; ++i)
      pair.sweep();
  } catch (const CouplingViolation& e) {
    run.violations = 1;
    run.message = e.what();
  }
  run.sweeps_done = pair.sweeps();
  double gap = 0.0;
  for (SiteId s : lat->interior_sites())
    gap += pair.upper().field()[s] - pair.lower().field()[s];
  run.mean_gap = gap / static_cast<double>(lat->interior_count());
  return run;
}

} // namespace wetting

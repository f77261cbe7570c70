#include "wetting/wetting.h"

#include "wetting/config.hpp"
#include "wetting/errors.hpp"
#include "wetting/exact.hpp"
#include "wetting/free_energy.hpp"
#include "wetting/gaussian_field.hpp"
#include "wetting/kgap.hpp"
#include "wetting/runner.hpp"
#include "wetting/sampler.hpp"
#include "wetting/suites.hpp"

#include <algorithm>
#include <iostream>
#include <memory>
#include <string>

struct wetting_model {
  wetting::ModelParams params;
};

struct wetting_chain {
  std::unique_ptr<wetting::GibbsChain> chain;
};

struct wetting_config {
  wetting::RunConfig config;
};

namespace {

thread_local std::string g_last_error;

template <class F>
wetting_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const wetting::ConfigError& e) {
    g_last_error = e.what();
    return WETTING_ERR_CONFIG;
  } catch (const wetting::DomainError& e) {
    g_last_error = e.what();
    return WETTING_ERR_DOMAIN;
  } catch (const wetting::IoError& e) {
    g_last_error = e.what();
    return WETTING_ERR_IO;
  } catch (const wetting::NumericalError& e) {
    g_last_error = e.what();
    return WETTING_ERR_NUMERICAL;
  } catch (const wetting::CouplingViolation& e) {
    g_last_error = e.what();
    return WETTING_ERR_COUPLING;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WETTING_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return WETTING_ERR_INTERNAL;
  }
}

wetting_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return WETTING_ERR_NULL;
}

wetting::ConfigOverrides overrides(const char* suite, int has_seed, uint64_t seed, const char* output) {
  wetting::ConfigOverrides o;
  if (suite)
    o.suite = suite;
  if (has_seed)
    o.seed = seed;
  if (output)
    o.output = output;
  return o;
}

} // namespace

extern "C" {

const char* wetting_version(void) { return WETTING_VERSION; }

const char* wetting_last_error(void) { return g_last_error.c_str(); }

wetting_status wetting_lambda(const char* law, double beta, double* out) {
  if (!law || !out)
    return null_arg("law/out");
  return guarded([&] {
    *out = wetting::DisorderLaw::from_name(law).lambda(beta);
    return WETTING_OK;
  });
}

wetting_status wetting_sigma_sq(int dim, double* value, double* error) {
  if (!value)
    return null_arg("value");
  return guarded([&] {
    const auto s = wetting::sigma_d_sq(dim);
    *value = s.value;
    if (error)
      *error = s.error;
    return WETTING_OK;
  });
}

wetting_status wetting_k_gap(const char* law, double beta, double h, double k, double* out) {
  if (!law || !out)
    return null_arg("law/out");
  return guarded([&] {
    *out = wetting::K_gap(wetting::DisorderLaw::from_name(law), beta, h, k);
    return WETTING_OK;
  });
}

wetting_status wetting_model_create(int dim, int side, double beta, double h, double k, const char* law,
                                    uint64_t disorder_seed, wetting_model** out) {
  if (!out)
    return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<wetting_model>();
    auto& p = m->params;
    p.dim = dim;
    p.side = side;
    p.beta = beta;
    p.h = h;
    p.wall = wetting::WallStrength::soft(k);
    p.law = wetting::DisorderLaw::from_name(law ? law : "gaussian");
    p.disorder_seed = disorder_seed;
    p.validate();
    *out = m.release();
    return WETTING_OK;
  });
}

wetting_status wetting_model_set_boundary(wetting_model* model, double u) {
  if (!model)
    return null_arg("model");
  return guarded([&] {
    auto p = model->params;
    p.boundary = {wetting::BoundaryKind::constant, u, 0};
    p.validate();
    model->params = p;
    return WETTING_OK;
  });
}

wetting_status wetting_model_set_centered(wetting_model* model, int centered) {
  if (!model)
    return null_arg("model");
  model->params.origin = centered ? wetting::OriginMode::centered : wetting::OriginMode::corner;
  return WETTING_OK;
}

void wetting_model_destroy(wetting_model* model) { delete model; }

wetting_status wetting_exact_log_z(const wetting_model* model, double* out) {
  if (!model || !out)
    return null_arg("model/out");
  return guarded([&] {
    const auto lat = model->params.make_lattice();
    if (lat->interior_count() > wetting::kExactMaxInterior)
      throw wetting::DomainError("exact log Z needs at most " + std::to_string(wetting::kExactMaxInterior) +
                                 " interior sites, box has " + std::to_string(lat->interior_count()));
    *out = wetting::exact_log_Z_small(model->params);
    return WETTING_OK;
  });
}

wetting_status wetting_chain_create(const wetting_model* model, uint64_t seed, wetting_chain** out) {
  if (!model || !out)
    return null_arg("model/out");
  *out = nullptr;
  return guarded([&] {
    const auto& p = model->params;
    auto lat = p.make_lattice();
    wetting::FieldConfig init = wetting::make_boundary(p, lat);
    for (auto s : lat->interior_sites())
      init[s] = std::max(init[s], 0.0) + 1.0;
    auto c = std::make_unique<wetting_chain>();
    c->chain = std::make_unique<wetting::GibbsChain>(
        p, std::move(init), wetting::DisorderField(p.law, p.disorder_seed), seed);
    *out = c.release();
    return WETTING_OK;
  });
}

wetting_status wetting_chain_sweep(wetting_chain* chain, uint64_t sweeps) {
  if (!chain)
    return null_arg("chain");
  return guarded([&] {
    chain->chain->run(sweeps);
    return WETTING_OK;
  });
}

wetting_status wetting_chain_site_count(const wetting_chain* chain, size_t* out) {
  if (!chain || !out)
    return null_arg("chain/out");
  *out = chain->chain->lattice().site_count();
  return WETTING_OK;
}

wetting_status wetting_chain_field(const wetting_chain* chain, double* buf, size_t len) {
  if (!chain || !buf)
    return null_arg("chain/buf");
  const auto values = chain->chain->field().values();
  if (len < values.size()) {
    g_last_error = "buffer holds " + std::to_string(len) + " values, field has " + std::to_string(values.size());
    return WETTING_ERR_RANGE;
  }
  std::copy(values.begin(), values.end(), buf);
  return WETTING_OK;
}

wetting_status wetting_chain_contact_fraction(const wetting_chain* chain, double* out) {
  if (!chain || !out)
    return null_arg("chain/out");
  return guarded([&] {
    *out = wetting::contact_fraction(chain->chain->field(), chain->chain->params().window.width);
    return WETTING_OK;
  });
}

void wetting_chain_destroy(wetting_chain* chain) { delete chain; }

wetting_status wetting_config_load(const char* path, const char* suite, int has_seed, uint64_t seed,
                                   const char* output_dir, wetting_config** out) {
  if (!path || !out)
    return null_arg("path/out");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<wetting_config>();
    c->config = wetting::load_config(path, overrides(suite, has_seed, seed, output_dir));
    *out = c.release();
    return WETTING_OK;
  });
}

wetting_status wetting_config_parse(const char* text, const char* suite, int has_seed, uint64_t seed,
                                    const char* output_dir, wetting_config** out) {
  if (!text || !out)
    return null_arg("text/out");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<wetting_config>();
    c->config = wetting::parse_config(text, overrides(suite, has_seed, seed, output_dir));
    *out = c.release();
    return WETTING_OK;
  });
}

void wetting_config_destroy(wetting_config* config) { delete config; }

wetting_status wetting_run(const wetting_config* config) {
  if (!config)
    return null_arg("config");
  return guarded([&] {
    const auto report = wetting::run(config->config, std::cerr);
    if (report.exit_code != 0) {
      std::string msg = "failed invariant(s):";
      for (const auto& f : report.failures)
        msg += "\n  " + f;
      g_last_error = msg;
      return WETTING_ERR_INVARIANT;
    }
    return WETTING_OK;
  });
}

size_t wetting_suite_count(void) { return wetting::suite_list().size(); }

const char* wetting_suite_name(size_t index) {
  const auto& s = wetting::suite_list();
  return index < s.size() ? s[index].name.data() : nullptr;
}

const char* wetting_suite_description(size_t index) {
  const auto& s = wetting::suite_list();
  return index < s.size() ? s[index].description.data() : nullptr;
}

} // extern "C"

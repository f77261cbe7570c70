#include "wetting/config.hpp"

#include "wetting/errors.hpp"
#include "wetting/suites.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace wetting {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_double(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity")
    return kInf;
  if (t == "-inf" || t == "-infinity")
    return -kInf;
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+')
    ++first;
  const auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || std::isnan(v))
    return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    return std::nullopt;
  return v;
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(trim(item));
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<std::string>& errors) : errors_(errors) {}

  void error(const std::string& field, const std::string& value, const std::string& why) {
    errors_.push_back(field + " = " + value + ": " + why);
  }

  bool real(const std::string& field, const std::string& v, double& out) {
    if (auto d = to_double(v)) {
      out = *d;
      return true;
    }
    error(field, v, "not a real number");
    return false;
  }
  bool u64(const std::string& field, const std::string& v, std::uint64_t& out) {
    if (auto d = to_u64(v)) {
      out = *d;
      return true;
    }
    error(field, v, "not a non-negative 64-bit integer");
    return false;
  }
  bool integer(const std::string& field, const std::string& v, int& out) {
    if (auto d = to_int(v)) {
      out = *d;
      return true;
    }
    error(field, v, "not an integer");
    return false;
  }
  bool reals(const std::string& field, const std::string& v, std::vector<double>& out) {
    std::vector<double> xs;
    for (const auto& item : split_list(v)) {
      auto d = to_double(item);
      if (!d) {
        error(field, v, "entry '" + item + "' is not a real number");
        return false;
      }
      xs.push_back(*d);
    }
    out = std::move(xs);
    return true;
  }
  bool ints(const std::string& field, const std::string& v, std::vector<int>& out) {
    std::vector<int> xs;
    for (const auto& item : split_list(v)) {
      auto d = to_int(item);
      if (!d) {
        error(field, v, "entry '" + item + "' is not an integer");
        return false;
      }
      xs.push_back(*d);
    }
    out = std::move(xs);
    return true;
  }

private:
  std::vector<std::string>& errors_;
};

} // namespace

std::string format_number(double x) {
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::string format_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i)
      out += ",";
    out += format_number(xs[i]);
  }
  return out;
}

std::vector<std::string> config_violations(const RunConfig& c) {
  std::vector<std::string> v;
  if (c.experiment.empty())
    v.push_back("experiment: missing (one of " + suite_name_list() + ")");
  else if (!is_known_suite(c.experiment))
    v.push_back("experiment = " + c.experiment + ": unknown suite (valid: " + suite_name_list() +
                ")");
  if (c.output_dir.empty())
    v.push_back("output: must not be empty");

  const ModelParams& m = c.model;
  if (!m.wall.is_hard() && !(m.wall.value() > 0.0))
    v.push_back("model.K = " + format_number(m.wall.value()) + ": must lie in (0, inf]");
  for (const auto& s : m.violations())
    v.push_back("model: " + s);

  for (double h : c.h_list)
    if (!std::isfinite(h))
      v.push_back("grids.h_list: entry " + format_number(h) + " must be finite");
  for (double k : c.k_wall_list)
    if (!(k > 0.0))
      v.push_back("grids.K_list: entry " + format_number(k) + " must lie in (0, inf]");
  for (int n : c.n_list)
    if (n < 2)
      v.push_back("grids.N_list: entry " + std::to_string(n) + " must be >= 2");
  for (double b : c.beta_list)
    if (!(b >= 0.0) || !m.law.in_domain(b))
      v.push_back("grids.beta_list: entry " + format_number(b) + " must be >= 0 and inside I_P of the " +
                  std::string(m.law.name()) + " law");

  if (c.mcmc.thinning < 1)
    v.push_back("mcmc.thinning: must be >= 1");
  if (c.mcmc.replicas < 1)
    v.push_back("mcmc.replicas: must be >= 1");
  if (c.mcmc.thinning >= 1 && c.sweeps < c.mcmc.thinning)
    v.push_back("mcmc.sweeps = " + std::to_string(c.sweeps) + ": must be >= thinning");
  if (!std::isfinite(c.mcmc.initial_height))
    v.push_back("mcmc.initial_height: must be finite");

  const SuiteOptions& s = c.suite;
  if (s.coupling_sweeps < 1)
    v.push_back("suite.coupling_sweeps: must be >= 1");
  if (s.t_list.empty())
    v.push_back("suite.t_list: must not be empty");
  for (double k : s.k_list)
    if (!(k > 0.0) || !std::isfinite(k))
      v.push_back("suite.k_list: entry " + format_number(k) + " must be finite and > 0");
  if (s.q_samples < 2)
    v.push_back("suite.q_samples: must be >= 2");
  if (s.superadd_replicas < 2)
    v.push_back("suite.superadd_replicas: must be >= 2");
  if (s.moment_replicas < 2)
    v.push_back("suite.moment_replicas: must be >= 2");
  if (!(s.ti_step > 0.0) || !std::isfinite(s.ti_step))
    v.push_back("suite.ti_step: must be finite and > 0");
  if (!std::isfinite(s.h_anchor))
    v.push_back("suite.h_anchor: must be finite");
  return v;
}

RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  RunConfig c;
  std::vector<std::string> errors;
  Parser p(errors);
  bool have_seed = false;
  std::string section;
  double k_model = kInf;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, std::map<std::string, Setter>> table{
      {"",
       {
           {"experiment", [&](auto&, auto& v) { c.experiment = v; }},
           {"seed", [&](auto& f, auto& v) { have_seed = p.u64(f, v, c.seed) || have_seed; }},
           {"output", [&](auto&, auto& v) { c.output_dir = v; }},
       }},
      {"model",
       {
           {"d", [&](auto& f, auto& v) { p.integer(f, v, c.model.dim); }},
           {"N", [&](auto& f, auto& v) { p.integer(f, v, c.model.side); }},
           {"origin",
            [&](auto& f, auto& v) {
              try {
                c.model.origin = origin_mode_from_string(v);
              } catch (const std::exception&) {
                p.error(f, v, "expected corner or centered");
              }
            }},
           {"beta", [&](auto& f, auto& v) { p.real(f, v, c.model.beta); }},
           {"h", [&](auto& f, auto& v) { p.real(f, v, c.model.h); }},
           {"K", [&](auto& f, auto& v) { p.real(f, v, k_model); }},
           {"law",
            [&](auto& f, auto& v) {
              try {
                c.model.law = DisorderLaw::from_name(v);
              } catch (const std::exception&) {
                p.error(f, v, "expected gaussian, bernoulli or exponential");
              }
            }},
           {"boundary",
            [&](auto& f, auto& v) {
              if (v == "constant")
                c.model.boundary.kind = BoundaryKind::constant;
              else if (v == "free_field")
                c.model.boundary.kind = BoundaryKind::free_field;
              else
                p.error(f, v, "expected constant or free_field");
            }},
           {"u", [&](auto& f, auto& v) { p.real(f, v, c.model.boundary.height); }},
           {"margin", [&](auto& f, auto& v) { p.integer(f, v, c.model.boundary.margin); }},
           {"window_a", [&](auto& f, auto& v) { p.real(f, v, c.model.window.width); }},
           {"window_b", [&](auto& f, auto& v) { p.real(f, v, c.model.window.scale); }},
       }},
      {"grids",
       {
           {"h_list", [&](auto& f, auto& v) { p.reals(f, v, c.h_list); }},
           {"K_list", [&](auto& f, auto& v) { p.reals(f, v, c.k_wall_list); }},
           {"N_list", [&](auto& f, auto& v) { p.ints(f, v, c.n_list); }},
           {"beta_list", [&](auto& f, auto& v) { p.reals(f, v, c.beta_list); }},
       }},
      {"mcmc",
       {
           {"burn_in", [&](auto& f, auto& v) { p.u64(f, v, c.mcmc.burn_in); }},
           {"thinning", [&](auto& f, auto& v) { p.u64(f, v, c.mcmc.thinning); }},
           {"sweeps", [&](auto& f, auto& v) { p.u64(f, v, c.sweeps); }},
           {"replicas", [&](auto& f, auto& v) { p.u64(f, v, c.mcmc.replicas); }},
           {"initial_height", [&](auto& f, auto& v) { p.real(f, v, c.mcmc.initial_height); }},
       }},
      {"suite",
       {
           {"coupling_sweeps", [&](auto& f, auto& v) { p.u64(f, v, c.suite.coupling_sweeps); }},
           {"t_list", [&](auto& f, auto& v) { p.reals(f, v, c.suite.t_list); }},
           {"k_list", [&](auto& f, auto& v) { p.reals(f, v, c.suite.k_list); }},
           {"q_samples", [&](auto& f, auto& v) { p.u64(f, v, c.suite.q_samples); }},
           {"superadd_replicas", [&](auto& f, auto& v) { p.u64(f, v, c.suite.superadd_replicas); }},
           {"moment_replicas", [&](auto& f, auto& v) { p.u64(f, v, c.suite.moment_replicas); }},
           {"ti_step", [&](auto& f, auto& v) { p.real(f, v, c.suite.ti_step); }},
           {"h_anchor", [&](auto& f, auto& v) { p.real(f, v, c.suite.h_anchor); }},
       }},
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section == "run")
        section.clear();
      if (!table.count(section))
        errors.push_back("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto sec = table.find(section);
    if (sec == table.end())
      continue; // already reported
    const auto it = sec->second.find(key);
    const std::string field = section.empty() ? key : section + "." + key;
    if (it == sec->second.end()) {
      errors.push_back(field + ": unknown key");
      continue;
    }
    it->second(field, value);
  }

  if (overrides.suite)
    c.experiment = *overrides.suite;
  if (overrides.seed) {
    c.seed = *overrides.seed;
    have_seed = true;
  }
  if (overrides.output)
    c.output_dir = *overrides.output;
  if (!have_seed)
    errors.push_back("seed: missing (a 64-bit seed is mandatory)");

  if (std::isnan(k_model) || k_model <= 0.0)
    errors.push_back("model.K = " + format_number(k_model) + ": must lie in (0, inf]");
  else
    c.model.wall = WallStrength::soft(k_model);
  c.model.disorder_seed = derive_seed(c.seed, {0x0d15});
  c.mcmc.samples = c.mcmc.thinning > 0 ? c.sweeps / c.mcmc.thinning : 0;

  for (auto& v : config_violations(c))
    if (std::find(errors.begin(), errors.end(), v) == errors.end())
      errors.push_back(std::move(v));
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors)
      msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return c;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream f(path);
  if (!f)
    throw ConfigError("cannot read configuration file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::map<std::string, std::string> describe(const RunConfig& c) {
  std::map<std::string, std::string> d;
  d["experiment"] = c.experiment;
  d["seed"] = std::to_string(c.seed);
  d["output"] = c.output_dir;
  d["model.d"] = std::to_string(c.model.dim);
  d["model.N"] = std::to_string(c.model.side);
  d["model.origin"] = std::string(to_string(c.model.origin));
  d["model.beta"] = format_number(c.model.beta);
  d["model.h"] = format_number(c.model.h);
  d["model.K"] = format_number(c.model.wall.value());
  d["model.law"] = std::string(c.model.law.name());
  d["model.boundary"] =
      c.model.boundary.kind == BoundaryKind::constant ? "constant" : "free_field";
  d["model.u"] = format_number(c.model.boundary.height);
  d["model.margin"] = std::to_string(c.model.boundary.margin);
  d["model.window_a"] = format_number(c.model.window.width);
  d["model.window_b"] = format_number(c.model.window.scale);
  d["grids.h_list"] = format_list(c.h_list);
  d["grids.K_list"] = format_list(c.k_wall_list);
  std::string ns;
  for (std::size_t i = 0; i < c.n_list.size(); ++i)
    ns += (i ? "," : "") + std::to_string(c.n_list[i]);
  d["grids.N_list"] = ns;
  d["grids.beta_list"] = format_list(c.beta_list);
  d["mcmc.burn_in"] = std::to_string(c.mcmc.burn_in);
  d["mcmc.thinning"] = std::to_string(c.mcmc.thinning);
  d["mcmc.sweeps"] = std::to_string(c.sweeps);
  d["mcmc.replicas"] = std::to_string(c.mcmc.replicas);
  d["mcmc.initial_height"] = format_number(c.mcmc.initial_height);
  d["suite.coupling_sweeps"] = std::to_string(c.suite.coupling_sweeps);
  d["suite.t_list"] = format_list(c.suite.t_list);
  d["suite.k_list"] = format_list(c.suite.k_list);
  d["suite.q_samples"] = std::to_string(c.suite.q_samples);
  d["suite.superadd_replicas"] = std::to_string(c.suite.superadd_replicas);
  d["suite.moment_replicas"] = std::to_string(c.suite.moment_replicas);
  d["suite.ti_step"] = format_number(c.suite.ti_step);
  d["suite.h_anchor"] = format_number(c.suite.h_anchor);
  return d;
}

} // namespace wetting

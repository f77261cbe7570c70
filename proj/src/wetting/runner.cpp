#include "wetting/runner.hpp"

#include "wetting/errors.hpp"
#include "wetting/sampler.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef WETTING_VERSION
#define WETTING_VERSION "unknown"
#endif

namespace wetting {

namespace {

// Total order on doubles with NaN after everything else.
int cmp(double a, double b) {
  const bool na = std::isnan(a), nb = std::isnan(b);
  if (na || nb)
    return na == nb ? 0 : (na ? 1 : -1);
  return a < b ? -1 : (b < a ? 1 : 0);
}

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

bool row_less(const ResultRow& a, const ResultRow& b) {
  int c = 0;
  if ((c = cmp3(a.experiment, b.experiment)) || (c = cmp3(a.method, b.method)) || (c = cmp3(a.d, b.d)) ||
      (c = cmp3(a.N, b.N)) || (c = cmp(a.beta, b.beta)) || (c = cmp(a.h, b.h)) || (c = cmp(a.K, b.K)) ||
      (c = cmp3(a.law, b.law)) || (c = cmp3(a.seed, b.seed)) || (c = cmp(a.value, b.value)))
    return c < 0;
  return false;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out)
    throw IoError("failed writing " + path.string());
}

} // namespace

void sort_rows(std::vector<ResultRow>& rows) { std::stable_sort(rows.begin(), rows.end(), row_less); }

std::string results_csv(std::vector<ResultRow> rows) {
  sort_rows(rows);
  std::ostringstream out;
  out << kResultsHeader << '\n';
  for (const auto& r : rows)
    out << r.experiment << ',' << r.d << ',' << r.N << ',' << format_number(r.beta) << ','
        << format_number(r.h) << ',' << format_number(r.K) << ',' << r.law << ',' << r.seed << ','
        << r.method << ',' << format_number(r.value) << ',' << format_number(r.std_error) << ','
        << r.n_samples << ',' << r.replicas << ',' << format_number(r.wall_seconds) << '\n';
  return out.str();
}

std::string manifest_json(const RunConfig& config, const SuiteOutcome& outcome, double wall_seconds) {
  nlohmann::ordered_json j;
  j["version"] = WETTING_VERSION;
  j["suite"] = config.experiment;
  j["seed"] = config.seed;
  nlohmann::ordered_json resolved = nlohmann::ordered_json::object();
  for (const auto& [k, v] : describe(config))
    resolved[k] = v;
  j["config"] = resolved;
  j["rows"] = outcome.rows.size();
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  for (const auto& d : outcome.details) {
    nlohmann::ordered_json entry = nlohmann::ordered_json::object();
    for (const auto& [k, v] : d.values) {
      if (std::isfinite(v))
        entry[k] = v;
      else
        entry[k] = format_number(v);
    }
    details[d.label] = entry;
  }
  j["details"] = details;
  j["failures"] = outcome.failures;
  j["notes"] = outcome.notes;
  j["site_conditional_fallbacks"] = site_conditional_fallbacks();
  j["wall_seconds"] = wall_seconds;
  return j.dump(2) + "\n";
}

RunReport run(const RunConfig& config, std::ostream& log) {
  if (const auto bad = config_violations(config); !bad.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& b : bad)
      msg += "\n  - " + b;
    throw ConfigError(msg);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteOutcome outcome = run_suite(config);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  RunReport report;
  report.results_path = (dir / "results.csv").string();
  report.manifest_path = (dir / "manifest.json").string();
  write_file(report.results_path, results_csv(outcome.rows));
  write_file(report.manifest_path, manifest_json(config, outcome, secs));

  for (const auto& n : outcome.notes)
    log << "note: " << n << '\n';
  for (const auto& f : outcome.failures)
    log << "FAILED invariant: " << f << '\n';
  report.failures = outcome.failures;
  report.exit_code = outcome.failures.empty() ? 0 : 1;
  return report;
}

} // namespace wetting

#include "doctest.h"

#include "wetting/config.hpp"
#include "wetting/errors.hpp"
#include "wetting/runner.hpp"
#include "wetting/suites.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wetting;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("wetting_test_runner_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string strip_wall_seconds(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line))
    out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

ResultRow row(std::string exp, std::string method, int n, double h, double value) {
  ResultRow r;
  r.experiment = std::move(exp);
  r.method = std::move(method);
  r.d = 3;
  r.N = n;
  r.h = h;
  r.value = value;
  r.law = "gaussian";
  return r;
}

} // namespace

TEST_CASE("suite registry") {
  CHECK(suite_list().size() == 8);
  CHECK(is_known_suite("second-moment"));
  CHECK_FALSE(is_known_suite("nosuch"));
  CHECK(suite_name_list().rfind("oracle, coupling, ti-curve", 0) == 0);
}

TEST_CASE("rows sort canonically") {
  std::vector<ResultRow> rows{row("b", "m", 2, 0.0, 1.0), row("a", "z", 4, 0.0, 1.0), row("a", "m", 4, 0.5, 1.0),
                              row("a", "m", 4, NAN, 1.0), row("a", "m", 2, 0.5, 1.0)};
  sort_rows(rows);
  CHECK(rows[0].N == 2);
  CHECK(rows[1].h == 0.5);
  CHECK(std::isnan(rows[2].h));
  CHECK(rows[3].method == "z");
  CHECK(rows[4].experiment == "b");
}

TEST_CASE("csv layout") {
  auto r = row("kgap", "k_gap", 2, 0.0, 0.25);
  r.K = INFINITY;
  r.std_error = 0.0;
  r.seed = 5;
  const auto csv = results_csv({r});
  CHECK(csv.rfind(std::string(kResultsHeader) + "\n", 0) == 0);
  CHECK(csv.find("kgap,3,2,0,0,inf,gaussian,5,k_gap,0.25,0,") != std::string::npos);
}

TEST_CASE("run writes results and manifest, reproducibly") {
  const char* text = R"(experiment = kgap
seed = 11
[model]
beta = 0.5
h = -1
)";
  const auto a = scratch("a"), b = scratch("b");
  std::ostringstream log;
  const auto ra = run(parse_config(text, {.output = a.string()}), log);
  const auto rb = run(parse_config(text, {.output = b.string()}), log);
  CHECK(ra.exit_code == 0);
  const auto csv_a = slurp(ra.results_path), csv_b = slurp(rb.results_path);
  CHECK(!csv_a.empty());
  CHECK(strip_wall_seconds(csv_a) == strip_wall_seconds(csv_b));
  const auto m = nlohmann::json::parse(slurp(ra.manifest_path));
  CHECK(m["suite"] == "kgap");
  CHECK(m["seed"] == 11);
  CHECK(m["config"]["model.beta"] == "0.5");
  CHECK(m["rows"].get<std::size_t>() + 1 == static_cast<std::size_t>(std::count(csv_a.begin(), csv_a.end(), '\n')));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("run refuses an invalid config") {
  RunConfig c;
  c.experiment = "nosuch";
  std::ostringstream log;
  CHECK_THROWS_AS(run(c, log), ConfigError);
}

TEST_CASE("unwritable output is an IO error") {
  auto c = parse_config("experiment = kgap\nseed = 1\n", {.output = "/proc/wetting_cannot_exist"});
  std::ostringstream log;
  CHECK_THROWS_AS(run(c, log), IoError);
}

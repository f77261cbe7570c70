#include "doctest.h"

#include "wetting/config.hpp"
#include "wetting/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

using namespace wetting;

namespace {

const char* kBase = R"(experiment = oracle
seed = 7
[model]
d = 3
N = 4
beta = 0.5
h = -0.25
K = inf
law = bernoulli
)";

std::string error_text(std::string_view text, const ConfigOverrides& o = {}) {
  try {
    parse_config(text, o);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("parse a complete config") {
  const std::string text = std::string(kBase) + R"(origin = centered
boundary = free_field
u = 1.25   # trailing comment
[grids]
h_list = -1, 0, 0.5
K_list = 1, inf
N_list = 2,4
beta_list = 0.25
[mcmc]
burn_in = 10
thinning = 3
sweeps = 30
replicas = 2
[suite]
ti_step = 0.2
t_list = 1
)";
  const auto c = parse_config(text);
  CHECK(c.experiment == "oracle");
  CHECK(c.seed == 7);
  CHECK(c.model.side == 4);
  CHECK(c.model.origin == OriginMode::centered);
  CHECK(c.model.wall.is_hard());
  CHECK(c.model.law.kind() == LawKind::symmetric_bernoulli);
  CHECK(c.model.boundary.kind == BoundaryKind::free_field);
  CHECK(c.model.boundary.height == 1.25);
  CHECK(c.h_list == std::vector<double>{-1, 0, 0.5});
  CHECK(std::isinf(c.k_wall_list[1]));
  CHECK(c.n_list == std::vector<int>{2, 4});
  CHECK(c.mcmc.samples == 10);
  CHECK(c.suite.ti_step == 0.2);
  CHECK(config_violations(c).empty());
}

TEST_CASE("disorder seed follows the run seed") {
  const auto a = parse_config(kBase);
  const auto b = parse_config(kBase, {.seed = 8});
  CHECK(b.seed == 8);
  CHECK(a.model.disorder_seed != b.model.disorder_seed);
  CHECK(parse_config(kBase).model.disorder_seed == a.model.disorder_seed);
}

TEST_CASE("overrides take precedence") {
  const auto c = parse_config(kBase, {.suite = "kgap", .seed = 99, .output = "/tmp/x"});
  CHECK(c.experiment == "kgap");
  CHECK(c.seed == 99);
  CHECK(c.output_dir == "/tmp/x");
}

TEST_CASE("invalid configs list every problem") {
  SUBCASE("negative K") {
    const auto msg = error_text("experiment = oracle\nseed = 1\n[model]\nK = -1\n");
    CHECK(msg.find("model.K = -1: must lie in (0, inf]") != std::string::npos);
  }
  SUBCASE("zero K") {
    CHECK(error_text("experiment = oracle\nseed = 1\n[model]\nK = 0\n").find("model.K = 0") != std::string::npos);
  }
  SUBCASE("missing seed") {
    CHECK(error_text("experiment = oracle\n").find("seed: missing") != std::string::npos);
    CHECK(error_text("experiment = oracle\n", {.seed = 3}).empty());
  }
  SUBCASE("unknown suite names the valid ones") {
    const auto msg = error_text("experiment = nosuch\nseed = 1\n");
    CHECK(msg.find("unknown suite") != std::string::npos);
    CHECK(msg.find("oracle, coupling") != std::string::npos);
  }
  SUBCASE("several errors at once") {
    const auto msg = error_text("seed = x\n[model]\nN = two\nlaw = cauchy\nfoo = 1\n[bogus]\n");
    CHECK(msg.find("seed = x: not a non-negative 64-bit integer") != std::string::npos);
    CHECK(msg.find("model.N = two: not an integer") != std::string::npos);
    CHECK(msg.find("model.law = cauchy") != std::string::npos);
    CHECK(msg.find("model.foo: unknown key") != std::string::npos);
    CHECK(msg.find("unknown section [bogus]") != std::string::npos);
    CHECK(msg.find("experiment: missing") != std::string::npos);
  }
  SUBCASE("grid entries") {
    const auto msg =
        error_text(std::string(kBase) + "[grids]\nK_list = 1, -2\nN_list = 1\nh_list = 0, inf\nbeta_list = -1\n");
    CHECK(msg.find("grids.K_list: entry -2") != std::string::npos);
    CHECK(msg.find("grids.N_list: entry 1") != std::string::npos);
    CHECK(msg.find("grids.h_list: entry inf") != std::string::npos);
    CHECK(msg.find("grids.beta_list: entry -1") != std::string::npos);
  }
  SUBCASE("malformed lines") {
    const auto msg = error_text(std::string(kBase) + "[model\njust words\n");
    CHECK(msg.find("malformed section header") != std::string::npos);
    CHECK(msg.find("expected key = value") != std::string::npos);
  }
  SUBCASE("mcmc") {
    const auto msg = error_text(std::string(kBase) + "[mcmc]\nthinning = 0\nreplicas = 0\n");
    CHECK(msg.find("mcmc.thinning") != std::string::npos);
    CHECK(msg.find("mcmc.replicas") != std::string::npos);
  }
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), ConfigError);
}

TEST_CASE("format_number round trips") {
  for (double x : {0.0, 1.0, -0.25, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, std::exp(-6.0)})
    CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_list({1, INFINITY}) == "1,inf");
}

TEST_CASE("describe echoes the resolved config") {
  const auto d = describe(parse_config(kBase));
  CHECK(d.at("experiment") == "oracle");
  CHECK(d.at("model.K") == "inf");
  CHECK(d.at("model.law") == "bernoulli");
  CHECK(d.at("model.h") == "-0.25");
  // describe output parses back to the same description
  std::string text = "experiment = oracle\nseed = 7\n[model]\n";
  for (const auto& [k, v] : d)
    if (k.rfind("model.", 0) == 0)
      text += k.substr(6) + " = " + v + "\n";
  CHECK(describe(parse_config(text)) == d);
}

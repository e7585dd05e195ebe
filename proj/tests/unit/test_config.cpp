#include <doctest.h>

#include <string>

#include "multifluid/config.hpp"
#include "multifluid/error.hpp"

using namespace multifluid;

namespace {

const char* kMinimal = R"(
mixture.molar_masses = 1
mixture.gammas = 2
pressure.K = 1
grid.cells = 8
grid.length = 1
time.t_end = 0.1
initial.rho = 1
)";

const char* kTwoFluid = R"(
seed = 3
[mixture]
molar_masses = 2, 1
gammas = 1.4, 1.67   # trailing comment
pure_viscosities = 0.02, 0.01
[pressure]
K = 1
[grid]
cells = 16
length = 1
[time]
t_end = 0.1
[initial]
rho = 1, 0.5
)";

std::string key_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key_path();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("minimal config") {
  const RunConfig cfg = parse_config(kMinimal);
  REQUIRE(cfg.grid);
  CHECK(cfg.grid->n_cells() == 8);
  CHECK(cfg.time.t_end == 0.1);
  CHECK(cfg.solver.pressure.coefficient == 1.0);
  CHECK(cfg.initial);
  CHECK_NOTHROW(require_simulation(cfg));
  CHECK_THROWS_AS(require_adiabat(cfg), ConfigError);
}

TEST_CASE("sections, comments and seed") {
  const RunConfig cfg = parse_config(kTwoFluid);
  CHECK(cfg.seed == 3);
  CHECK(cfg.solver.mixture.size() == 2);
  CHECK(cfg.initial->seed == 3);
  CHECK(cfg.sections.contains("mixture"));
  CHECK(cfg.solver.viscosity.kind == ViscosityKind::none);
}

TEST_CASE("alpha constants must sum to one") {
  CHECK(key_of(std::string(kTwoFluid) + "[alpha]\nconstants = 0.6, 0.6\n") == "alpha.constants");
  CHECK(key_of(std::string(kTwoFluid) + "[alpha]\nconstants = 0.4, 0.6\n") == "<accepted>");
}

TEST_CASE("concentration viscosity rejects a zero initial concentration") {
  const std::string text = R"(
[mixture]
molar_masses = 2, 1
gammas = 1.4, 1.67
pure_viscosities = 0.02, 0.01
[pressure]
K = 1
[viscosity]
rule = eq14
[grid]
cells = 16
length = 1
[time]
t_end = 0.1
[initial]
rho = 1, 0
)";
  CHECK(key_of(text) == "viscosity.rule");
  std::string fixed = text;
  fixed.replace(fixed.find("rho = 1, 0"), 10, "rho = 1, 1");
  CHECK(key_of(fixed) == "<accepted>");
}

TEST_CASE("syntax errors carry the line number") {
  try {
    parse_config("mixture.molar_masses = 1\nthis line is wrong\n");
    FAIL("accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_config("[mixture\n"), ConfigError);
}

TEST_CASE("unknown and duplicate keys") {
  CHECK(key_of(std::string(kMinimal) + "grid.colour = 3\n") == "grid.colour");
  CHECK(key_of(std::string(kMinimal) + "[nonsense]\n") == "nonsense");
  CHECK(key_of(std::string(kMinimal) + "grid.cells = 9\n") == "grid.cells");
  CHECK(key_of(std::string(kMinimal) + "verbose = 1\n") == "verbose");
}

TEST_CASE("validation reports the offending key") {
  CHECK(key_of("mixture.molar_masses = 1\nmixture.gammas = 0.9\npressure.K = 1\n") == "mixture.gammas");
  CHECK(key_of("mixture.molar_masses = 1\nmixture.gammas = 1.4\n") == "pressure.K");
  CHECK(key_of("mixture.molar_masses = 1\nmixture.gammas = 1.4\npressure.K = x\n") == "pressure.K");
  CHECK(key_of("mixture.molar_masses = 1\nmixture.gammas = 1.4\npressure.law = composite\npressure.K = 1\n") ==
        "pressure.K");
  CHECK(key_of(std::string(kMinimal) + "grid.cells = 2\n") == "grid.cells");
  CHECK(key_of(std::string(kMinimal).replace(std::string(kMinimal).find("grid.cells = 8"), 14, "grid.cells = 2")) ==
        "grid.cells");
  CHECK(key_of(std::string(kMinimal) + "time.cfl = 2\n") == "time.cfl");
  CHECK(key_of(std::string(kMinimal).replace(std::string(kMinimal).find("initial.rho = 1"), 15, "initial.rho = -1")) ==
        "initial.rho");
  CHECK(key_of(std::string(kTwoFluid) + "[viscosity]\nshear = 1, 0; 0, 1\nlambda = -1, 0; 0, -1\n") ==
        "viscosity.lambda");
  CHECK(key_of(std::string(kTwoFluid) + "[viscosity]\nrule = simple\nshear = 1, 0; 0, 1\n") == "viscosity.shear");
  CHECK(key_of(std::string(kTwoFluid) + "[forces]\nwaveform = constant\namplitude = 1\n") == "forces.amplitude");
}

TEST_CASE("pressure coefficient from the reference state") {
  const RunConfig cfg = parse_config(R"(
[mixture]
molar_masses = 0.028, 0.004
degrees_of_freedom = 5, 3
reference_densities = 1, 0.1
reference_temperature = 300
reference_volume = 1
[pressure]
law = composite
[adiabat]
v_min = 0.5
v_max = 2
samples = 11
)");
  CHECK(cfg.solver.pressure.coefficient > 0.0);
  CHECK_NOTHROW(require_adiabat(cfg));
  CHECK_THROWS_AS(require_simulation(cfg), ConfigError);
}

TEST_CASE("matrices, forces and profiles") {
  const RunConfig cfg = parse_config(std::string(kTwoFluid) + R"(
[viscosity]
shear = 0.02, 0.005; 0.005, 0.01
[forces]
waveform = sinusoid
amplitude = 1, -1
wavenumber = 2
)");
  CHECK(cfg.solver.viscosity.kind == ViscosityKind::constant);
  CHECK(cfg.solver.viscosity.constant->shear(0, 1) == 0.005);
  CHECK(cfg.solver.forces.wavenumber == 2);
}

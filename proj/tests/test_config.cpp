#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "doctest.h"
#include "sacs/errors.hpp"
#include "sacs/io.hpp"
#include "sacs/scenario_file.hpp"

using namespace sacs;

namespace {

const std::filesystem::path kConfigs{SACS_TEST_CONFIG_DIR};
const std::filesystem::path kTable{SACS_TEST_DATA_FILE};

RunSpec spec_from(const std::string& text) { return build_run_spec(Config::parse(text, "test.cfg"), kTable); }

const char* kSacsText = R"(
[run]
protocol = sacs
[sacs]
width = 1 ns
delay = 0.8 ns
delta2 = 20 rad/ns
pump_rabi = 52.1 rad/ns
stokes_rabi = 52.1 rad/ns
stark_shift = 30.5 rad/ns
)";

}  // namespace

TEST_CASE("units convert to the internal scale") {
  const auto c = Config::parse(R"(
[a]
t1 = 1500 ps
t2 = 0.002 us
w1 = 3 rad/us
w2 = 2e9 1/s
i1 = 0.9 MW/cm2
i2 = 1.3 GW/cm2
l1 = 1.064 um
a1 = 45 deg
r1 = 1.5 delta2
n = 7
s = gaussian
f = true
)");
  CHECK(c.quantity("a.t1", Dimension::time) == doctest::Approx(1.5));
  CHECK(c.quantity("a.t2", Dimension::time) == doctest::Approx(2.0));
  CHECK(c.quantity("a.w1", Dimension::angular_rate) == doctest::Approx(3e-3));
  CHECK(c.quantity("a.w2", Dimension::angular_rate) == doctest::Approx(2.0));
  CHECK(c.quantity("a.i1", Dimension::intensity) == doctest::Approx(0.9e6));
  CHECK(c.quantity("a.i2", Dimension::intensity) == doctest::Approx(1.3e9));
  CHECK(c.quantity("a.l1", Dimension::wavelength) == doctest::Approx(1064.0));
  CHECK(c.quantity("a.a1", Dimension::angle) == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(c.quantity("a.r1", Dimension::relative) == doctest::Approx(1.5));
  CHECK(c.count("a.n") == 7);
  CHECK(c.text("a.s") == "gaussian");
  CHECK(c.flag_or("a.f", false));
  CHECK_NOTHROW(c.finish());
}

TEST_CASE("bare numbers, wrong units and non-finite values are rejected") {
  const auto c = Config::parse("[a]\nx = 5\ny = 3 ns\nz = nan ns\nw = 2 parsecs\n");
  CHECK_THROWS_AS(c.quantity("a.x", Dimension::time), ConfigError);
  CHECK_THROWS_AS(c.quantity("a.y", Dimension::angular_rate), ConfigError);
  CHECK_THROWS_AS(c.quantity("a.z", Dimension::time), ConfigError);
  CHECK_THROWS_AS(c.quantity("a.w", Dimension::time), ConfigError);
  CHECK_THROWS_AS(c.number("a.y"), ConfigError);
  CHECK_THROWS_AS(c.quantity("a.missing", Dimension::time), ConfigError);
}

TEST_CASE("syntax errors carry the line number") {
  try {
    Config::parse("[a]\nx = 1 ns\ny\n", "bad.cfg");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bad.cfg:3") != std::string::npos);
  }
  CHECK_THROWS_AS(Config::parse("[a\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[a]\nx = 1 ns\nx = 2 ns\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[a]\nx =\n"), ConfigError);
}

TEST_CASE("unused keys are reported by finish") {
  const auto c = Config::parse("[a]\nx = 1 ns\ntypo = 2 ns\n");
  (void)c.quantity("a.x", Dimension::time);
  try {
    c.finish();
    FAIL("expected unused key error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("a.typo") != std::string::npos);
  }
}

TEST_CASE("a Rabi-frequency SACS config builds the headline scenario") {
  const auto spec = spec_from(kSacsText);
  REQUIRE(spec.scenario);
  REQUIRE(spec.sacs);
  CHECK(spec.scenario->protocol == Protocol::sacs);
  CHECK(spec.sacs->omega1_peak == 52.1);
  CHECK(scenario_hash(*spec.scenario) == scenario_hash(make_sacs(SacsParams{})));
  CHECK(spec.config_hash == fnv1a64_hex(kSacsText));
}

TEST_CASE("config errors") {
  std::string zero_width = kSacsText;
  zero_width.replace(zero_width.find("width = 1 ns"), 12, "width = 0 ns");
  CHECK_THROWS_AS(spec_from(zero_width), ConfigError);

  std::string unknown = std::string(kSacsText) + "colour = 3 ns\n";
  CHECK_THROWS_AS(spec_from(unknown), ConfigError);

  std::string both = std::string(kSacsText) + "pump_intensity = 0.9 MW/cm2\n";
  CHECK_THROWS_AS(spec_from(both), ConfigError);

  std::string unequal = kSacsText;
  unequal.replace(unequal.find("stokes_rabi = 52.1"), 18, "stokes_rabi = 30.0");
  CHECK_THROWS_AS(spec_from(unequal), ConfigError);

  CHECK_THROWS_AS(spec_from("[run]\nprotocol = teleport\n"), ConfigError);
  CHECK_THROWS_AS(spec_from("[run]\ndt = 0.01 ns\n"), ConfigError);
  CHECK_THROWS_AS(spec_from("[run]\nprotocol = sacs\nnorm_step = 0.7\n"), ConfigError);
}

TEST_CASE("a resonant Stark laser is a physics error") {
  std::string text = kSacsText;
  text.replace(text.find("stark_shift = 30.5 rad/ns"), 25, "stark_intensity = 16 MW/cm2\nstark_wavelength = 1014.254 nm");
  CHECK_THROWS_AS(spec_from(text), PhysicsError);
}

TEST_CASE("bundled configs load") {
  const auto sacs = load_run_spec(kConfigs / "sacs_hg.cfg", kTable);
  REQUIRE(sacs.sacs);
  CHECK(sacs.sacs->omega1_peak == doctest::Approx(53.09).epsilon(1e-3));
  CHECK(sacs.sacs->omega2_peak == doctest::Approx(52.38).epsilon(1e-3));
  CHECK(sacs.sacs->stark_peak == doctest::Approx(30.16).epsilon(1e-3));

  CHECK(load_run_spec(kConfigs / "stirap.cfg", kTable).scenario->protocol == Protocol::stirap);
  const auto f = load_run_spec(kConfigs / "fstirap.cfg", kTable);
  CHECK(*f.scenario->mixing_angle == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(load_run_spec(kConfigs / "halfscrap_hg.cfg", kTable).scenario->protocol == Protocol::half_scrap);

  const auto fig6 = load_run_spec(kConfigs / "fig6.cfg", kTable);
  REQUIRE(fig6.detuning);
  CHECK(fig6.detuning->axis.count == 41);
  CHECK(fig6.detuning->axis.min == -40.0);

  const auto fig7 = load_run_spec(kConfigs / "fig7.cfg", kTable);
  REQUIRE(fig7.contour);
  CHECK(fig7.contour->params.stark_peak == 0.0);
  const auto fig8 = load_run_spec(kConfigs / "fig8.cfg", kTable);
  REQUIRE(fig8.contour);
  CHECK(fig8.contour->params.stark_peak == 50.0);
  CHECK(fig8.contour->params.stark_offset == 1.0);

  const auto fig4 = load_run_spec(kConfigs / "fig4.cfg", kTable);
  REQUIRE(fig4.surface);
  CHECK(fig4.surface->level == 1.5);
  CHECK(fig4.surface->anchor.second == 1.5);
  CHECK(load_run_spec(kConfigs / "fig3.cfg", kTable).surface);
  CHECK(load_run_spec(kConfigs / "weights.cfg", kTable).weights);
}

TEST_CASE("intensity-driven half-SCRAP uses the two-photon coupling") {
  const auto spec = spec_from(R"(
[run]
protocol = half_scrap
[half_scrap]
width = 1 ns
pump_intensity = 1.3 GW/cm2
pump_wavelength = 313 nm
stark_shift = 80 rad/ns
pump_delay = 2.2 ns
)");
  CHECK(std::abs(spec.scenario->pump[0].peak) == doctest::Approx(48.0).epsilon(0.02));
}

TEST_CASE("scenario hashes distinguish scenarios and are stable") {
  const auto a = make_sacs(SacsParams{});
  SacsParams q;
  q.delay = 0.8000000001;
  CHECK(scenario_hash(a) == scenario_hash(make_sacs(SacsParams{})));
  CHECK(scenario_hash(a) != scenario_hash(make_sacs(q)));
  CHECK(scenario_hash(a).size() == 16);
}

TEST_CASE("FNV-1a reference vectors and number formatting") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

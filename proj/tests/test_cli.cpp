#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sacs/io.hpp"
#include "sacs_cli/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kConfigs{SACS_TEST_CONFIG_DIR};
const fs::path kTable{SACS_TEST_DATA_FILE};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sacs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sacs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sacs_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  sacs::write_text_file(p, text);
  return p;
}

json read_json(const fs::path& p) { return json::parse(sacs::read_text_file(p)); }

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

TEST_CASE("simulate writes trajectory, report and a complete manifest") {
  const auto dir = scratch("simulate");
  const auto r = cli({"simulate", "--config", (kConfigs / "sacs_hg.cfg").string(), "--out", dir.string()});
  REQUIRE(r.code == sacs::cli::kOk);
  const auto report = read_json(dir / "report.json");
  CHECK(report["populations"]["P1"].get<double>() == doctest::Approx(0.5).epsilon(0.04));
  CHECK(report["populations"]["P3"].get<double>() == doctest::Approx(0.5).epsilon(0.04));
  CHECK(report["populations"]["P2"].get<double>() < 0.01);
  CHECK(report["max_norm_drift"].get<double>() < 1e-9);
  CHECK(report["adiabaticity_score"].get<double>() < 0.1);
  CHECK(report["nonadiabatic"] == false);

  const auto manifest = read_json(dir / "manifest.json");
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["config_hash"] == sacs::file_fnv1a64_hex(kConfigs / "sacs_hg.cfg"));
  CHECK(manifest.contains("tool_version"));
  CHECK(manifest.contains("wall_time_s"));
  REQUIRE(manifest["outputs"].size() == 2);
  for (const auto& f : manifest["outputs"]) {
    const fs::path p = dir / f["file"].get<std::string>();
    REQUIRE(fs::exists(p));
    CHECK(f["fnv1a64"] == sacs::file_fnv1a64_hex(p));
    CHECK(f["bytes"].get<std::uintmax_t>() == fs::file_size(p));
  }
}

TEST_CASE("identical runs produce byte-identical CSV") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const auto cfg = (kConfigs / "sacs_hg.cfg").string();
  REQUIRE(cli({"simulate", "--config", cfg, "--out", a.string()}).code == 0);
  REQUIRE(cli({"simulate", "--config", cfg, "--out", b.string()}).code == 0);
  CHECK(sacs::read_text_file(a / "trajectory.csv") == sacs::read_text_file(b / "trajectory.csv"));

  const auto c = scratch("det_c");
  const auto d = scratch("det_d");
  const auto fig6 = (kConfigs / "fig6.cfg").string();
  REQUIRE(cli({"sweep", "detuning", "--config", fig6, "--out", c.string(), "--grid", "5"}).code == 0);
  REQUIRE(cli({"sweep", "detuning", "--config", fig6, "--out", d.string(), "--grid", "5"}).code == 0);
  CHECK(sacs::read_text_file(c / "detuning.csv") == sacs::read_text_file(d / "detuning.csv"));
}

TEST_CASE("--check verifies outputs against the manifest") {
  const auto dir = scratch("check");
  const auto cfg = (kConfigs / "stirap.cfg").string();
  REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.string()}).code == 0);
  CHECK(cli({"simulate", "--config", cfg, "--out", dir.string(), "--check"}).code == sacs::cli::kOk);

  sacs::write_text_file(dir / "report.json", "{}\n");
  const auto r = cli({"simulate", "--config", cfg, "--out", dir.string(), "--check"});
  CHECK(r.code == sacs::cli::kCheckMismatch);
  CHECK(r.err.find("report.json") != std::string::npos);

  const auto empty = scratch("check_empty");
  CHECK(cli({"simulate", "--config", cfg, "--out", empty.string(), "--check"}).code == sacs::cli::kCheckMismatch);
}

TEST_CASE("--strict escalates a non-adiabatic outcome") {
  const auto dir = scratch("strict");
  const auto cfg = write_config(dir, "fast.cfg", R"(
[run]
protocol = sacs
[sacs]
width = 0.3 ns
delay = 0 ns
delta2 = 0 rad/ns
pump_rabi = 4 rad/ns
stokes_rabi = 4 rad/ns
stark_shift = 0 rad/ns
)");
  const auto out = dir / "out";
  const auto relaxed = cli({"simulate", "--config", cfg.string(), "--out", out.string()});
  CHECK(relaxed.code == sacs::cli::kOk);
  CHECK(read_json(out / "report.json")["nonadiabatic"] == true);
  CHECK(cli({"simulate", "--config", cfg.string(), "--out", out.string(), "--strict"}).code ==
        sacs::cli::kNonadiabatic);
  CHECK(cli({"simulate", "--config", (kConfigs / "sacs_hg.cfg").string(), "--out", out.string(), "--strict"}).code ==
        sacs::cli::kOk);
}

TEST_CASE("config and physics errors map to exit codes") {
  const auto dir = scratch("errors");
  std::string zero_width = kSacsText;
  zero_width.replace(zero_width.find("width = 1 ns"), 12, "width = 0 ns");
  std::string bare = kSacsText;
  bare.replace(bare.find("delay = 0.8 ns"), 14, "delay = 0.8");
  std::string unknown = std::string(kSacsText) + "colour = 3 ns\n";
  std::string resonant = kSacsText;
  resonant.replace(resonant.find("stark_shift = 30.5 rad/ns"), 25,
                   "stark_intensity = 16 MW/cm2\nstark_wavelength = 1014.254 nm");

  const auto out = (dir / "out").string();
  auto sim = [&](const std::string& name, const std::string& text) {
    return cli({"simulate", "--config", write_config(dir, name, text).string(), "--out", out}).code;
  };
  CHECK(sim("ok.cfg", kSacsText) == sacs::cli::kOk);
  CHECK(sim("zero_width.cfg", zero_width) == sacs::cli::kConfigError);
  CHECK(sim("bare.cfg", bare) == sacs::cli::kConfigError);
  CHECK(sim("unknown.cfg", unknown) == sacs::cli::kConfigError);
  CHECK(sim("resonant.cfg", resonant) == sacs::cli::kPhysicsError);
  CHECK(cli({"simulate", "--config", (dir / "absent.cfg").string(), "--out", out}).code == sacs::cli::kConfigError);
  CHECK(cli({"simulate", "--config", (kConfigs / "sacs_hg.cfg").string()}).code == sacs::cli::kConfigError);
  CHECK(cli({"frobnicate"}).code == sacs::cli::kConfigError);
}

TEST_CASE("sweep kinds") {
  const auto dir = scratch("sweeps");
  CHECK(cli({"sweep", "banana", "--config", (kConfigs / "fig3.cfg").string(), "--out", dir.string()}).code ==
        sacs::cli::kConfigError);
  CHECK(cli({"sweep", "contour", "--config", (kConfigs / "fig3.cfg").string(), "--out", dir.string()}).code ==
        sacs::cli::kConfigError);

  const auto surf = dir / "surface";
  REQUIRE(cli({"sweep", "surface", "--config", (kConfigs / "fig3.cfg").string(), "--out", surf.string(), "--grid",
               "11"})
              .code == 0);
  const std::string csv = sacs::read_text_file(surf / "surface.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "omega,stark,lambda_minus,lambda_zero,lambda_plus");
  int rows = 0;
  while (std::getline(in, line)) {
    double o, s, lm, l0, lp;
    char c;
    std::istringstream ls(line);
    ls >> o >> c >> s >> c >> lm >> c >> l0 >> c >> lp;
    ++rows;
    if (o != 0.0) continue;
    CHECK(lp == doctest::Approx(1.0));
    if (s == 0.0) continue;
    CHECK(lm == doctest::Approx(-s));
    CHECK(l0 == doctest::Approx(0.0));
  }
  CHECK(rows == 121);
  const auto meta = read_json(surf / "surface.meta.json");
  CHECK(meta["axes"][0]["units"] == "delta2");

  const auto ll = dir / "levelline";
  REQUIRE(cli({"sweep", "levelline", "--config", (kConfigs / "fig4.cfg").string(), "--out", ll.string()}).code == 0);
  const double end = read_json(ll / "levelline.meta.json")["omega_at_zero_stark"].get<double>();
  CHECK(end > 2.5);
  CHECK(end < 2.9);

  const auto js = dir / "json";
  REQUIRE(cli({"sweep", "gap", "--config", (kConfigs / "fig4.cfg").string(), "--out", js.string(), "--format", "json",
               "--grid", "5"})
              .code == 0);
  CHECK(read_json(js / "gap.json")["values"]["gap"].size() == 25);
  const auto manifest = read_json(js / "manifest.json");
  REQUIRE(manifest["outputs"].size() == 1);
  CHECK(manifest["outputs"][0]["file"] == "gap.json");
}

TEST_CASE("simulate with JSON output") {
  const auto dir = scratch("json_sim");
  REQUIRE(cli({"simulate", "--config", (kConfigs / "fstirap.cfg").string(), "--out", dir.string(), "--format",
               "json"})
              .code == 0);
  const auto traj = read_json(dir / "trajectory.json");
  CHECK(traj["columns"].size() == 16);
  CHECK(traj["rows"].size() > 100);
  const auto report = read_json(dir / "report.json");
  CHECK(report["predicted_P3"].get<double>() == doctest::Approx(0.5));
  CHECK(report["populations"]["P3"].get<double>() == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("validate-data") {
  const auto ok = cli({"validate-data", "--data", kTable.string()});
  CHECK(ok.code == sacs::cli::kOk);
  for (const char* row : {"253.728", "407.898", "184.95", "1014.254", "140.262", "1357.422", "125.056", "623.602"})
    CHECK(ok.out.find(row) != std::string::npos);

  const auto dir = scratch("validate");
  std::string text = sacs::read_text_file(kTable);
  text.replace(text.find("12.94"), 5, "19.94");
  const auto bad = dir / "corrupt.dat";
  sacs::write_text_file(bad, text);
  const auto r = cli({"validate-data", "--data", bad.string()});
  CHECK(r.code == sacs::cli::kDataTolerance);
  CHECK(r.err.find("6_1P1") != std::string::npos);
  CHECK(r.err.find("row 3") != std::string::npos);

  CHECK(cli({"validate-data", "--data", (dir / "absent.dat").string()}).code == sacs::cli::kConfigError);
}

#include "sacs_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sacs/errors.hpp"
#include "sacs/io.hpp"
#include "sacs/mercury.hpp"
#include "sacs/propagator.hpp"
#include "sacs/protocols.hpp"
#include "sacs/scenario_file.hpp"
#include "sacs/sweeps.hpp"

namespace sacs::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Options {
  std::string config;
  std::string out;
  std::string data;
  std::string kind;
  std::string format = "csv";
  std::optional<std::size_t> grid;
  std::optional<double> dt;
  bool strict = false;
  bool check = false;
};

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
  std::vector<std::string> warnings;
  std::string config_hash;
};

fs::path table_path(const Options& o) { return o.data.empty() ? default_table_path() : fs::path(o.data); }

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

int check_outputs(const fs::path& dir, const Outputs& outs, std::ostream& out, std::ostream& err) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) {
    err << "check: no manifest at " << manifest_path.string() << "\n";
    return kCheckMismatch;
  }
  json manifest;
  try {
    manifest = json::parse(read_text_file(manifest_path));
  } catch (const std::exception& e) {
    err << "check: unreadable manifest: " << e.what() << "\n";
    return kCheckMismatch;
  }
  std::map<std::string, std::string> recorded;
  for (const auto& f : manifest.value("outputs", json::array()))
    recorded[f.value("file", "")] = f.value("fnv1a64", "");

  int bad = 0;
  for (const auto& [name, contents] : outs.files) {
    const std::string fresh = fnv1a64_hex(contents);
    const auto it = recorded.find(name);
    if (it == recorded.end()) {
      err << "check: " << name << " is not in the manifest\n";
      ++bad;
      continue;
    }
    if (it->second != fresh) {
      err << "check: " << name << " differs from the manifest (" << it->second << " vs " << fresh << ")\n";
      ++bad;
    }
    const fs::path p = dir / name;
    if (!fs::exists(p) || file_fnv1a64_hex(p) != it->second) {
      err << "check: " << p.string() << " on disk does not match the manifest\n";
      ++bad;
    }
    recorded.erase(it);
  }
  for (const auto& [name, hash] : recorded) {
    err << "check: manifest lists " << name << " which this run does not produce\n";
    ++bad;
  }
  if (bad) return kCheckMismatch;
  out << "check: " << outs.files.size() << " outputs match " << manifest_path.string() << "\n";
  return kOk;
}

int emit(const std::string& command, const Options& o, const std::vector<std::string>& args, const Outputs& outs,
         double wall_s, std::ostream& out, std::ostream& err) {
  const fs::path dir(o.out);
  if (o.check) return check_outputs(dir, outs, out, err);

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  json manifest;
  manifest["command"] = command;
  manifest["arguments"] = args;
  manifest["config"] = o.config;
  manifest["config_hash"] = outs.config_hash;
  manifest["tool_version"] = tool_version();
  manifest["wall_time_s"] = wall_s;
  manifest["outputs"] = json::array();
  for (const auto& [name, contents] : outs.files) {
    write_text_file(dir / name, contents);
    manifest["outputs"].push_back({{"file", name}, {"bytes", contents.size()}, {"fnv1a64", fnv1a64_hex(contents)}});
  }
  manifest["warnings"] = outs.warnings;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& w : outs.warnings) err << "warning: " << w << "\n";
  out << "wrote " << outs.files.size() << " files and manifest.json to " << dir.string() << "\n";
  return kOk;
}

std::string trajectory_json(const Trajectory& traj) {
  json j;
  j["columns"] = {"t",  "ReC1", "ImC1", "ReC2", "ImC2", "ReC3", "ImC3", "P1", "P2", "P3",
                  "lambda_minus", "lambda_zero", "lambda_plus", "overlap_minus", "overlap_zero", "overlap_plus"};
  j["rows"] = json::array();
  const bool frames = traj.frames.size() == traj.times.size();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    json row = json::array({traj.times[i]});
    for (const cplx& c : traj.states[i].c) {
      row.push_back(c.real());
      row.push_back(c.imag());
    }
    for (double p : traj.populations[i]) row.push_back(p);
    for (std::size_t k = 0; k < 3; ++k) row.push_back(frames ? json(traj.frames[i].values[k]) : json(nullptr));
    for (std::size_t k = 0; k < 3; ++k) row.push_back(frames ? json(traj.overlaps[i][k]) : json(nullptr));
    j["rows"].push_back(std::move(row));
  }
  return j.dump() + "\n";
}

TimeGrid run_grid(const ScenarioConfig& s, const RunSpec& spec, const Options& o) {
  const std::optional<double> dt = o.dt ? o.dt : spec.dt;
  if (dt) {
    const auto [lo, hi] = scenario_span(s);
    return TimeGrid::make(lo, hi, *dt);
  }
  return default_grid(s, spec.norm_step);
}

int cmd_simulate(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunSpec spec = load_run_spec(o.config, table_path(o));
  if (!spec.scenario) throw ConfigError(o.config + ": no scenario defined (run.protocol)");
  const ScenarioConfig& s = *spec.scenario;
  const TimeGrid grid = run_grid(s, spec, o);
  const Trajectory traj = propagate(s, grid);
  const SuperpositionReport rep = analyze_final(traj);

  Outputs outs;
  outs.config_hash = spec.config_hash;
  outs.warnings = s.warnings;
  if (rep.envelopes_active && s.protocol != Protocol::half_scrap)
    outs.warnings.push_back("pulse envelopes had not ended at the last sample");
  if (rep.nonadiabatic)
    outs.warnings.push_back("non-adiabatic: residual P2 = " + format_number(rep.residual, 6) + " exceeds " +
                            format_number(kNonadiabaticResidual, 6));

  json r;
  r["protocol"] = protocol_name(s.protocol);
  r["scenario_hash"] = scenario_hash(s);
  r["grid"] = {{"start", grid.start}, {"end", grid.end}, {"steps", grid.steps()}, {"dt", grid.effective_dt()}};
  r["populations"] = {{"P1", rep.weight1}, {"P2", rep.residual}, {"P3", rep.weight3}};
  r["relative_phase"] = rep.phase_defined ? json(rep.relative_phase) : json(nullptr);
  r["phase_convention"] = "arg(C3/C1) in the rotating frame; the lab-frame phase adds -(w1 + w2) t";
  r["nonadiabatic"] = rep.nonadiabatic;
  r["integrated_p2_ns"] = rep.integrated_p2;
  r["envelopes_active_at_end"] = rep.envelopes_active;
  r["max_norm_drift"] = traj.max_norm_drift;
  if (s.protocol == Protocol::sacs) {
    const auto path = scenario_path(s, grid);
    r["adiabaticity_score"] = number(path.score);
    r["adiabaticity_score_time"] = path.score_time;
  }
  if (s.protocol == Protocol::fstirap && s.mixing_angle) {
    r["mixing_angle"] = *s.mixing_angle;
    r["predicted_P3"] = std::pow(std::sin(*s.mixing_angle), 2);
  }
  if (s.protocol == Protocol::half_scrap) {
    const double tf = grid.end;
    const double omega = envelope_value(s.pump, tf);
    const double delta = effective_detuning(s, tf);
    const double theta = half_scrap_mixing_angle(omega, delta);
    r["omega_eff_readout"] = omega;
    r["delta_eff_readout"] = delta;
    r["mixing_angle"] = theta;
    r["predicted_P3"] = std::pow(std::sin(theta), 2);
    r["coherence_condition"] = omega > std::abs(delta);
  }
  r["warnings"] = outs.warnings;

  const bool as_json = o.format == "json";
  outs.files.emplace_back(as_json ? "trajectory.json" : "trajectory.csv",
                          as_json ? trajectory_json(traj) : trajectory_csv(traj));
  outs.files.emplace_back("report.json", r.dump(2) + "\n");

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out << protocol_name(s.protocol) << ": P1=" << format_number(rep.weight1, 6) << " P2=" << format_number(rep.residual, 6)
      << " P3=" << format_number(rep.weight3, 6);
  if (rep.phase_defined) out << " phase=" << format_number(rep.relative_phase, 6) << " rad";
  out << " (" << grid.steps() << " steps)\n";
  const int code = emit("simulate", o, args, outs, wall, out, err);
  if (code == kOk && o.strict && rep.nonadiabatic) {
    err << "strict: non-adiabatic run\n";
    return kNonadiabatic;
  }
  return code;
}

Axis regrid(Axis a, const Options& o) {
  if (o.grid) a = Axis::make(a.name, a.min, a.max, *o.grid, a.units);
  return a;
}

int cmd_sweep(const Options& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunSpec spec = load_run_spec(o.config, table_path(o));
  SweepOptions so;
  so.norm_step = spec.norm_step;
  so.dt = o.dt ? o.dt : spec.dt;

  Outputs outs;
  outs.config_hash = spec.config_hash;
  const bool as_json = o.format == "json";
  auto add_grid = [&](const SweepGrid& g) {
    if (as_json) {
      outs.files.emplace_back(o.kind + ".json", grid_json(g));
    } else {
      outs.files.emplace_back(o.kind + ".csv", grid_csv(g));
      outs.files.emplace_back(o.kind + ".meta.json", grid_metadata_json(g));
    }
    out << o.kind << ": " << g.cells() << " cells\n";
  };

  if (o.kind == "detuning") {
    if (!spec.detuning) throw ConfigError(o.config + ": no [sweep.detuning] section");
    if (!spec.scenario || spec.scenario->protocol == Protocol::half_scrap)
      throw ConfigError(o.config + ": detuning sweep needs a ladder scenario");
    outs.warnings = spec.scenario->warnings;
    add_grid(detuning_scan(*spec.scenario, regrid(spec.detuning->axis, o), so));
  } else if (o.kind == "contour") {
    if (!spec.contour) throw ConfigError(o.config + ": no [sweep.contour] section");
    add_grid(contour_sweep(spec.contour->params, regrid(spec.contour->stokes, o), regrid(spec.contour->delay, o), so));
  } else if (o.kind == "weights") {
    if (!spec.weights || !spec.sacs) throw ConfigError(o.config + ": weight sweep needs [sacs] and [sweep.weights]");
    add_grid(weight_control_sweep(*spec.sacs, regrid(spec.weights->ratio, o), so));
  } else {
    if (!spec.surface) throw ConfigError(o.config + ": no [sweep.surface] section");
    const SurfaceSpec& sf = *spec.surface;
    const Axis ax = regrid(sf.omega, o);
    const Axis ay = regrid(sf.stark, o);
    if (o.kind == "surface") {
      add_grid(eigen_surfaces(sf.delta2, ax, ay));
    } else if (o.kind == "gap") {
      add_grid(gap_surface(sf.delta2, ax, ay));
    } else {
      const SweepGrid g = gap_surface(sf.delta2, ax, ay);
      const ParameterPath path = level_line(g, "gap", sf.level, sf.anchor);
      const auto omega0 = path.omega_at_stark(0.0);
      json meta;
      meta["quantity"] = "gap";
      meta["level"] = sf.level;
      meta["anchor"] = {sf.anchor.first, sf.anchor.second};
      meta["units"] = "delta2";
      meta["grid"] = {ax.count, ay.count};
      meta["points"] = path.points.size();
      meta["omega_at_zero_stark"] = omega0 ? json(*omega0) : json(nullptr);
      meta["tool_version"] = tool_version();
      if (as_json) {
        json rows = json::array();
        for (const auto& p : path.points) rows.push_back({p.t, p.omega, p.stark, p.gap});
        meta["columns"] = {"arc_length", "omega", "stark", "gap"};
        meta["rows"] = rows;
        outs.files.emplace_back("levelline.json", meta.dump(2) + "\n");
      } else {
        std::string csv = "arc_length,omega,stark,gap\n";
        for (const auto& p : path.points)
          csv += format_number(p.t) + ',' + format_number(p.omega) + ',' + format_number(p.stark) + ',' +
                 format_number(p.gap) + '\n';
        outs.files.emplace_back("levelline.csv", csv);
        outs.files.emplace_back("levelline.meta.json", meta.dump(2) + "\n");
      }
      out << "levelline: " << path.points.size() << " points";
      if (omega0) out << ", omega at zero Stark shift = " << format_number(*omega0, 6) << " delta2";
      out << "\n";
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit("sweep " + o.kind, o, args, outs, wall, out, err);
}

int cmd_validate_data(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path path = table_path(o);
  const TransitionTable table = TransitionTable::load(path, ChecksumPolicy::report);
  const auto rows = validate_table(table);
  int flagged = 0;
  out << "transition            lambda/nm   A/1e8s^-1  d/1e-30Cm  d(A)/1e-30Cm  d-dev    A-dev\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    std::ostringstream line;
    line << r.record->upper << "-" << r.record->lower;
    std::string name = line.str();
    name.resize(std::max<std::size_t>(name.size(), 20), ' ');
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %10.3f %10.4g %10.4g %12.4g %+8.4f %+8.4f %s\n", name.c_str(),
                  r.record->wavelength_nm, r.record->einstein_a, r.record->dipole, r.dipole_from_a,
                  r.dipole_deviation, r.a_deviation, r.flagged ? "FAIL" : "ok");
    out << buf;
    if (r.flagged) {
      ++flagged;
      err << "row " << k + 1 << " (" << r.record->upper << "-" << r.record->lower
          << "): dipole inconsistent with Einstein A by " << format_number(100.0 * r.dipole_deviation, 4) << "%\n";
    }
  }
  out << rows.size() << " rows checked, " << flagged << " outside " << format_number(100.0 * kTableTolerance, 3)
      << "%\n";
  try {
    out << "Stark coefficient (" << mercury_stark_context().target << ", "
        << format_number(mercury_stark_context().wavelength_nm, 6)
        << " nm): " << format_number(stark_coefficient(table, mercury_stark_context()), 6) << " s^-1/(W/cm2)\n";
  } catch (const std::exception& e) {
    out << "Stark coefficient unavailable: " << e.what() << "\n";
  }
  if (!table.checksum_problem().empty()) {
    err << table.checksum_problem() << "\n";
    return kDataTolerance;
  }
  return flagged ? kDataTolerance : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adiabatic preparation of coherent superpositions in a three-state ladder"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario config file")->required();
    sub->add_option("--out", o.out, "Output directory")->required();
    sub->add_option("--data", o.data, "Transition data file");
    sub->add_option("--dt", o.dt, "Fixed time step in ns")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--check", o.check, "Verify outputs against the existing manifest instead of writing");
  };

  auto* sim = app.add_subcommand("simulate", "Propagate one scenario");
  common(sim);
  sim->add_flag("--strict", o.strict, "Exit 4 on a non-adiabatic result");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("kind", o.kind, "detuning|contour|surface|gap|levelline|weights")
      ->required()
      ->check(CLI::IsMember({"detuning", "contour", "surface", "gap", "levelline", "weights"}));
  common(sweep);
  sweep->add_option("--grid", o.grid, "Override grid resolution per axis")->check(CLI::Range(2, 100000));

  auto* val = app.add_subcommand("validate-data", "Check the transition table against the Einstein relation");
  val->add_option("--data", o.data, "Transition data file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << tool_version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (*sim) return cmd_simulate(o, args, out, err);
    if (*sweep) return cmd_sweep(o, args, out, err);
    if (*val) return cmd_validate_data(o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const PhysicsError& e) {
    err << "physics error: " << e.what() << "\n";
    return kPhysicsError;
  } catch (const EmptyPathError& e) {
    err << "physics error: " << e.what() << "\n";
    return kPhysicsError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace sacs::cli

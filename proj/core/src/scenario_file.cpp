#include "sacs/scenario_file.hpp"

#include <stdexcept>

#include "sacs/errors.hpp"
#include "sacs/io.hpp"
#include "sacs/mercury.hpp"

namespace sacs {

namespace {

struct Levels {
  std::string ground = "6_1S0";
  std::string intermediate = "6_3P1";
  std::string target = "7_1S0";
};

class TableCache {
 public:
  explicit TableCache(std::filesystem::path path) : path_(std::move(path)) {}
  const TransitionTable& get() {
    if (!table_) table_ = TransitionTable::load(path_);
    return *table_;
  }

 private:
  std::filesystem::path path_;
  std::optional<TransitionTable> table_;
};

struct Reader {
  const Config& cfg;
  TableCache& table;
  Levels levels;

  double rabi(const std::string& sec, const std::string& name, const std::string& lower, const std::string& upper) {
    const std::string rk = sec + "." + name + "_rabi";
    const std::string ik = sec + "." + name + "_intensity";
    if (cfg.has(rk) && cfg.has(ik)) throw ConfigError(cfg.origin() + ": give either " + rk + " or " + ik);
    if (cfg.has(rk)) return cfg.quantity(rk, Dimension::angular_rate);
    if (cfg.has(ik)) return rabi_from_intensity(table.get().find(lower, upper), cfg.quantity(ik, Dimension::intensity));
    throw ConfigError(cfg.origin() + ": missing " + rk + " or " + ik);
  }

  double stark(const std::string& sec) {
    const std::string sk = sec + ".stark_shift";
    const std::string ik = sec + ".stark_intensity";
    if (cfg.has(sk) && cfg.has(ik)) throw ConfigError(cfg.origin() + ": give either " + sk + " or " + ik);
    if (cfg.has(ik)) {
      StarkContext ctx = mercury_stark_context();
      ctx.target = levels.target;
      ctx.wavelength_nm = cfg.quantity_or(sec + ".stark_wavelength", Dimension::wavelength, ctx.wavelength_nm);
      return stark_shift_from_intensity(table.get(), ctx, cfg.quantity(ik, Dimension::intensity));
    }
    return cfg.quantity_or(sk, Dimension::angular_rate, 0.0);
  }

  double omega_eff(const std::string& sec) {
    const std::string rk = sec + ".omega_eff";
    const std::string ik = sec + ".pump_intensity";
    if (cfg.has(rk) && cfg.has(ik)) throw ConfigError(cfg.origin() + ": give either " + rk + " or " + ik);
    if (cfg.has(ik)) {
      TwoPhotonContext ctx = mercury_two_photon_context();
      ctx.ground = levels.ground;
      ctx.target = levels.target;
      ctx.pump_wavelength_nm = cfg.quantity_or(sec + ".pump_wavelength", Dimension::wavelength, ctx.pump_wavelength_nm);
      return effective_two_photon_rabi(table.get(), ctx, cfg.quantity(ik, Dimension::intensity));
    }
    return cfg.quantity(rk, Dimension::angular_rate);
  }
};

PulseShape parse_shape(const std::string& s, const std::string& origin) {
  if (s == "sine_squared" || s == "sin2") return PulseShape::sine_squared;
  if (s == "gaussian") return PulseShape::gaussian;
  throw ConfigError(origin + ": unknown pulse shape " + s);
}

template <class F>
auto as_config_error(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Axis axis(const Config& cfg, const std::string& sec, const std::string& name, Dimension dim, const std::string& units,
          std::size_t default_count) {
  const double lo = cfg.quantity(sec + "." + name + "_min", dim);
  const double hi = cfg.quantity(sec + "." + name + "_max", dim);
  const std::size_t n = cfg.count_or(sec + "." + name + "_count", default_count);
  return as_config_error([&] { return Axis::make(name, lo, hi, n, units); });
}

void read_sacs(Reader& r, RunSpec& spec) {
  const Config& c = r.cfg;
  SacsParams p;
  p.width = c.quantity("sacs.width", Dimension::time);
  p.delay = c.quantity("sacs.delay", Dimension::time);
  p.shape = parse_shape(c.text_or("sacs.shape", "sine_squared"), c.origin());
  p.delta2 = c.quantity("sacs.delta2", Dimension::angular_rate);
  p.two_photon_detuning = c.quantity_or("sacs.two_photon_detuning", Dimension::angular_rate, 0.0);
  p.beta = c.quantity_or("sacs.beta", Dimension::angle, 0.0);
  p.weight_control = c.flag_or("sacs.weight_control", false);
  if (!(p.width > 0.0)) throw ConfigError(c.origin() + ": sacs.width must be > 0");
  p.omega1_peak = r.rabi("sacs", "pump", r.levels.ground, r.levels.intermediate);
  p.omega2_peak = r.rabi("sacs", "stokes", r.levels.intermediate, r.levels.target);
  p.stark_peak = r.stark("sacs");
  spec.sacs = p;
  spec.scenario = as_config_error([&] { return make_sacs(p); });
}

void read_stirap(Reader& r, RunSpec& spec, bool fractional) {
  const Config& c = r.cfg;
  const std::string sec = fractional ? "fstirap" : "stirap";
  StirapParams p;
  p.width = c.quantity(sec + ".width", Dimension::time);
  p.delay = c.quantity(sec + ".delay", Dimension::time);
  p.delta2 = c.quantity_or(sec + ".delta2", Dimension::angular_rate, 0.0);
  p.beta = c.quantity_or(sec + ".beta", Dimension::angle, 0.0);
  if (!(p.width > 0.0)) throw ConfigError(c.origin() + ": " + sec + ".width must be > 0");
  p.pump_peak = r.rabi(sec, "pump", r.levels.ground, r.levels.intermediate);
  p.stokes_peak = r.rabi(sec, "stokes", r.levels.intermediate, r.levels.target);
  std::optional<double> alpha;
  if (fractional) alpha = c.quantity(sec + ".alpha", Dimension::angle);
  spec.scenario = as_config_error([&] { return make_stirap(p, alpha); });
}

void read_half_scrap(Reader& r, RunSpec& spec) {
  const Config& c = r.cfg;
  HalfScrapParams p;
  p.width = c.quantity("half_scrap.width", Dimension::time);
  p.pump_delay = c.quantity("half_scrap.pump_delay", Dimension::time);
  p.pump_shift_ratio = c.number_or("half_scrap.pump_shift_ratio", p.pump_shift_ratio);
  p.static_detuning = c.optional_quantity("half_scrap.static_detuning", Dimension::angular_rate);
  p.readout_time = c.optional_quantity("half_scrap.readout", Dimension::time);
  p.beta = c.quantity_or("half_scrap.beta", Dimension::angle, 0.0);
  if (!(p.width > 0.0)) throw ConfigError(c.origin() + ": half_scrap.width must be > 0");
  p.omega_eff_peak = r.omega_eff("half_scrap");
  p.stark_peak = r.stark("half_scrap");
  spec.scenario = as_config_error([&] { return make_half_scrap(p); });
}

void read_sweeps(const Config& c, RunSpec& spec) {
  if (c.has_section("sweep.detuning")) {
    spec.detuning = DetuningSweepSpec{axis(c, "sweep.detuning", "two_photon_detuning", Dimension::angular_rate,
                                           "rad/ns", 41)};
  }
  if (c.has_section("sweep.contour")) {
    ContourSweepSpec s;
    const std::string sec = "sweep.contour";
    s.params.width = c.quantity(sec + ".width", Dimension::time);
    if (!(s.params.width > 0.0)) throw ConfigError(c.origin() + ": " + sec + ".width must be > 0");
    s.params.pump_peak = c.quantity(sec + ".pump_rabi", Dimension::angular_rate);
    s.params.delta2 = c.quantity(sec + ".delta2", Dimension::angular_rate);
    s.params.stark_peak = c.quantity_or(sec + ".stark_shift", Dimension::angular_rate, 0.0);
    s.params.stark_offset = c.number_or(sec + ".stark_offset", s.params.stark_offset);
    s.stokes = axis(c, sec, "stokes", Dimension::angular_rate, "rad/ns", 101);
    s.delay = axis(c, sec, "delay", Dimension::time, "ns", 101);
    spec.contour = s;
  }
  if (c.has_section("sweep.surface")) {
    SurfaceSpec s;
    const std::string sec = "sweep.surface";
    s.delta2 = c.quantity_or(sec + ".delta2", Dimension::angular_rate, 1.0);
    if (!(s.delta2 > 0.0)) throw ConfigError(c.origin() + ": " + sec + ".delta2 must be > 0");
    s.omega = axis(c, sec, "omega", Dimension::relative, "delta2", 101);
    s.stark = axis(c, sec, "stark", Dimension::relative, "delta2", 101);
    s.level = c.quantity_or(sec + ".level", Dimension::relative, s.level);
    s.anchor.first = c.quantity_or(sec + ".anchor_omega", Dimension::relative, 0.0);
    s.anchor.second = c.quantity_or(sec + ".anchor_stark", Dimension::relative, s.level);
    spec.surface = s;
  }
  if (c.has_section("sweep.weights")) {
    const double lo = c.number("sweep.weights.ratio_min");
    const double hi = c.number("sweep.weights.ratio_max");
    const std::size_t n = c.count_or("sweep.weights.ratio_count", 21);
    spec.weights = WeightSweepSpec{as_config_error([&] { return Axis::make("ratio", lo, hi, n, "1"); })};
  }
}

}  // namespace

RunSpec build_run_spec(const Config& cfg, const std::filesystem::path& table_path) {
  TableCache cache(table_path);
  Reader r{cfg, cache, {}};
  r.levels.ground = cfg.text_or("levels.ground", r.levels.ground);
  r.levels.intermediate = cfg.text_or("levels.intermediate", r.levels.intermediate);
  r.levels.target = cfg.text_or("levels.target", r.levels.target);

  RunSpec spec;
  spec.config_hash = fnv1a64_hex(cfg.source_text());
  spec.dt = cfg.optional_quantity("run.dt", Dimension::time);
  if (spec.dt && !(*spec.dt > 0.0)) throw ConfigError(cfg.origin() + ": run.dt must be > 0");
  spec.norm_step = cfg.number_or("run.norm_step", kDefaultNormStep);
  if (!(spec.norm_step > 0.0 && spec.norm_step < 0.5))
    throw ConfigError(cfg.origin() + ": run.norm_step must lie in (0, 0.5)");

  if (cfg.has("run.protocol")) {
    const std::string name = cfg.text("run.protocol");
    Protocol proto;
    try {
      proto = parse_protocol(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(cfg.origin() + ": " + e.what());
    }
    switch (proto) {
      case Protocol::sacs:
        read_sacs(r, spec);
        break;
      case Protocol::stirap:
        read_stirap(r, spec, false);
        break;
      case Protocol::fstirap:
        read_stirap(r, spec, true);
        break;
      case Protocol::half_scrap:
        read_half_scrap(r, spec);
        break;
    }
  }
  read_sweeps(cfg, spec);
  cfg.finish();
  if (!spec.scenario && !spec.contour && !spec.surface)
    throw ConfigError(cfg.origin() + ": nothing to run (no run.protocol and no sweep section)");
  return spec;
}

RunSpec load_run_spec(const std::filesystem::path& config_path, const std::filesystem::path& table_path) {
  return build_run_spec(Config::load(config_path), table_path);
}

std::filesystem::path default_table_path() {
  const std::filesystem::path build{SACS_DATA_FILE};
  if (std::filesystem::exists(build)) return build;
  return std::filesystem::path{SACS_INSTALLED_DATA_FILE};
}

}  // namespace sacs

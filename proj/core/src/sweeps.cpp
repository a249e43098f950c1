#include "sacs/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sacs/io.hpp"

namespace sacs {

Axis Axis::make(std::string name, double min, double max, std::size_t count, std::string units) {
  if (count < 2) throw std::invalid_argument("axis " + name + ": count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw std::invalid_argument("axis " + name + ": requires finite min < max");
  return {std::move(name), min, max, count, std::move(units)};
}

double Axis::at(std::size_t i) const {
  if (i + 1 == count) return max;
  return min + step() * static_cast<double>(i);
}

std::size_t SweepGrid::quantity_index(const std::string& name) const {
  const auto it = std::find(quantities.begin(), quantities.end(), name);
  if (it == quantities.end()) throw std::out_of_range("grid has no quantity " + name);
  return static_cast<std::size_t>(it - quantities.begin());
}

double SweepGrid::value(const std::string& quantity, std::size_t i, std::size_t j) const {
  return values[quantity_index(quantity)].at(i * cols() + j);
}

std::vector<double>& SweepGrid::column(const std::string& quantity) { return values[quantity_index(quantity)]; }

const std::vector<double>& SweepGrid::column(const std::string& quantity) const {
  return values[quantity_index(quantity)];
}

SweepGrid make_grid(std::vector<Axis> axes, std::vector<std::string> quantities) {
  if (axes.empty() || axes.size() > 2) throw std::invalid_argument("grid needs one or two axes");
  SweepGrid g;
  g.axes = std::move(axes);
  g.quantities = std::move(quantities);
  g.values.assign(g.quantities.size(), std::vector<double>(g.cells(), 0.0));
  return g;
}

void parallel_cells(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      (void)w;
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string grid_csv(const SweepGrid& g) {
  std::string out;
  for (const auto& a : g.axes) out += a.name + ',';
  for (std::size_t q = 0; q < g.quantities.size(); ++q) out += g.quantities[q] + (q + 1 < g.quantities.size() ? "," : "");
  out += '\n';
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      out += format_number(g.axes[0].at(i)) + ',';
      if (g.axes.size() > 1) out += format_number(g.axes[1].at(j)) + ',';
      const std::size_t cell = i * g.cols() + j;
      for (std::size_t q = 0; q < g.quantities.size(); ++q)
        out += format_number(g.values[q][cell]) + (q + 1 < g.quantities.size() ? "," : "");
      out += '\n';
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json metadata(const SweepGrid& g) {
  nlohmann::ordered_json j;
  j["axes"] = nlohmann::ordered_json::array();
  for (const auto& a : g.axes)
    j["axes"].push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}, {"units", a.units}});
  j["quantities"] = g.quantities;
  j["layout"] = "row-major";
  j["scenario_hash"] = g.scenario_hash;
  j["tool_version"] = tool_version();
  return j;
}

}  // namespace

std::string grid_metadata_json(const SweepGrid& g) { return metadata(g).dump(2) + "\n"; }

std::string grid_json(const SweepGrid& g) {
  auto j = metadata(g);
  j["values"] = nlohmann::ordered_json::object();
  for (std::size_t q = 0; q < g.quantities.size(); ++q) j["values"][g.quantities[q]] = g.values[q];
  return j.dump(2) + "\n";
}

std::array<double, 3> final_state_populations(const ScenarioConfig& s, const SweepOptions& opt) {
  TimeGrid grid;
  if (opt.dt) {
    const auto [lo, hi] = scenario_span(s);
    grid = TimeGrid::make(lo, hi, *opt.dt);
  } else {
    grid = default_grid(s, opt.norm_step);
  }
  PropagateOptions po;
  po.record_samples = false;
  po.track_frames = false;
  return final_populations(propagate(s, grid, po)).p;
}

// --- surfaces ---

SweepGrid eigen_surfaces(double delta2, const Axis& omega, const Axis& stark, bool normalized) {
  if (!(delta2 > 0.0) || !std::isfinite(delta2)) throw std::invalid_argument("eigen_surfaces: delta2 must be > 0");
  const std::string units = normalized ? "delta2" : "rad/ns";
  Axis ax = omega;
  Axis ay = stark;
  ax.units = units;
  ay.units = units;
  SweepGrid g = make_grid({ax, ay}, {"lambda_minus", "lambda_zero", "lambda_plus"});
  const double scale = normalized ? delta2 : 1.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      HamiltonianParams p;
      p.omega1 = p.omega2 = ax.at(i) * scale;
      p.stark = ay.at(j) * scale;
      p.delta2 = delta2;
      p.delta3 = -delta2;
      const auto f = eigensystem(build_hamiltonian(p));
      for (std::size_t k = 0; k < 3; ++k) g.values[k][i * g.cols() + j] = f.values[k] / scale;
    }
  }
  return g;
}

SweepGrid gap_surface(double delta2, const Axis& omega, const Axis& stark, bool normalized) {
  const SweepGrid e = eigen_surfaces(delta2, omega, stark, normalized);
  SweepGrid g = make_grid(e.axes, {"gap"});
  for (std::size_t c = 0; c < g.cells(); ++c) g.values[0][c] = e.values[1][c] - e.values[0][c];
  return g;
}

// --- paths ---

bool ParameterPath::closed_at_origin(double tol) const {
  if (points.empty()) return false;
  auto near = [&](const PathPoint& p) { return std::hypot(p.omega, p.stark) <= tol; };
  return near(points.front()) && near(points.back());
}

std::optional<double> ParameterPath::omega_at_stark(double stark) const {
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double a = points[k].stark - stark;
    const double b = points[k + 1].stark - stark;
    if (a == 0.0) return points[k].omega;
    if (a * b <= 0.0) {
      const double s = a / (a - b);
      return points[k].omega + s * (points[k + 1].omega - points[k].omega);
    }
  }
  if (!points.empty() && points.back().stark == stark) return points.back().omega;
  return std::nullopt;
}

ParameterPath ParameterPath::scaled(double factor) const {
  ParameterPath out = *this;
  for (auto& p : out.points) {
    p.omega *= factor;
    p.stark *= factor;
    p.gap *= factor;
  }
  return out;
}

ScenarioPathReport scenario_path(const ScenarioConfig& s, std::optional<TimeGrid> grid) {
  if (s.protocol != Protocol::sacs) throw std::invalid_argument("scenario_path: SACS-type scenario required");
  const TimeGrid g = grid ? *grid : default_grid(s);
  const std::size_t n = g.steps();
  const double dt = g.effective_dt();

  ScenarioPathReport r;
  r.path.points.reserve(n + 1);
  AdiabaticFrame prev;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = k == n ? g.end : g.start + static_cast<double>(k) * dt;
    const HermitianMatrix3 h = hamiltonian_at(s, t);
    const AdiabaticFrame sorted = eigensystem(h);
    r.path.points.push_back({t, envelope_value(s.pump, t), envelope_value(s.stark, t),
                             sorted.values[kZero] - sorted.values[kMinus]});
    AdiabaticFrame cur = sorted;
    if (k == 0) {
      cur.ordering = FrameOrdering::continuity;
      prev = cur;
      continue;
    }
    const double norm = h.frobenius_norm();
    cur = align_degenerate(prev, track_adiabatic(prev, sorted), 1e-6 * norm);
    const double coupling = nonadiabatic_coupling(prev, cur, dt)[kZero][kMinus];
    const double gap = std::abs(cur.values[kZero] - cur.values[kMinus]);
    if (gap <= 1e-6 * norm) {
      if (coupling * dt > 1e-3) {
        r.score = std::numeric_limits<double>::infinity();
        r.score_time = t;
      } else {
        ++r.skipped;
      }
    } else if (coupling / gap > r.score) {
      r.score = coupling / gap;
      r.score_time = t;
    }
    prev = cur;
  }
  return r;
}

namespace {

double segment_distance(double px, double py, const PathPoint& a, const PathPoint& b) {
  const double dx = b.omega - a.omega;
  const double dy = b.stark - a.stark;
  const double len2 = dx * dx + dy * dy;
  double s = len2 > 0.0 ? ((px - a.omega) * dx + (py - a.stark) * dy) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(px - (a.omega + s * dx), py - (a.stark + s * dy));
}

}  // namespace

PathDistance path_distance(const ParameterPath& path, const ParameterPath& reference) {
  if (path.empty() || reference.empty()) throw std::invalid_argument("path_distance: empty path");
  PathDistance d;
  for (const auto& p : path.points) {
    double best = std::hypot(p.omega - reference.points[0].omega, p.stark - reference.points[0].stark);
    for (std::size_t k = 0; k + 1 < reference.points.size(); ++k)
      best = std::min(best, segment_distance(p.omega, p.stark, reference.points[k], reference.points[k + 1]));
    d.max = std::max(d.max, best);
    d.mean += best;
  }
  d.mean /= static_cast<double>(path.points.size());
  return d;
}

// --- population sweeps ---

namespace {

void store_populations(SweepGrid& g, std::size_t cell, const std::array<double, 3>& p) {
  for (std::size_t k = 0; k < 3; ++k) g.values[k][cell] = p[k];
}

}  // namespace

SweepGrid detuning_scan(const ScenarioConfig& base, const Axis& two_photon, const SweepOptions& opt) {
  SweepGrid g = make_grid({two_photon}, {"P1", "P2", "P3"});
  g.scenario_hash = scenario_hash(base);
  parallel_cells(
      g.cells(),
      [&](std::size_t i) {
        ScenarioConfig s = base;
        s.delta3 = -s.delta2 + two_photon.at(i);
        store_populations(g, i, final_state_populations(s, opt));
      },
      opt.threads);
  return g;
}

ScenarioConfig contour_scenario(const ContourParams& p, double stokes_peak, double delay) {
  if (!(p.width > 0.0)) throw std::invalid_argument("contour: width must be > 0");
  if (p.pump_peak < 0.0 || stokes_peak < 0.0 || p.stark_peak < 0.0)
    throw std::invalid_argument("contour: peaks must be >= 0");
  ScenarioConfig s;
  s.protocol = Protocol::sacs;
  s.delta2 = p.delta2;
  s.delta3 = -p.delta2;
  s.pump = {PulseEnvelope::gaussian(p.pump_peak, p.width, 0.0)};
  s.stokes = {PulseEnvelope::gaussian(stokes_peak, p.width, delay)};
  if (p.stark_peak > 0.0)
    s.stark = {PulseEnvelope::gaussian(p.stark_peak, p.width, delay + p.stark_offset * p.width)};
  s.weight_control = true;
  return s;
}

SweepGrid contour_sweep(const ContourParams& p, const Axis& stokes_peak, const Axis& delay, const SweepOptions& opt) {
  SweepGrid g = make_grid({stokes_peak, delay}, {"P1", "P2", "P3"});
  g.scenario_hash = scenario_hash(contour_scenario(p, stokes_peak.min, delay.min));
  const std::size_t cols = g.cols();
  parallel_cells(
      g.cells(),
      [&](std::size_t cell) {
        const auto s = contour_scenario(p, stokes_peak.at(cell / cols), delay.at(cell % cols));
        store_populations(g, cell, final_state_populations(s, opt));
      },
      opt.threads);
  return g;
}

SweepGrid weight_control_sweep(const SacsParams& base, const Axis& ratio, const SweepOptions& opt) {
  if (!(ratio.min > 0.0)) throw std::invalid_argument("weight control: ratios must be > 0");
  SweepGrid g = make_grid({ratio}, {"P1", "P2", "P3", "ratio_observed", "ratio_predicted"});
  g.scenario_hash = scenario_hash(make_sacs(base));
  const double power = base.omega1_peak * base.omega1_peak + base.omega2_peak * base.omega2_peak;
  parallel_cells(
      g.cells(),
      [&](std::size_t i) {
        const double r = ratio.at(i);
        SacsParams p = base;
        p.weight_control = true;
        p.omega2_peak = std::sqrt(power / (1.0 + r * r));
        p.omega1_peak = r * p.omega2_peak;
        const auto pop = final_state_populations(make_sacs(p), opt);
        store_populations(g, i, pop);
        g.values[3][i] = pop[0] > 0.0 ? pop[2] / pop[0] : std::numeric_limits<double>::infinity();
        g.values[4][i] = r * r;
      },
      opt.threads);
  return g;
}

}  // namespace sacs

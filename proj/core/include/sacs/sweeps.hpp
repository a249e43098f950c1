#pragma once

// Parameter sweeps, eigenvalue surfaces, gap level lines and adiabaticity
// scoring of scenario paths in the (Omega, Delta_S) plane.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sacs/propagator.hpp"
#include "sacs/protocols.hpp"
#include "sacs/scenario.hpp"

namespace sacs {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;
  std::string units;

  /// Throws std::invalid_argument unless count >= 2 and min < max.
  static Axis make(std::string name, double min, double max, std::size_t count, std::string units);
  double at(std::size_t i) const;
  double step() const { return (max - min) / static_cast<double>(count - 1); }
};

/// One- or two-dimensional grid. Cell (i, j) has row index i on axes[0] and
/// column index j on axes[1]; values are stored row-major per quantity.
struct SweepGrid {
  std::vector<Axis> axes;
  std::vector<std::string> quantities;
  std::vector<std::vector<double>> values;
  std::string scenario_hash;

  std::size_t rows() const { return axes.empty() ? 0 : axes[0].count; }
  std::size_t cols() const { return axes.size() > 1 ? axes[1].count : 1; }
  std::size_t cells() const { return rows() * cols(); }

  std::size_t quantity_index(const std::string& name) const;
  double value(const std::string& quantity, std::size_t i, std::size_t j = 0) const;
  std::vector<double>& column(const std::string& quantity);
  const std::vector<double>& column(const std::string& quantity) const;
};

SweepGrid make_grid(std::vector<Axis> axes, std::vector<std::string> quantities);

/// Runs fn(cell) for every cell index on up to `threads` workers (0 = hardware
/// concurrency). Callers write into per-cell slots, so the merge is
/// independent of scheduling.
void parallel_cells(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

/// Axis columns followed by one column per quantity, rows in row-major order.
std::string grid_csv(const SweepGrid& g);
/// Metadata sidecar: axes, units, quantities, scenario hash, tool version.
std::string grid_metadata_json(const SweepGrid& g);
/// Metadata plus the values, for --format json.
std::string grid_json(const SweepGrid& g);

struct SweepOptions {
  double norm_step = kDefaultNormStep;
  std::optional<double> dt;  // fixed step, overrides norm_step
  unsigned threads = 0;
};

/// Final-state propagation of one scenario without recording samples.
std::array<double, 3> final_state_populations(const ScenarioConfig& s, const SweepOptions& opt = {});

// --- eigenvalue surfaces at two-photon resonance, Omega1 = Omega2 = Omega ---

/// Axes in units of delta2 when `normalized`, else rad/ns. Quantities
/// lambda_minus, lambda_zero, lambda_plus (same units as the axes).
SweepGrid eigen_surfaces(double delta2, const Axis& omega, const Axis& stark, bool normalized = true);
/// Quantity "gap" = lambda_zero - lambda_minus.
SweepGrid gap_surface(double delta2, const Axis& omega, const Axis& stark, bool normalized = true);

// --- paths in the (Omega, Delta_S) plane ---

struct PathPoint {
  double t = 0.0;  // time (scenario paths) or arc length (level lines)
  double omega = 0.0;
  double stark = 0.0;
  double gap = 0.0;
};

struct ParameterPath {
  std::vector<PathPoint> points;

  bool empty() const { return points.empty(); }
  /// First and last points within `tol` of the origin.
  bool closed_at_origin(double tol) const;
  /// Omega at the first crossing of Delta_S = stark, by linear interpolation.
  std::optional<double> omega_at_stark(double stark) const;
  ParameterPath scaled(double factor) const;
};

class EmptyPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Marching-squares contour of `quantity` at `level` on a 2-D grid
/// (axes[0] = Omega, axes[1] = Delta_S), linear interpolation on cell edges.
/// Returns the polyline nearest to `anchor`, oriented to start at its end
/// closest to the anchor. A surface identically equal to `level` yields the
/// grid boundary. Throws EmptyPathError if no contour exists.
ParameterPath level_line(const SweepGrid& surface, const std::string& quantity, double level,
                         std::pair<double, double> anchor);

struct ScenarioPathReport {
  ParameterPath path;       // rad/ns, gap from the instantaneous eigensystem
  double score = 0.0;       // max_t coupling(Phi0, Phi-) / gap, dimensionless
  double score_time = 0.0;  // time of the maximum
  std::size_t skipped = 0;  // samples at exact degeneracy without coupling
};

/// Samples Omega(t) = pump envelope and Delta_S(t) on the propagation grid.
ScenarioPathReport scenario_path(const ScenarioConfig& s, std::optional<TimeGrid> grid = std::nullopt);

/// Largest and mean distance from each path point to the reference polyline.
struct PathDistance {
  double max = 0.0;
  double mean = 0.0;
};
PathDistance path_distance(const ParameterPath& path, const ParameterPath& reference);

// --- population sweeps ---

/// Varies the two-photon detuning delta2 + delta3 (keeping delta2) over the
/// axis; quantities P1, P2, P3.
SweepGrid detuning_scan(const ScenarioConfig& base, const Axis& two_photon, const SweepOptions& opt = {});

/// Gaussian pump exp(-(t/T)^2), Stokes centered at tau, Stark centered at
/// tau + stark_offset * T.
struct ContourParams {
  double width = 1.0;
  double pump_peak = 40.0;
  double delta2 = 20.0;
  double stark_peak = 0.0;
  double stark_offset = 1.0;
};

ScenarioConfig contour_scenario(const ContourParams& p, double stokes_peak, double delay);

/// Grid over (Stokes peak, delay); quantities P1, P2, P3.
SweepGrid contour_sweep(const ContourParams& p, const Axis& stokes_peak, const Axis& delay,
                        const SweepOptions& opt = {});

/// SACS with Omega1/Omega2 = r and Omega1^2 + Omega2^2 fixed at twice the
/// base drive power. Quantities P1, P2, P3, observed P3/P1 and predicted r^2.
SweepGrid weight_control_sweep(const SacsParams& base, const Axis& ratio, const SweepOptions& opt = {});

}  // namespace sacs

#pragma once

// Integration of i dC/dt = H(t) C with one exact exponential of the
// midpoint Hamiltonian per step.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sacs/quantum.hpp"
#include "sacs/scenario.hpp"

namespace sacs {

struct TimeGrid {
  double start = 0.0;
  double end = 1.0;
  double dt = 0.1;

  /// Validates start < end, dt > 0 and at least 10 steps.
  static TimeGrid make(double start, double end, double dt);

  /// Number of steps; dt is shrunk so that the steps tile [start, end].
  std::size_t steps() const;
  double effective_dt() const;
};

inline constexpr double kDefaultNormStep = 0.05;  // dt * max||H||

/// Span of the scenario with dt chosen so dt * max||H|| <= norm_step.
TimeGrid default_grid(const ScenarioConfig& s, double norm_step = kDefaultNormStep);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<std::array<double, 3>> populations;
  std::vector<AdiabaticFrame> frames;              // continuity-ordered
  std::vector<std::array<double, 3>> overlaps;     // |<Phi_k|Psi>|^2

  StateVector final_state;
  double final_time = 0.0;
  double max_norm_drift = 0.0;
  double integrated_p2 = 0.0;  // ns
  bool envelopes_active_at_end = false;
  bool completed = false;  // set by propagate

  bool empty() const { return times.empty(); }
};

struct PropagateOptions {
  bool record_samples = true;  // false keeps only the final state
  bool track_frames = true;    // adiabatic frames/overlaps per sample
};

/// Advances by exp(-i H dt); throws StepSizeError if dt * ||H|| >= 0.5.
StateVector step(const StateVector& state, const HermitianMatrix3& h_mid, double dt);

Trajectory propagate(const ScenarioConfig& s, const TimeGrid& grid, const PropagateOptions& opt = {});

struct FinalPopulations {
  std::array<double, 3> p{};
  bool envelopes_active = false;  // warning: pulses had not ended at the last sample
};

FinalPopulations final_populations(const Trajectory& traj);

/// CSV with columns t, Re/Im C1..C3, P1..P3, eigenvalues and overlaps.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace sacs

#include "sacs/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sacs/errors.hpp"
#include "sacs/io.hpp"

namespace sacs {

namespace {

std::array<double, 3> overlaps_with(const AdiabaticFrame& f, const StateVector& s) {
  return {std::norm(inner(f.vectors[0], s.c)), std::norm(inner(f.vectors[1], s.c)),
          std::norm(inner(f.vectors[2], s.c))};
}

}  // namespace

TimeGrid TimeGrid::make(double start, double end, double dt) {
  if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(dt))
    throw std::invalid_argument("time grid: non-finite value");
  if (!(start < end)) throw std::invalid_argument("time grid: start must precede end");
  if (!(dt > 0.0)) throw std::invalid_argument("time grid: dt must be > 0");
  if ((end - start) / dt < 10.0 * (1.0 - 1e-12)) throw std::invalid_argument("time grid: fewer than 10 steps");
  return {start, end, dt};
}

std::size_t TimeGrid::steps() const {
  return static_cast<std::size_t>(std::ceil((end - start) / dt - 1e-9));
}

double TimeGrid::effective_dt() const { return (end - start) / static_cast<double>(steps()); }

TimeGrid default_grid(const ScenarioConfig& s, double norm_step) {
  const auto [lo, hi] = scenario_span(s);
  const double norm = max_hamiltonian_norm(s);
  double dt = norm > 0.0 ? norm_step / norm : (hi - lo) / 100.0;
  dt = std::min(dt, (hi - lo) / 10.0);
  return TimeGrid::make(lo, hi, dt);
}

StateVector step(const StateVector& state, const HermitianMatrix3& h_mid, double dt) {
  const AdiabaticFrame f = eigensystem(h_mid);
  const double spectral = std::max(std::abs(f.values[0]), std::abs(f.values[2]));
  if (!(dt * spectral < 0.5))
    throw StepSizeError("step: dt*||H|| = " + std::to_string(dt * spectral) + " exceeds 0.5");
  // U = sum_k exp(-i lambda_k dt) |Phi_k><Phi_k|
  StateVector out;
  out.c = {cplx{}, cplx{}, cplx{}};
  for (std::size_t k = 0; k < 3; ++k) {
    const cplx amp = std::polar(1.0, -f.values[k] * dt) * inner(f.vectors[k], state.c);
    for (std::size_t i = 0; i < 3; ++i) out.c[i] += amp * f.vectors[k][i];
  }
  return out;
}

Trajectory propagate(const ScenarioConfig& s, const TimeGrid& grid, const PropagateOptions& opt) {
  const std::size_t n = grid.steps();
  const double dt = grid.effective_dt();

  Trajectory traj;
  if (opt.record_samples) {
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
    traj.populations.reserve(n + 1);
    if (opt.track_frames) {
      traj.frames.reserve(n + 1);
      traj.overlaps.reserve(n + 1);
    }
  }

  StateVector psi = s.initial;
  const double n0 = psi.norm();
  if (std::abs(n0 - 1.0) > 1e-12) throw std::invalid_argument("propagate: initial state not normalized");

  AdiabaticFrame frame;
  double p2_prev = psi.populations()[1];

  auto record = [&](double t, bool first) {
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(psi.norm() - 1.0));
    if (!opt.record_samples) return;
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.populations.push_back(psi.populations());
    if (!opt.track_frames) return;
    AdiabaticFrame next = eigensystem(hamiltonian_at(s, t));
    if (first) {
      next.ordering = FrameOrdering::continuity;
      frame = next;
    } else {
      frame = track_adiabatic(frame, next);
    }
    traj.frames.push_back(frame);
    traj.overlaps.push_back(overlaps_with(frame, psi));
  };

  record(grid.start, true);
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = grid.start + static_cast<double>(k) * dt;
    const double t1 = k + 1 == n ? grid.end : grid.start + static_cast<double>(k + 1) * dt;
    psi = step(psi, hamiltonian_at(s, 0.5 * (t0 + t1)), t1 - t0);
    const double p2 = psi.populations()[1];
    traj.integrated_p2 += 0.5 * (p2 + p2_prev) * (t1 - t0);
    p2_prev = p2;
    record(t1, false);
  }

  traj.final_state = psi;
  traj.final_time = grid.end;
  traj.envelopes_active_at_end = !envelopes_finished(s, grid.end);
  traj.completed = true;
  return traj;
}

FinalPopulations final_populations(const Trajectory& traj) {
  if (!traj.completed)
    throw std::invalid_argument("final_populations: empty trajectory");
  return {traj.final_state.populations(), traj.envelopes_active_at_end};
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out =
      "t,ReC1,ImC1,ReC2,ImC2,ReC3,ImC3,P1,P2,P3,lambda_minus,lambda_zero,lambda_plus,"
      "overlap_minus,overlap_zero,overlap_plus\n";
  const bool frames = traj.frames.size() == traj.times.size();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out += format_number(traj.times[i]);
    for (const cplx& c : traj.states[i].c) {
      out += ',' + format_number(c.real());
      out += ',' + format_number(c.imag());
    }
    for (double p : traj.populations[i]) out += ',' + format_number(p);
    for (std::size_t k = 0; k < 3; ++k) out += ',' + (frames ? format_number(traj.frames[i].values[k]) : "");
    for (std::size_t k = 0; k < 3; ++k) out += ',' + (frames ? format_number(traj.overlaps[i][k]) : "");
    out += '\n';
  }
  return out;
}

}  // namespace sacs

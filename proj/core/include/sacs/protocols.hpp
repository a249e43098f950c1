#pragma once

// Scenario builders for SACS, STIRAP, F-STIRAP and half-SCRAP, final-state
// analysis and the four-wave-mixing source term.

#include <complex>
#include <optional>
#include <vector>

#include "sacs/propagator.hpp"
#include "sacs/scenario.hpp"

namespace sacs {

/// Stark pulse first, two simultaneous driving pulses delayed by `delay`.
struct SacsParams {
  double width = 1.0;         // ns
  double omega1_peak = 52.1;  // rad/ns
  double omega2_peak = 52.1;  // rad/ns
  double stark_peak = 30.5;   // rad/ns
  double delay = 0.8;         // ns, drive start (sine^2) or center (gaussian) after the Stark pulse
  double delta2 = 20.0;       // rad/ns
  double two_photon_detuning = 0.0;  // Delta2 + Delta3
  double beta = 0.0;
  PulseShape shape = PulseShape::sine_squared;
  bool weight_control = false;
};

/// Relative peak mismatch tolerated between the two SACS drives when
/// weight control is off.
inline constexpr double kSacsPeakTolerance = 0.05;

ScenarioConfig make_sacs(const SacsParams& p);

/// Counterintuitive Gaussian sequence: Stokes centered at -delay/2, pump at
/// +delay/2. With a mixing angle, the fractional variant: Stokes is an early
/// pulse at -delay plus cos(alpha) * common, pump is sin(alpha) * common, the
/// common envelope centered at 0.
struct StirapParams {
  double width = 1.0;
  double pump_peak = 40.0;
  double stokes_peak = 40.0;
  double delay = 1.5;
  double delta2 = 0.0;
  double beta = 0.0;
};

ScenarioConfig make_stirap(const StirapParams& p, std::optional<double> alpha = std::nullopt);

/// Two-level half-SCRAP: Stark pulse centered at 0, pump (Omega_eff) centered
/// at pump_delay. Readout defaults to the pump maximum; the static detuning
/// defaults to cancelling the pump-induced shift there.
struct HalfScrapParams {
  double width = 1.0;
  double omega_eff_peak = 50.0;
  double stark_peak = 80.0;
  double pump_delay = 2.2;
  double pump_shift_ratio = 0.1;
  std::optional<double> static_detuning;
  std::optional<double> readout_time;
  double beta = 0.0;
};

ScenarioConfig make_half_scrap(const HalfScrapParams& p);

/// Mixing angle of the two-level readout: tan 2 theta = Omega_eff / Delta_eff,
/// principal branch, theta = pi/4 at Delta_eff = 0.
double half_scrap_mixing_angle(double omega_eff, double delta_eff);

struct SuperpositionReport {
  double weight1 = 0.0;
  double weight3 = 0.0;
  double residual = 0.0;        // P2
  double relative_phase = 0.0;  // arg(C3/C1), rotating frame, (-pi, pi]
  bool phase_defined = false;
  bool nonadiabatic = false;    // P2 > kNonadiabaticResidual
  bool envelopes_active = false;
  double integrated_p2 = 0.0;   // ns
};

inline constexpr double kNonadiabaticResidual = 0.05;

/// Physical phase of C3 relative to C1 is relative_phase - (w1 + w2) t; the
/// carrier term is kept symbolic.
SuperpositionReport analyze_final(const Trajectory& traj);

struct FwmContext {
  PulseEnvelope omega3;        // probe Rabi frequency
  double delta4 = 1000.0;      // rad/ns
  double scale = 1.0;          // dipole/field prefactor d23 d41 E3 / (hbar Omega3)
  double number_density = 1.0; // linear medium factor
};

inline constexpr double kMinDetuningRatio = 10.0;

/// C4 = Omega3/(2 Delta4) C3 + Omega4/(2 Delta4) C1.
cplx eliminated_amplitude(cplx c1, cplx c3, double omega3, double omega4, double delta4);

/// Source amplitude N * scale * conj(C3) C1 Omega3(t) / (2 Delta4) per sample.
std::vector<cplx> fwm_source(const Trajectory& traj, const FwmContext& ctx);

}  // namespace sacs

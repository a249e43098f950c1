#include "sacs/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sacs {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

ScenarioConfig make_sacs(const SacsParams& p) {
  require(p.width > 0.0, "SACS: width must be > 0");
  require(p.omega1_peak >= 0.0 && p.omega2_peak >= 0.0 && p.stark_peak >= 0.0, "SACS: peaks must be >= 0");
  require(std::isfinite(p.delay) && std::isfinite(p.delta2), "SACS: non-finite timing or detuning");
  require(p.shape != PulseShape::zero, "SACS: pulse shape required");
  const double big = std::max(p.omega1_peak, p.omega2_peak);
  if (!p.weight_control && big > 0.0)
    require(std::abs(p.omega1_peak - p.omega2_peak) <= kSacsPeakTolerance * big,
            "SACS: drive peaks differ; enable weight control for unequal drives");

  ScenarioConfig s;
  s.protocol = Protocol::sacs;
  s.delta2 = p.delta2;
  s.delta3 = -p.delta2 + p.two_photon_detuning;
  s.beta = p.beta;
  s.weight_control = p.weight_control;

  const PulseEnvelope stark{p.shape, p.stark_peak, p.width, 0.0};
  s.stark = {stark};
  s.pump = {PulseEnvelope{p.shape, p.omega1_peak, p.width, p.delay}};
  s.stokes = {PulseEnvelope{p.shape, p.omega2_peak, p.width, p.delay}};
  for (const auto& e : {s.stark[0], s.pump[0], s.stokes[0]}) validate(e);

  const auto [lo, hi] = stark.support();
  const double drive_on = p.shape == PulseShape::sine_squared ? p.delay : p.delay - p.width;
  if (p.stark_peak > 0.0 && (drive_on < lo || drive_on > hi))
    s.warnings.push_back("driving pulses start outside the Stark pulse; the path leaves the Phi0 surface");
  return s;
}

ScenarioConfig make_stirap(const StirapParams& p, std::optional<double> alpha) {
  require(p.width > 0.0, "STIRAP: width must be > 0");
  require(p.pump_peak >= 0.0 && p.stokes_peak >= 0.0, "STIRAP: peaks must be >= 0");
  require(p.delay > 0.0, "STIRAP: Stokes must precede pump (delay > 0)");

  ScenarioConfig s;
  s.delta2 = p.delta2;
  s.delta3 = -p.delta2;
  s.beta = p.beta;
  if (!alpha) {
    s.protocol = Protocol::stirap;
    s.stokes = {PulseEnvelope::gaussian(p.stokes_peak, p.width, -0.5 * p.delay)};
    s.pump = {PulseEnvelope::gaussian(p.pump_peak, p.width, 0.5 * p.delay)};
    return s;
  }
  require(*alpha > 0.0 && *alpha < 0.5 * std::numbers::pi, "F-STIRAP: alpha must lie in (0, pi/2)");
  s.protocol = Protocol::fstirap;
  s.mixing_angle = alpha;
  s.stokes = {PulseEnvelope::gaussian(p.stokes_peak, p.width, -p.delay),
              PulseEnvelope::gaussian(p.pump_peak * std::cos(*alpha), p.width, 0.0)};
  s.pump = {PulseEnvelope::gaussian(p.pump_peak * std::sin(*alpha), p.width, 0.0)};
  return s;
}

double half_scrap_mixing_angle(double omega_eff, double delta_eff) {
  if (delta_eff == 0.0) return omega_eff == 0.0 ? 0.0 : std::numbers::pi / 4.0;
  return 0.5 * std::atan(omega_eff / delta_eff);
}

ScenarioConfig make_half_scrap(const HalfScrapParams& p) {
  require(p.width > 0.0, "half-SCRAP: width must be > 0");
  require(p.omega_eff_peak >= 0.0 && p.stark_peak >= 0.0, "half-SCRAP: peaks must be >= 0");
  require(p.pump_delay > 0.0, "half-SCRAP: the Stark pulse must precede the pump pulse");
  require(p.pump_shift_ratio >= 0.0, "half-SCRAP: pump shift ratio must be >= 0");

  ScenarioConfig s;
  s.protocol = Protocol::half_scrap;
  s.beta = p.beta;
  s.pump_shift_ratio = p.pump_shift_ratio;
  s.stark = {PulseEnvelope::gaussian(p.stark_peak, p.width, 0.0)};
  s.pump = {PulseEnvelope::gaussian(p.omega_eff_peak, p.width, p.pump_delay)};

  const double tf = p.readout_time.value_or(p.pump_delay);
  require(tf > s.stark[0].support().first, "half-SCRAP: readout before the Stark pulse");
  s.readout_time = tf;
  s.static_detuning = p.static_detuning.value_or(p.pump_shift_ratio * envelope_value(s.pump, tf));

  const double omega_f = envelope_value(s.pump, tf);
  if (!(omega_f > std::abs(effective_detuning(s, tf))))
    s.warnings.push_back("Omega_eff(t_f) does not exceed |Delta_eff(t_f)|; the readout is not near maximum coherence");
  return s;
}

SuperpositionReport analyze_final(const Trajectory& traj) {
  const auto fp = final_populations(traj);
  SuperpositionReport r;
  r.weight1 = fp.p[0];
  r.residual = fp.p[1];
  r.weight3 = fp.p[2];
  r.envelopes_active = fp.envelopes_active;
  r.integrated_p2 = traj.integrated_p2;
  r.nonadiabatic = r.residual > kNonadiabaticResidual;
  r.phase_defined = std::min(r.weight1, r.weight3) > 1e-6;
  if (r.phase_defined) {
    r.relative_phase = std::arg(traj.final_state.c[2] / traj.final_state.c[0]);
    if (r.relative_phase <= -std::numbers::pi) r.relative_phase += 2.0 * std::numbers::pi;
  }
  return r;
}

cplx eliminated_amplitude(cplx c1, cplx c3, double omega3, double omega4, double delta4) {
  if (delta4 == 0.0) throw std::invalid_argument("eliminated_amplitude: zero detuning");
  return omega3 / (2.0 * delta4) * c3 + omega4 / (2.0 * delta4) * c1;
}

std::vector<cplx> fwm_source(const Trajectory& traj, const FwmContext& ctx) {
  validate(ctx.omega3);
  if (!(std::abs(ctx.delta4) >= kMinDetuningRatio * ctx.omega3.peak) || ctx.delta4 == 0.0)
    throw std::invalid_argument("fwm_source: |Delta4| must be at least 10x the peak Omega3");
  std::vector<cplx> out;
  out.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& c = traj.states[i].c;
    const double w3 = envelope_value(ctx.omega3, traj.times[i]);
    out.push_back(ctx.number_density * ctx.scale * std::conj(c[2]) * c[0] * w3 / (2.0 * ctx.delta4));
  }
  return out;
}

}  // namespace sacs

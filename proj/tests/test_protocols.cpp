#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "sacs/protocols.hpp"

using namespace sacs;

namespace {

constexpr double kPi = std::numbers::pi;

Trajectory run(const ScenarioConfig& s, bool samples = false) {
  return propagate(s, default_grid(s), {samples, false});
}

double wrap(double x) {
  while (x > kPi) x -= 2.0 * kPi;
  while (x <= -kPi) x += 2.0 * kPi;
  return x;
}

}  // namespace

TEST_CASE("make_sacs schedules the Stark pulse before the simultaneous drives") {
  const auto s = make_sacs(SacsParams{});
  CHECK(s.protocol == Protocol::sacs);
  CHECK(s.delta2 + s.delta3 == 0.0);
  REQUIRE(s.pump.size() == 1);
  REQUIRE(s.stokes.size() == 1);
  CHECK(s.pump[0].delay == s.stokes[0].delay);
  CHECK(s.pump[0].width == s.stokes[0].width);
  CHECK(s.pump[0].peak == s.stokes[0].peak);
  CHECK(s.stark[0].delay < s.pump[0].delay);
  CHECK(s.warnings.empty());
}

TEST_CASE("make_sacs warns when the drives start outside the Stark pulse") {
  SacsParams p;
  p.delay = 4.0;
  CHECK_FALSE(make_sacs(p).warnings.empty());
}

TEST_CASE("make_sacs requires equal drives unless weight control is on") {
  SacsParams p;
  p.omega2_peak = 30.0;
  CHECK_THROWS_AS(make_sacs(p), std::invalid_argument);
  p.weight_control = true;
  CHECK_NOTHROW(make_sacs(p));
  SacsParams q;
  q.omega1_peak = 53.09;
  q.omega2_peak = 52.38;
  CHECK_NOTHROW(make_sacs(q));
}

TEST_CASE("zero Stark pulse and zero delay give Rabi oscillations") {
  double lo = 1.0, hi = 0.0;
  for (double omega = 20.0; omega <= 80.0; omega += 5.0) {
    SacsParams p;
    p.stark_peak = 0.0;
    p.delay = 0.0;
    p.omega1_peak = p.omega2_peak = omega;
    const double p3 = final_populations(run(make_sacs(p))).p[2];
    lo = std::min(lo, p3);
    hi = std::max(hi, p3);
  }
  CHECK(hi - lo > 0.3);
}

TEST_CASE("headline superposition report") {
  const auto r = analyze_final(run(make_sacs(SacsParams{})));
  CHECK(r.weight1 == doctest::Approx(0.5).epsilon(0.04));
  CHECK(r.weight3 == doctest::Approx(0.5).epsilon(0.04));
  CHECK(r.phase_defined);
  CHECK(std::abs(std::abs(r.relative_phase) - kPi) < 0.05);
  CHECK_FALSE(r.nonadiabatic);
  CHECK(std::abs(r.weight1 + r.weight3 + r.residual - 1.0) < 1e-8);
}

TEST_CASE("ground-state trajectory has no defined phase") {
  ScenarioConfig s;
  const auto r = analyze_final(propagate(s, TimeGrid::make(0.0, 1.0, 0.01)));
  CHECK(r.weight1 == doctest::Approx(1.0));
  CHECK(r.weight3 == 0.0);
  CHECK_FALSE(r.phase_defined);
}

TEST_CASE("shifting beta shifts the relative phase by the opposite amount") {
  const auto r0 = analyze_final(run(make_sacs(SacsParams{})));
  for (double d : {0.3, -1.1, 2.0}) {
    SacsParams p;
    p.beta = d;
    const auto r = analyze_final(run(make_sacs(p)));
    CHECK(std::abs(wrap(r.relative_phase - r0.relative_phase + d)) < 1e-6);
    CHECK(r.weight3 == doctest::Approx(r0.weight3).epsilon(1e-9));
  }
}

TEST_CASE("SACS weights are robust to +-20% changes around the optimized amplitudes") {
  for (double fo : {0.8, 0.9, 1.0, 1.1, 1.2})
    for (double fs : {0.8, 0.9, 1.0, 1.1, 1.2}) {
      SacsParams p;
      p.omega1_peak = p.omega2_peak = 2.6 * 20.0 * fo;
      p.stark_peak = 1.5 * 20.0 * fs;
      const auto f = final_populations(run(make_sacs(p)));
      INFO("omega factor " << fo << ", stark factor " << fs);
      CHECK(std::abs(f.p[0] - 0.5) < 0.02);
      CHECK(std::abs(f.p[2] - 0.5) < 0.02);
    }
}

TEST_CASE("state follows the dark state after the Stark pulse ends") {
  const auto s = make_sacs(SacsParams{});
  const auto traj = run(s, true);
  const double stark_end = s.stark[0].support().second;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t <= stark_end) continue;
    const double o1 = envelope_value(s.pump, t);
    const double o2 = envelope_value(s.stokes, t);
    if (o1 == 0.0 && o2 == 0.0) continue;
    const auto d = dark_state(o1, o2, s.beta);
    CHECK(oracle::overlap(d.c, traj.states[i].c) > 0.99);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("STIRAP transfers the population completely") {
  const auto s = make_stirap(StirapParams{});
  CHECK(s.protocol == Protocol::stirap);
  CHECK(s.stokes[0].delay < s.pump[0].delay);
  CHECK(final_populations(run(s)).p[2] > 0.99);
  CHECK_THROWS_AS(make_stirap(StirapParams{1.0, 40.0, 40.0, -1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("F-STIRAP weight law") {
  for (double a : {kPi / 8.0, kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
    const auto s = make_stirap(StirapParams{}, a);
    const auto t = s.pump.back().peak / s.stokes.back().peak;
    CHECK(t == doctest::Approx(std::tan(a)));
    const auto f = final_populations(run(s));
    INFO("alpha " << a);
    CHECK(std::abs(f.p[2] - std::pow(std::sin(a), 2)) < 0.02);
  }
  const auto r30 = analyze_final(run(make_stirap(StirapParams{}, kPi / 6.0)));
  CHECK(r30.weight1 == doctest::Approx(0.75).epsilon(0.02));
  CHECK(r30.weight3 == doctest::Approx(0.25).epsilon(0.06));
  CHECK(final_populations(run(make_stirap(StirapParams{}, 1e-3))).p[0] > 0.999);
  CHECK_THROWS_AS(make_stirap(StirapParams{}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_stirap(StirapParams{}, kPi / 2.0), std::invalid_argument);
}

TEST_CASE("half-SCRAP mixing angle") {
  CHECK(half_scrap_mixing_angle(1.0, 0.0) == doctest::Approx(kPi / 4.0));
  CHECK(std::abs(half_scrap_mixing_angle(3.0, 3.0)) == doctest::Approx(kPi / 8.0));
  CHECK(std::pow(std::sin(half_scrap_mixing_angle(3.0, -3.0)), 2) == doctest::Approx(0.146).epsilon(0.01));
  CHECK(half_scrap_mixing_angle(0.0, 0.0) == 0.0);
}

TEST_CASE("half-SCRAP default readout gives an equal superposition") {
  const auto s = make_half_scrap(HalfScrapParams{});
  CHECK(s.warnings.empty());
  const auto tf = *s.readout_time;
  CHECK(envelope_value(s.pump, tf) > std::abs(effective_detuning(s, tf)));
  const auto f = final_populations(run(s));
  CHECK(std::abs(f.p[0] - 0.5) < 0.02);
  CHECK(std::abs(f.p[2] - 0.5) < 0.02);
  CHECK(f.p[1] == 0.0);
}

TEST_CASE("half-SCRAP final weight follows sin^2 of the readout mixing angle") {
  for (double sep : {1.8, 2.0, 2.2})
    for (double ratio : {0.0, 0.1}) {
      HalfScrapParams p;
      p.pump_delay = sep;
      p.pump_shift_ratio = ratio;
      const auto s = make_half_scrap(p);
      const double tf = *s.readout_time;
      const double theta = half_scrap_mixing_angle(envelope_value(s.pump, tf), effective_detuning(s, tf));
      const auto f = final_populations(run(s));
      INFO("separation " << sep << ", ratio " << ratio);
      CHECK(std::abs(f.p[2] - std::pow(std::sin(theta), 2)) < 0.02);
    }
}

TEST_CASE("half-SCRAP readout at Omega_eff = |Delta_eff| gives sin^2(pi/8)") {
  HalfScrapParams p;
  const auto probe = make_half_scrap(p);
  const double tf = *probe.readout_time;
  const double omega = envelope_value(probe.pump, tf);
  const double stark = envelope_value(probe.stark, tf);
  // Delta_eff(t_f) = static - stark - ratio * omega = -omega
  p.static_detuning = stark + p.pump_shift_ratio * omega - omega;
  const auto s = make_half_scrap(p);
  CHECK(effective_detuning(s, tf) == doctest::Approx(-omega));
  CHECK_FALSE(s.warnings.empty());
  const auto f = final_populations(run(s));
  CHECK(std::abs(f.p[2] - std::pow(std::sin(kPi / 8.0), 2)) < 0.02);
}

TEST_CASE("half-SCRAP without a Stark pulse and a large static detuning stays in the ground state") {
  HalfScrapParams p;
  p.stark_peak = 0.0;
  p.static_detuning = 400.0;
  const auto f = final_populations(run(make_half_scrap(p)));
  CHECK(f.p[0] > 0.98);
}

TEST_CASE("adiabatic elimination of the fourth state") {
  CHECK(std::abs(eliminated_amplitude(0.0, 1.0, 2.0, 0.0, 100.0) - cplx{0.01, 0.0}) < 1e-15);
  CHECK(std::abs(eliminated_amplitude(1.0, 0.0, 0.0, 4.0, 100.0) - cplx{0.02, 0.0}) < 1e-15);
  CHECK_THROWS_AS(eliminated_amplitude(1.0, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("four-wave-mixing source term") {
  FwmContext ctx;
  ctx.omega3 = PulseEnvelope::gaussian(20.0, 1.0, 0.0);
  ctx.delta4 = 1000.0;

  Trajectory ground;
  for (int i = 0; i < 11; ++i) {
    ground.times.push_back(-1.0 + 0.2 * i);
    ground.states.push_back(StateVector::basis(0));
  }
  for (const cplx& v : fwm_source(ground, ctx)) CHECK(v == cplx{});

  Trajectory mixed = ground;
  for (auto& s : mixed.states) s.c = {cplx{1.0 / std::sqrt(2.0), 0.0}, cplx{}, cplx{-1.0 / std::sqrt(2.0), 0.0}};
  const auto src = fwm_source(mixed, ctx);
  CHECK(std::abs(src[5]) == doctest::Approx(0.5 * 20.0 / 2000.0));

  // |C3* C1| is largest for the equal superposition
  for (double a : {0.1, 0.4, 0.7, 1.0, 1.3}) {
    Trajectory t = ground;
    for (auto& s : t.states) s.c = {cplx{std::cos(a), 0.0}, cplx{}, cplx{std::sin(a), 0.0}};
    CHECK(std::abs(fwm_source(t, ctx)[5]) <= std::abs(src[5]) + 1e-15);
  }

  // invariance under a global phase
  Trajectory rotated = mixed;
  for (auto& s : rotated.states)
    for (auto& c : s.c) c *= std::polar(1.0, 0.83);
  const auto rsrc = fwm_source(rotated, ctx);
  for (std::size_t i = 0; i < src.size(); ++i) CHECK(std::abs(rsrc[i]) == doctest::Approx(std::abs(src[i])));

  ctx.number_density = 3.0;
  CHECK(std::abs(fwm_source(mixed, ctx)[5]) == doctest::Approx(3.0 * std::abs(src[5])));

  ctx.delta4 = 150.0;
  CHECK_THROWS_AS(fwm_source(mixed, ctx), std::invalid_argument);
}

TEST_CASE("four-wave-mixing source along the headline run is invariant under a global phase") {
  const auto traj = run(make_sacs(SacsParams{}), true);
  FwmContext ctx;
  ctx.omega3 = PulseEnvelope::gaussian(10.0, 1.0, 5.0);
  const auto a = fwm_source(traj, ctx);
  Trajectory rotated = traj;
  for (auto& s : rotated.states)
    for (auto& c : s.c) c *= std::polar(1.0, -2.1);
  const auto b = fwm_source(rotated, ctx);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(std::abs(a[i]) - std::abs(b[i])));
  CHECK(worst < 1e-15);
}

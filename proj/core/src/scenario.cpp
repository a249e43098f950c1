#include "sacs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sacs/io.hpp"

namespace sacs {

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::sacs:
      return "SACS";
    case Protocol::stirap:
      return "STIRAP";
    case Protocol::fstirap:
      return "F-STIRAP";
    case Protocol::half_scrap:
      return "HALF-SCRAP";
  }
  return "?";
}

Protocol parse_protocol(const std::string& name) {
  std::string n;
  for (char ch : name) n += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "SACS") return Protocol::sacs;
  if (n == "STIRAP") return Protocol::stirap;
  if (n == "F-STIRAP" || n == "FSTIRAP") return Protocol::fstirap;
  if (n == "HALF-SCRAP" || n == "HALFSCRAP") return Protocol::half_scrap;
  throw std::invalid_argument("unknown protocol: " + name);
}

double effective_detuning(const ScenarioConfig& s, double t) {
  return s.static_detuning - envelope_value(s.stark, t) - s.pump_shift_ratio * envelope_value(s.pump, t);
}

HermitianMatrix3 hamiltonian_at(const ScenarioConfig& s, double t) {
  if (s.protocol == Protocol::half_scrap) {
    const cplx coupling = 0.5 * envelope_value(s.pump, t) * std::polar(1.0, s.beta);
    return HermitianMatrix3({0.0, 0.0, effective_detuning(s, t)}, 0.0, coupling, 0.0);
  }
  HamiltonianParams p;
  p.omega1 = envelope_value(s.pump, t);
  p.omega2 = envelope_value(s.stokes, t);
  p.delta2 = s.delta2;
  p.delta3 = s.delta3;
  p.stark = envelope_value(s.stark, t);
  p.beta = s.beta;
  return build_hamiltonian(p);
}

std::pair<double, double> scenario_span(const ScenarioConfig& s) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const PulseTrain* tr : {&s.pump, &s.stokes, &s.stark}) {
    const auto [a, b] = train_support(*tr);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (s.readout_time) hi = *s.readout_time;
  if (!(hi > lo)) throw std::invalid_argument("scenario span is empty");
  return {lo, hi};
}

double max_hamiltonian_norm(const ScenarioConfig& s, int samples) {
  const auto [lo, hi] = scenario_span(s);
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = lo + (hi - lo) * i / samples;
    m = std::max(m, hamiltonian_at(s, t).frobenius_norm());
  }
  return m;
}

bool envelopes_finished(const ScenarioConfig& s, double t) {
  for (const PulseTrain* tr : {&s.pump, &s.stokes, &s.stark}) {
    const double peak = train_peak(*tr);
    if (peak > 0.0 && envelope_value(*tr, t) > 1e-12 * peak) return false;
  }
  return true;
}

namespace {

void append_train(std::string& out, const char* name, const PulseTrain& tr) {
  static const char* shapes[] = {"zero", "sine_squared", "gaussian"};
  for (const auto& e : tr) {
    out += name;
    out += ' ';
    out += shapes[static_cast<int>(e.shape)];
    for (double v : {e.peak, e.width, e.delay}) out += ' ' + format_number(v, 17);
    out += '\n';
  }
}

}  // namespace

std::string canonical_text(const ScenarioConfig& s) {
  std::string out = "protocol " + protocol_name(s.protocol) + "\n";
  append_train(out, "pump", s.pump);
  append_train(out, "stokes", s.stokes);
  append_train(out, "stark", s.stark);
  out += "detunings " + format_number(s.delta2, 17) + ' ' + format_number(s.delta3, 17) + '\n';
  out += "beta " + format_number(s.beta, 17) + '\n';
  out += "initial";
  for (const cplx& c : s.initial.c) out += ' ' + format_number(c.real(), 17) + ' ' + format_number(c.imag(), 17);
  out += '\n';
  if (s.mixing_angle) out += "alpha " + format_number(*s.mixing_angle, 17) + '\n';
  out += std::string("weight_control ") + (s.weight_control ? "1" : "0") + '\n';
  if (s.protocol == Protocol::half_scrap) {
    out += "static_detuning " + format_number(s.static_detuning, 17) + '\n';
    out += "pump_shift_ratio " + format_number(s.pump_shift_ratio, 17) + '\n';
  }
  if (s.readout_time) out += "readout " + format_number(*s.readout_time, 17) + '\n';
  return out;
}

std::string scenario_hash(const ScenarioConfig& s) { return fnv1a64_hex(canonical_text(s)); }

}  // namespace sacs

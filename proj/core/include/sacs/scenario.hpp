#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sacs/pulses.hpp"
#include "sacs/quantum.hpp"

namespace sacs {

enum class Protocol { sacs, stirap, fstirap, half_scrap };

std::string protocol_name(Protocol p);
Protocol parse_protocol(const std::string& name);

/// Everything needed to propagate one run.
///
/// Ladder protocols use `pump` on 1-2, `stokes` on 2-3 and `stark` to lower
/// state 3. HALF-SCRAP is a two-level model embedded on states 1 and 3:
/// `pump` carries Omega_eff(t) and the target diagonal is
/// static_detuning - Delta_S(t) - pump_shift_ratio * Omega_eff(t).
struct ScenarioConfig {
  Protocol protocol = Protocol::sacs;
  PulseTrain pump;
  PulseTrain stokes;
  PulseTrain stark;
  double delta2 = 0.0;
  double delta3 = 0.0;
  double beta = 0.0;
  StateVector initial = StateVector::basis(0);

  std::optional<double> mixing_angle;  // F-STIRAP target alpha
  bool weight_control = false;         // SACS: allow unequal drive peaks

  double static_detuning = 0.0;        // HALF-SCRAP
  double pump_shift_ratio = 0.1;       // HALF-SCRAP: Delta_P = ratio * Omega_eff
  std::optional<double> readout_time;  // end of the run, if not after all pulses

  std::vector<std::string> warnings;
};

HermitianMatrix3 hamiltonian_at(const ScenarioConfig& s, double t);

/// Half-SCRAP effective detuning at t.
double effective_detuning(const ScenarioConfig& s, double t);

/// [first envelope start, last envelope end or readout time].
std::pair<double, double> scenario_span(const ScenarioConfig& s);

/// Largest Frobenius norm of H over `samples` points of the span.
double max_hamiltonian_norm(const ScenarioConfig& s, int samples = 2000);

/// True when every envelope has returned below 1e-12 of its peak at t.
bool envelopes_finished(const ScenarioConfig& s, double t);

/// Stable text rendering of every physical field; the basis of scenario hashes.
std::string canonical_text(const ScenarioConfig& s);
std::string scenario_hash(const ScenarioConfig& s);

}  // namespace sacs

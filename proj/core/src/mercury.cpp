#include "sacs/mercury.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sacs/errors.hpp"
#include "sacs/io.hpp"
#include "sacs/pulses.hpp"

namespace sacs {

namespace {

constexpr const char* kChecksumTag = "# checksum: fnv1a64:";

std::string canonical_row(const TransitionRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %s %.12g %.12g %.12g", r.upper.c_str(), r.lower.c_str(),
                r.wavelength_nm, r.einstein_a, r.dipole);
  return buf;
}

double parse_number(const std::string& tok, const std::string& origin, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || !std::isfinite(v))
    throw ConfigError(origin + ":" + std::to_string(line) + ": bad number '" + tok + "'");
  return v;
}

}  // namespace

double einstein_a_from_dipole(double wavelength_nm, double dipole_si) {
  using namespace constants;
  const double w = angular_frequency(wavelength_nm);
  return w * w * w * dipole_si * dipole_si / (3.0 * std::numbers::pi * epsilon0 * hbar * c * c * c);
}

double dipole_from_einstein_a(double wavelength_nm, double a_per_s) {
  using namespace constants;
  const double w = angular_frequency(wavelength_nm);
  return std::sqrt(a_per_s * 3.0 * std::numbers::pi * epsilon0 * hbar * c * c * c / (w * w * w));
}

TransitionTable::TransitionTable(std::vector<TransitionRecord> records) : records_(std::move(records)) {
  for (const auto& r : records_) {
    if (!(r.wavelength_nm > 0.0) || !(r.einstein_a > 0.0) || !(r.dipole > 0.0))
      throw ConfigError("transition " + r.upper + "->" + r.lower + ": values must be positive");
  }

  std::set<std::string> uppers;
  for (const auto& r : records_) uppers.insert(r.upper);
  for (const auto& r : records_)
    if (!uppers.contains(r.lower) && !energies_.contains(r.lower)) energies_[r.lower] = 0.0;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : records_) {
      const double w = angular_frequency(r.wavelength_nm);
      const bool has_u = energies_.contains(r.upper);
      const bool has_l = energies_.contains(r.lower);
      if (has_l && !has_u) {
        energies_[r.upper] = energies_[r.lower] + w;
        changed = true;
      } else if (has_u && !has_l) {
        energies_[r.lower] = energies_[r.upper] - w;
        changed = true;
      }
    }
  }
}

TransitionTable TransitionTable::load(const std::filesystem::path& path, ChecksumPolicy policy) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open transition data file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string(), policy);
}

TransitionTable TransitionTable::parse(const std::string& text, const std::string& origin, ChecksumPolicy policy) {
  std::istringstream in(text);
  std::string line;
  std::string checksum;
  std::vector<TransitionRecord> records;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind(kChecksumTag, 0) == 0) {
      checksum = line.substr(std::string(kChecksumTag).size());
      while (!checksum.empty() && std::isspace(static_cast<unsigned char>(checksum.back())))
        checksum.pop_back();
      continue;
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream row(line);
    std::vector<std::string> tok;
    for (std::string t; row >> t;) tok.push_back(t);
    if (tok.size() != 5)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 5 columns, got " +
                        std::to_string(tok.size()));
    records.push_back({tok[0], tok[1], parse_number(tok[2], origin, lineno),
                       parse_number(tok[3], origin, lineno), parse_number(tok[4], origin, lineno)});
  }
  std::string problem;
  const std::string expect = table_checksum(records);
  if (checksum.empty())
    problem = origin + ": missing checksum line";
  else if (checksum != expect)
    problem = origin + ": checksum mismatch (file " + checksum + ", data " + expect + ")";
  if (!problem.empty() && policy == ChecksumPolicy::require) throw ConfigError(problem);
  TransitionTable t(std::move(records));
  t.checksum_problem_ = problem;
  return t;
}

const TransitionRecord& TransitionTable::find(const std::string& a, const std::string& b) const {
  for (const auto& r : records_)
    if ((r.upper == a && r.lower == b) || (r.upper == b && r.lower == a)) return r;
  throw ConfigError("no transition between " + a + " and " + b);
}

bool TransitionTable::has(const std::string& a, const std::string& b) const {
  return std::any_of(records_.begin(), records_.end(), [&](const TransitionRecord& r) {
    return (r.upper == a && r.lower == b) || (r.upper == b && r.lower == a);
  });
}

double TransitionTable::energy(const std::string& level) const {
  const auto it = energies_.find(level);
  if (it == energies_.end()) throw ConfigError("unknown level: " + level);
  return it->second;
}

double TransitionTable::min_transition_frequency() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& r : records_) w = std::min(w, angular_frequency(r.wavelength_nm));
  return w;
}

std::string table_checksum(const std::vector<TransitionRecord>& records) {
  std::string joined;
  for (const auto& r : records) {
    joined += canonical_row(r);
    joined += '\n';
  }
  return fnv1a64_hex(joined);
}

std::string format_table(const std::vector<TransitionRecord>& records) {
  std::string out = "# upper lower wavelength[nm] A[1e8/s] d[1e-30 C m]\n";
  out += kChecksumTag + table_checksum(records) + "\n";
  for (const auto& r : records) out += canonical_row(r) + "\n";
  return out;
}

double rabi_from_intensity(const TransitionRecord& t, double intensity_w_cm2) {
  if (intensity_w_cm2 < 0.0) throw std::invalid_argument("rabi_from_intensity: negative intensity");
  return t.dipole * 1e-30 * field_amplitude(intensity_w_cm2) / constants::hbar * constants::per_s_to_per_ns;
}

double stark_coefficient(const TransitionTable& table, const StarkContext& ctx) {
  if (ctx.levels.empty()) throw ConfigError("Stark context needs at least one contributing level");
  const double ws = angular_frequency(ctx.wavelength_nm);
  const double e3 = table.energy(ctx.target);
  const double threshold = 1e-3 * table.min_transition_frequency();
  double sum = 0.0;  // C^2 m^2 s / rad
  for (const auto& level : ctx.levels) {
    const double d = table.find(ctx.target, level).dipole * 1e-30;
    const double denom = table.energy(level) - e3 + ws;
    if (std::abs(denom) <= threshold)
      throw PhysicsError("Stark laser at " + std::to_string(ctx.wavelength_nm) + " nm is resonant with " +
                         ctx.target + "-" + level);
    sum += d * d / denom;
  }
  const double e2 = field_amplitude(1.0) * field_amplitude(1.0);
  return e2 / (4.0 * constants::hbar * constants::hbar) * sum;
}

double stark_shift_from_intensity(const TransitionTable& table, const StarkContext& ctx,
                                  double intensity_w_cm2) {
  if (intensity_w_cm2 < 0.0) throw std::invalid_argument("stark_shift_from_intensity: negative intensity");
  const double coeff = stark_coefficient(table, ctx);
  if (coeff > 0.0)
    throw PhysicsError("Stark field shifts " + ctx.target + " upward; only downward shifts are modelled");
  return -coeff * intensity_w_cm2 * constants::per_s_to_per_ns;
}

double effective_two_photon_coefficient(const TransitionTable& table, const TwoPhotonContext& ctx) {
  if (ctx.intermediates.empty()) throw ConfigError("two-photon context needs intermediate levels");
  const double wp = angular_frequency(ctx.pump_wavelength_nm);
  const double e1 = table.energy(ctx.ground);
  const double threshold = 1e-3 * table.min_transition_frequency();
  double sum = 0.0;
  for (const auto& j : ctx.intermediates) {
    const double d1j = table.find(ctx.ground, j).dipole * 1e-30;
    const double dj3 = table.find(j, ctx.target).dipole * 1e-30;
    const double denom = table.energy(j) - e1 - wp;
    if (std::abs(denom) <= threshold)
      throw PhysicsError("pump at " + std::to_string(ctx.pump_wavelength_nm) + " nm is resonant with " + j);
    sum += d1j * dj3 / denom;
  }
  const double e2 = field_amplitude(1.0) * field_amplitude(1.0);
  return e2 / (2.0 * constants::hbar * constants::hbar) * sum;
}

double effective_two_photon_rabi(const TransitionTable& table, const TwoPhotonContext& ctx,
                                 double intensity_w_cm2) {
  if (intensity_w_cm2 < 0.0) throw std::invalid_argument("effective_two_photon_rabi: negative intensity");
  return effective_two_photon_coefficient(table, ctx) * intensity_w_cm2 * constants::per_s_to_per_ns;
}

double intensity_for_two_photon_rabi(const TransitionTable& table, const TwoPhotonContext& ctx,
                                     double omega_eff) {
  const double coeff = effective_two_photon_coefficient(table, ctx) * constants::per_s_to_per_ns;
  return omega_eff / std::abs(coeff);
}

std::vector<RowDeviation> validate_table(const TransitionTable& table, std::size_t expected_rows,
                                         double tolerance) {
  if (table.size() < expected_rows)
    throw ConfigError("transition table has " + std::to_string(table.size()) + " rows, expected " +
                      std::to_string(expected_rows));
  std::vector<RowDeviation> out;
  for (const auto& r : table.records()) {
    RowDeviation d;
    d.record = &r;
    d.dipole_from_a = dipole_from_einstein_a(r.wavelength_nm, r.einstein_a * 1e8) / 1e-30;
    d.dipole_deviation = (r.dipole - d.dipole_from_a) / d.dipole_from_a;
    d.a_deviation = einstein_a_from_dipole(r.wavelength_nm, r.dipole * 1e-30) / (r.einstein_a * 1e8) - 1.0;
    d.flagged = std::abs(d.dipole_deviation) > tolerance;
    out.push_back(d);
  }
  return out;
}

StarkContext mercury_stark_context() { return {"7_1S0", 1064.0, {"6_1P1", "7_1P1"}}; }

TwoPhotonContext mercury_two_photon_context() {
  return {"6_1S0", "7_1S0", {"6_3P1", "6_1P1", "7_1P1", "9_1P1"}, 313.0};
}

}  // namespace sacs

#pragma once

// Spectroscopic transition table and the intensity conversions built on it:
// Rabi frequencies, dynamic Stark shifts and effective two-photon couplings.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sacs {

struct TransitionRecord {
  std::string upper;
  std::string lower;
  double wavelength_nm = 0.0;
  double einstein_a = 0.0;  ///< 1e8 s^-1
  double dipole = 0.0;      ///< 1e-30 C m
};

/// Spontaneous rate from a dipole moment, A = w^3 d^2 / (3 pi eps0 hbar c^3), in s^-1.
double einstein_a_from_dipole(double wavelength_nm, double dipole_si);
/// Inverse of the above, in C m.
double dipole_from_einstein_a(double wavelength_nm, double a_per_s);

enum class ChecksumPolicy { require, report };

class TransitionTable {
 public:
  TransitionTable() = default;
  explicit TransitionTable(std::vector<TransitionRecord> records);

  /// Parses the column-delimited data file and verifies its checksum line.
  /// With ChecksumPolicy::report a missing or wrong checksum is recorded in
  /// checksum_problem() instead of throwing.
  static TransitionTable load(const std::filesystem::path& path, ChecksumPolicy policy = ChecksumPolicy::require);
  /// Parses file contents; `origin` only labels error messages.
  static TransitionTable parse(const std::string& text, const std::string& origin = "<memory>",
                               ChecksumPolicy policy = ChecksumPolicy::require);

  /// Empty when the checksum line matched the data.
  const std::string& checksum_problem() const { return checksum_problem_; }

  const std::vector<TransitionRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  /// Transition between two levels in either order; throws ConfigError if absent.
  const TransitionRecord& find(const std::string& a, const std::string& b) const;
  bool has(const std::string& a, const std::string& b) const;

  /// Level energies over hbar (rad/s) relative to the level that never
  /// appears as an upper state, propagated through the table wavelengths.
  const std::map<std::string, double>& level_energies() const { return energies_; }
  double energy(const std::string& level) const;

  /// Smallest transition angular frequency in the table (rad/s).
  double min_transition_frequency() const;

 private:
  std::vector<TransitionRecord> records_;
  std::map<std::string, double> energies_;
  std::string checksum_problem_;
};

/// FNV-1a 64 over the normalized data rows, as written in the checksum line.
std::string table_checksum(const std::vector<TransitionRecord>& records);
/// Serializes records with a valid checksum line.
std::string format_table(const std::vector<TransitionRecord>& records);

/// Omega = d E / hbar with E = sqrt(2 I / eps0 c); rad/ns.
double rabi_from_intensity(const TransitionRecord& t, double intensity_w_cm2);

struct StarkContext {
  std::string target;               ///< shifted level
  double wavelength_nm = 1064.0;    ///< Stark laser
  std::vector<std::string> levels;  ///< contributing intermediate levels
};

/// Stark shift magnitude Delta_S (rad/ns, >= 0) of `ctx.target`:
///   energy shift = E^2/(4 hbar) sum_j |d_3j|^2 / (E_j - E_3 + hbar w_S),
///   Delta_S = -(energy shift)/hbar.
/// Throws PhysicsError on a near-resonant denominator or an upward shift.
double stark_shift_from_intensity(const TransitionTable& table, const StarkContext& ctx,
                                  double intensity_w_cm2);

/// Signed shift coefficient per W/cm^2 in s^-1 (negative for a downward shift).
double stark_coefficient(const TransitionTable& table, const StarkContext& ctx);

struct TwoPhotonContext {
  std::string ground;
  std::string target;
  std::vector<std::string> intermediates;
  double pump_wavelength_nm = 313.0;
};

/// Omega_eff = E_p^2/(2 hbar) sum_j d_1j d_j3 / (E_j - E_1 - hbar w_p); rad/ns.
double effective_two_photon_rabi(const TransitionTable& table, const TwoPhotonContext& ctx,
                                 double intensity_w_cm2);
/// Coefficient per W/cm^2 in s^-1.
double effective_two_photon_coefficient(const TransitionTable& table, const TwoPhotonContext& ctx);
/// Pump intensity (W/cm^2) giving the requested Omega_eff (rad/ns).
double intensity_for_two_photon_rabi(const TransitionTable& table, const TwoPhotonContext& ctx,
                                     double omega_eff);

struct RowDeviation {
  const TransitionRecord* record = nullptr;
  double dipole_from_a = 0.0;  ///< 1e-30 C m
  double dipole_deviation = 0.0;  ///< (tabulated - computed)/computed
  double a_deviation = 0.0;       ///< A(tabulated d)/A_tab - 1
  bool flagged = false;
};

inline constexpr std::size_t kMercuryRowCount = 8;
inline constexpr double kTableTolerance = 0.02;

/// Einstein-relation consistency per row. Throws ConfigError when fewer
/// than `expected_rows` rows are present.
std::vector<RowDeviation> validate_table(const TransitionTable& table,
                                         std::size_t expected_rows = kMercuryRowCount,
                                         double tolerance = kTableTolerance);

/// Standard mercury contexts used by the bundled scenarios.
StarkContext mercury_stark_context();
TwoPhotonContext mercury_two_photon_context();

}  // namespace sacs

#pragma once

// Pulse envelopes and SI <-> internal (rad/ns) conversions.

#include <utility>
#include <vector>

namespace sacs {

namespace constants {
// CODATA 2018
inline constexpr double c = 299792458.0;              // m/s
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double per_s_to_per_ns = 1e-9;
inline constexpr double w_per_cm2 = 1e4;              // W/m^2
}  // namespace constants

enum class PulseShape { zero, sine_squared, gaussian };

/// One envelope. Sine-squared: peak * sin^2((t - delay) / width) on
/// [delay, delay + pi*width]. Gaussian: peak * exp(-((t - delay) / width)^2),
/// truncated beyond |t - delay| > 6 width.
struct PulseEnvelope {
  PulseShape shape = PulseShape::zero;
  double peak = 0.0;
  double width = 1.0;
  double delay = 0.0;

  static PulseEnvelope sine_squared(double peak, double width, double delay);
  static PulseEnvelope gaussian(double peak, double width, double center);

  /// [start, end] outside which the envelope is exactly zero.
  std::pair<double, double> support() const;
  /// Time of the maximum.
  double peak_time() const;
};

inline constexpr double kGaussianCutoff = 6.0;

void validate(const PulseEnvelope& p);
double envelope_value(const PulseEnvelope& p, double t);

/// Sum of envelopes; an empty train is identically zero.
using PulseTrain = std::vector<PulseEnvelope>;
double envelope_value(const PulseTrain& train, double t);
double train_peak(const PulseTrain& train);
std::pair<double, double> train_support(const PulseTrain& train);

/// Peak field amplitude sqrt(2 I / (eps0 c)) in V/m for I in W/cm^2.
double field_amplitude(double intensity_w_cm2);

/// Angular frequency 2 pi c / lambda in rad/s for lambda in nm.
double angular_frequency(double wavelength_nm);

}  // namespace sacs

#include "sacs/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sacs {

PulseEnvelope PulseEnvelope::sine_squared(double peak, double width, double delay) {
  PulseEnvelope p{PulseShape::sine_squared, peak, width, delay};
  validate(p);
  return p;
}

PulseEnvelope PulseEnvelope::gaussian(double peak, double width, double center) {
  PulseEnvelope p{PulseShape::gaussian, peak, width, center};
  validate(p);
  return p;
}

std::pair<double, double> PulseEnvelope::support() const {
  switch (shape) {
    case PulseShape::sine_squared:
      return {delay, delay + std::numbers::pi * width};
    case PulseShape::gaussian:
      return {delay - kGaussianCutoff * width, delay + kGaussianCutoff * width};
    case PulseShape::zero:
      break;
  }
  return {delay, delay};
}

double PulseEnvelope::peak_time() const {
  return shape == PulseShape::sine_squared ? delay + 0.5 * std::numbers::pi * width : delay;
}

void validate(const PulseEnvelope& p) {
  if (!std::isfinite(p.peak) || !std::isfinite(p.width) || !std::isfinite(p.delay))
    throw std::invalid_argument("pulse envelope: non-finite parameter");
  if (!(p.width > 0.0)) throw std::invalid_argument("pulse envelope: width must be > 0");
  if (p.peak < 0.0) throw std::invalid_argument("pulse envelope: peak must be >= 0");
}

double envelope_value(const PulseEnvelope& p, double t) {
  switch (p.shape) {
    case PulseShape::sine_squared: {
      const double x = (t - p.delay) / p.width;
      if (x < 0.0 || x > std::numbers::pi) return 0.0;
      const double s = std::sin(x);
      return p.peak * s * s;
    }
    case PulseShape::gaussian: {
      const double x = (t - p.delay) / p.width;
      if (std::abs(x) > kGaussianCutoff) return 0.0;
      return p.peak * std::exp(-x * x);
    }
    case PulseShape::zero:
      break;
  }
  return 0.0;
}

double envelope_value(const PulseTrain& train, double t) {
  double v = 0.0;
  for (const auto& p : train) v += envelope_value(p, t);
  return v;
}

double train_peak(const PulseTrain& train) {
  double v = 0.0;
  for (const auto& p : train) v = std::max(v, p.peak);
  return v;
}

std::pair<double, double> train_support(const PulseTrain& train) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : train) {
    if (p.shape == PulseShape::zero || p.peak == 0.0) continue;
    const auto [a, b] = p.support();
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return {lo, hi};
}

double field_amplitude(double intensity_w_cm2) {
  if (intensity_w_cm2 < 0.0) throw std::invalid_argument("intensity must be >= 0");
  return std::sqrt(2.0 * intensity_w_cm2 * constants::w_per_cm2 / (constants::epsilon0 * constants::c));
}

double angular_frequency(double wavelength_nm) {
  if (!(wavelength_nm > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  return 2.0 * std::numbers::pi * constants::c / (wavelength_nm * 1e-9);
}

}  // namespace sacs

#include "wavepack/wavepacket.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wavepack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// |x| = |delta| * tau below this uses the series for sinc^2.
constexpr double kSeriesCutoff = 1e-4;

// `scale` bounds the magnitude of the operands that produced delta; a
// detuning closer than a few ulps of `scale` to a null is the null.
double intensity_impl(const Pulse& pulse, double delta, double scale) {
  if (!std::isfinite(delta)) {
    throw std::invalid_argument("intensity: non-finite frequency");
  }
  const double a0 = pulse.amplitude();
  const double tau = pulse.duration();
  const double peak = a0 * a0 * tau * tau;
  const double abs_delta = std::abs(delta);
  const double x = abs_delta * tau;

  if (x < kSeriesCutoff) {
    const double x2 = x * x;
    return peak * (1.0 - x2 / 12.0 + x2 * x2 / 360.0);
  }

  const double order = std::nearbyint(x / kTwoPi);
  if (order >= 1.0) {
    const double null = kTwoPi * order / tau;
    if (std::abs(abs_delta - null) <= 8.0 * kEps * scale) {
      return 0.0;
    }
  }

  const double s = std::sin(0.5 * x);
  return 4.0 * a0 * a0 * s * s / (abs_delta * abs_delta);
}

}  // namespace

Pulse::Pulse(double a0, double omega0, double tau) : a0_(a0), omega0_(omega0), tau_(tau) {
  if (!std::isfinite(a0) || a0 == 0.0) {
    throw std::invalid_argument("Pulse: amplitude must be finite and nonzero");
  }
  if (!std::isfinite(omega0) || omega0 <= 0.0) {
    throw std::invalid_argument("Pulse: carrier frequency must be positive");
  }
  if (!std::isfinite(tau) || tau <= 0.0) {
    throw std::invalid_argument("Pulse: duration must be positive");
  }
}

std::complex<double> sample_waveform(const Pulse& pulse, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("sample_waveform: non-finite time");
  }
  if (t < 0.0 || t > pulse.duration()) {
    return {0.0, 0.0};
  }
  return std::polar(pulse.amplitude(), pulse.carrier() * t);
}

std::vector<std::complex<double>> sample_waveform(const Pulse& pulse,
                                                  std::span<const double> times) {
  std::vector<std::complex<double>> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back(sample_waveform(pulse, t));
  }
  return out;
}

double intensity_at_detuning(const Pulse& pulse, double delta) {
  return intensity_impl(pulse, delta, std::abs(delta));
}

double analytic_intensity(const Pulse& pulse, double omega) {
  if (!std::isfinite(omega)) {
    throw std::invalid_argument("analytic_intensity: non-finite frequency");
  }
  const double delta = omega - pulse.carrier();
  return intensity_impl(pulse, delta, std::abs(pulse.carrier()) + std::abs(delta));
}

double peak_intensity(const Pulse& pulse) {
  const double a0 = pulse.amplitude();
  const double tau = pulse.duration();
  return a0 * a0 * tau * tau;
}

}  // namespace wavepack

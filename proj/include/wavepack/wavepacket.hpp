#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wavepack {

/// Rectangular-envelope sinusoid: a0 * exp(i * omega0 * t) for t in [0, tau],
/// zero elsewhere. The physical field is the real part (a cosine).
class Pulse {
 public:
  /// Throws std::invalid_argument unless tau > 0, omega0 > 0 and a0 is
  /// finite and nonzero.
  Pulse(double a0, double omega0, double tau);

  double amplitude() const { return a0_; }
  double carrier() const { return omega0_; }
  double duration() const { return tau_; }

 private:
  double a0_;
  double omega0_;
  double tau_;
};

std::complex<double> sample_waveform(const Pulse& pulse, double t);

/// Throws std::invalid_argument on a non-finite time.
std::vector<std::complex<double>> sample_waveform(const Pulse& pulse,
                                                  std::span<const double> times);

/// Exact squared modulus of the pulse's Fourier integral at detuning
/// delta = omega - omega0:
///
///   |int_0^tau a0 exp(-i delta t) dt|^2 = 4 a0^2 sin^2(delta tau / 2) / delta^2
///
/// Near resonance (|delta| tau < 1e-4) a Taylor series replaces the 0/0 form.
/// Detunings within a few ulps of a null 2 pi n / tau return exactly 0.
double intensity_at_detuning(const Pulse& pulse, double delta);

/// Same as intensity_at_detuning(pulse, omega - omega0), with the null
/// snapping scaled to the resolution of omega itself.
double analytic_intensity(const Pulse& pulse, double omega);

/// a0^2 tau^2, the spectral maximum at omega = omega0.
double peak_intensity(const Pulse& pulse);

}  // namespace wavepack

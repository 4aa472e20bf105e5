#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "wavepack/wavepacket.hpp"

namespace wavepack {

/// Time samples of a complex signal on a strictly increasing, possibly
/// non-uniform grid.
class SampledWaveform {
 public:
  /// Throws std::invalid_argument on length mismatch, fewer than two
  /// samples, non-finite entries or a non-increasing time grid.
  SampledWaveform(std::vector<double> t, std::vector<std::complex<double>> amp);

  std::span<const double> times() const { return t_; }
  std::span<const std::complex<double>> amplitudes() const { return amp_; }
  std::size_t size() const { return t_.size(); }

  /// Span of the time grid, t.back() - t.front().
  double duration() const { return t_.back() - t_.front(); }

 private:
  std::vector<double> t_;
  std::vector<std::complex<double>> amp_;
};

/// Samples `pulse` on `points` uniform times covering [0, tau].
SampledWaveform sample_pulse(const Pulse& pulse, std::size_t points);

class Spectrum {
 public:
  /// Throws std::invalid_argument on length mismatch, an empty or
  /// non-increasing grid, or negative / non-finite intensities.
  Spectrum(std::vector<double> omega, std::vector<double> intensity);

  std::span<const double> omega() const { return omega_; }
  std::span<const double> intensity() const { return intensity_; }
  std::size_t size() const { return omega_.size(); }

 private:
  std::vector<double> omega_;
  std::vector<double> intensity_;
};

/// Analytic spectrum of `pulse` sampled on `omega_grid`.
Spectrum analytic_spectrum(const Pulse& pulse, std::span<const double> omega_grid);

struct WidthReport {
  double first_zero_halfwidth;
  double fwhm;
  /// first_zero_halfwidth * duration.
  double product;
};

struct MomentReport {
  double mean_omega;
  double mean_energy;
  double delta_e_convention;
  double hbar;
};

/// Raised when a width measure cannot be located inside the sampled grid.
class WidthOutOfRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoZeroInRange : public WidthOutOfRange {
 public:
  using WidthOutOfRange::WidthOutOfRange;
};

/// `points` evenly spaced values covering [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t points);

/// I(omega) = |int A(t) exp(-i omega t) dt|^2 by the trapezoidal rule on the
/// waveform's own time grid. Throws std::invalid_argument if omega_grid is
/// empty or not strictly increasing.
Spectrum fourier_intensity(const SampledWaveform& waveform,
                           std::span<const double> omega_grid);

/// 2 pi / tau: distance from the spectral peak to the first null.
double first_zero_halfwidth(const Pulse& pulse);

/// Numeric counterpart of first_zero_halfwidth for any sampled spectrum.
/// From the maximum, scans each side for the first local minimum below
/// 1e-6 * peak and places the null where the linearly interpolated slope
/// vanishes. With nulls on both sides the result is half their separation;
/// with one, its distance from the peak sample. Throws NoZeroInRange when
/// no null is found, including when the maximum sits on the grid boundary.
double first_zero_halfwidth_numeric(const Spectrum& spectrum);

/// Full width at half maximum, half-level crossings linearly interpolated.
/// Throws WidthOutOfRange if either flank never drops to half the peak.
double fwhm(const Spectrum& spectrum);

/// Closed-form FWHM of the rectangular-pulse spectrum, 4 u / tau with u the
/// positive root of sin^2(u) / u^2 = 1/2.
double fwhm(const Pulse& pulse);

/// The root u of sin^2(u) / u^2 = 1/2 in (1, 2), found by bisection.
double half_maximum_argument();

/// first_zero_halfwidth(pulse) * tau; 2 pi for the rectangular envelope.
double uncertainty_product(const Pulse& pulse);

WidthReport width_report(const Pulse& pulse);

/// Mean energy hbar * omega0 (the spectrum is symmetric about omega0) and the
/// energy spread 2 pi hbar / tau. The spectrum's second moment diverges, so
/// the spread is the conventional value, not a computed moment.
/// Throws std::invalid_argument unless hbar > 0.
MomentReport energy_moments(const Pulse& pulse, double hbar = 1.0);

/// int omega I d omega / int I d omega, trapezoidal on the spectrum's grid.
/// An asymmetric grid around the line centre biases the result.
/// Throws std::domain_error when the integrated intensity is zero.
double mean_omega_numeric(const Spectrum& spectrum);

}  // namespace wavepack

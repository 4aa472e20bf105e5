#include "wavepack/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace wavepack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNullFraction = 1e-6;

void require_increasing(std::span<const double> grid, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) {
      throw std::invalid_argument(std::string(what) + ": non-finite grid entry");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": grid not strictly increasing");
    }
  }
}

std::size_t peak_index(const Spectrum& spectrum) {
  const auto values = spectrum.intensity();
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                  values.begin());
}

// Position where the piecewise-linear slope through samples j-1, j, j+1
// changes sign.
double refine_minimum(std::span<const double> w, std::span<const double> v, std::size_t j) {
  const double left_slope = (v[j] - v[j - 1]) / (w[j] - w[j - 1]);
  const double right_slope = (v[j + 1] - v[j]) / (w[j + 1] - w[j]);
  if (right_slope == left_slope) {
    return w[j];
  }
  const double left_mid = 0.5 * (w[j - 1] + w[j]);
  const double right_mid = 0.5 * (w[j] + w[j + 1]);
  return left_mid + (right_mid - left_mid) * (-left_slope) / (right_slope - left_slope);
}

bool is_null(std::span<const double> v, std::size_t j, double threshold) {
  return v[j] <= threshold && v[j] <= v[j - 1] && v[j] <= v[j + 1];
}

std::optional<double> null_above(const Spectrum& s, std::size_t peak, double threshold) {
  const auto w = s.omega();
  const auto v = s.intensity();
  for (std::size_t j = peak + 1; j + 1 < v.size(); ++j) {
    if (is_null(v, j, threshold)) {
      return refine_minimum(w, v, j);
    }
  }
  return std::nullopt;
}

std::optional<double> null_below(const Spectrum& s, std::size_t peak, double threshold) {
  const auto w = s.omega();
  const auto v = s.intensity();
  for (std::size_t j = peak; j-- > 1;) {
    if (is_null(v, j, threshold)) {
      return refine_minimum(w, v, j);
    }
  }
  return std::nullopt;
}

double crossing(double w0, double v0, double w1, double v1, double level) {
  return w0 + (v0 - level) / (v0 - v1) * (w1 - w0);
}

}  // namespace

SampledWaveform::SampledWaveform(std::vector<double> t, std::vector<std::complex<double>> amp)
    : t_(std::move(t)), amp_(std::move(amp)) {
  if (t_.size() != amp_.size()) {
    throw std::invalid_argument("SampledWaveform: time and amplitude lengths differ");
  }
  if (t_.size() < 2) {
    throw std::invalid_argument("SampledWaveform: need at least two samples");
  }
  require_increasing(t_, "SampledWaveform");
  for (const auto& a : amp_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("SampledWaveform: non-finite amplitude");
    }
  }
}

SampledWaveform sample_pulse(const Pulse& pulse, std::size_t points) {
  auto t = linspace(0.0, pulse.duration(), points);
  auto amp = sample_waveform(pulse, t);
  return {std::move(t), std::move(amp)};
}

Spectrum::Spectrum(std::vector<double> omega, std::vector<double> intensity)
    : omega_(std::move(omega)), intensity_(std::move(intensity)) {
  if (omega_.size() != intensity_.size()) {
    throw std::invalid_argument("Spectrum: grid and intensity lengths differ");
  }
  if (omega_.empty()) {
    throw std::invalid_argument("Spectrum: empty grid");
  }
  require_increasing(omega_, "Spectrum");
  for (double v : intensity_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("Spectrum: intensities must be finite and nonnegative");
    }
  }
}

Spectrum analytic_spectrum(const Pulse& pulse, std::span<const double> omega_grid) {
  std::vector<double> values;
  values.reserve(omega_grid.size());
  for (double w : omega_grid) {
    values.push_back(analytic_intensity(pulse, w));
  }
  return {std::vector<double>(omega_grid.begin(), omega_grid.end()), std::move(values)};
}

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  if (points < 2) {
    throw std::invalid_argument("linspace: need at least two points");
  }
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo + step * static_cast<double>(i);
  }
  out.back() = hi;
  return out;
}

Spectrum fourier_intensity(const SampledWaveform& waveform,
                           std::span<const double> omega_grid) {
  if (omega_grid.empty()) {
    throw std::invalid_argument("fourier_intensity: empty frequency grid");
  }
  require_increasing(omega_grid, "fourier_intensity");

  const auto t = waveform.times();
  const auto amp = waveform.amplitudes();
  const std::size_t n = t.size();

  // Trapezoid weights folded into the samples.
  std::vector<std::complex<double>> weighted(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double left = k > 0 ? t[k] - t[k - 1] : 0.0;
    const double right = k + 1 < n ? t[k + 1] - t[k] : 0.0;
    weighted[k] = amp[k] * (0.5 * (left + right));
  }

  std::vector<double> values;
  values.reserve(omega_grid.size());
  for (double w : omega_grid) {
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      sum += weighted[k] * std::polar(1.0, -w * t[k]);
    }
    values.push_back(std::norm(sum));
  }
  return {std::vector<double>(omega_grid.begin(), omega_grid.end()), std::move(values)};
}

double first_zero_halfwidth(const Pulse& pulse) { return kTwoPi / pulse.duration(); }

double first_zero_halfwidth_numeric(const Spectrum& spectrum) {
  const std::size_t peak = peak_index(spectrum);
  if (peak == 0 || peak + 1 == spectrum.size()) {
    throw NoZeroInRange("no zero in range: spectral maximum lies on the grid boundary");
  }
  const double threshold = kNullFraction * spectrum.intensity()[peak];
  const auto above = null_above(spectrum, peak, threshold);
  const auto below = null_below(spectrum, peak, threshold);
  if (above && below) {
    return 0.5 * (*above - *below);
  }
  const double centre = spectrum.omega()[peak];
  if (above) {
    return *above - centre;
  }
  if (below) {
    return centre - *below;
  }
  throw NoZeroInRange("no zero in range");
}

double fwhm(const Spectrum& spectrum) {
  const auto w = spectrum.omega();
  const auto v = spectrum.intensity();
  const std::size_t peak = peak_index(spectrum);
  const double half = 0.5 * v[peak];
  if (!(half > 0.0)) {
    throw WidthOutOfRange("fwhm: spectrum is identically zero");
  }

  std::optional<double> upper;
  for (std::size_t j = peak + 1; j < v.size(); ++j) {
    if (v[j] <= half) {
      upper = crossing(w[j - 1], v[j - 1], w[j], v[j], half);
      break;
    }
  }
  std::optional<double> lower;
  for (std::size_t j = peak; j-- > 0;) {
    if (v[j] <= half) {
      lower = crossing(w[j + 1], v[j + 1], w[j], v[j], half);
      break;
    }
  }
  if (!upper || !lower) {
    throw WidthOutOfRange("fwhm: half maximum not crossed within the grid");
  }
  return *upper - *lower;
}

double half_maximum_argument() {
  static const double root = [] {
    auto f = [](double u) {
      const double s = std::sin(u) / u;
      return s * s - 0.5;
    };
    double lo = 1.0;
    double hi = 2.0;
    for (;;) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        break;
      }
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

double fwhm(const Pulse& pulse) { return 4.0 * half_maximum_argument() / pulse.duration(); }

double uncertainty_product(const Pulse& pulse) {
  return first_zero_halfwidth(pulse) * pulse.duration();
}

WidthReport width_report(const Pulse& pulse) {
  return {first_zero_halfwidth(pulse), fwhm(pulse), uncertainty_product(pulse)};
}

MomentReport energy_moments(const Pulse& pulse, double hbar) {
  if (!std::isfinite(hbar) || hbar <= 0.0) {
    throw std::invalid_argument("energy_moments: hbar must be positive");
  }
  const double omega0 = pulse.carrier();
  return {omega0, hbar * omega0, kTwoPi * hbar / pulse.duration(), hbar};
}

double mean_omega_numeric(const Spectrum& spectrum) {
  const auto w = spectrum.omega();
  const auto v = spectrum.intensity();
  double total = 0.0;
  double first = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double h = 0.5 * (w[i] - w[i - 1]);
    total += h * (v[i - 1] + v[i]);
    first += h * (w[i - 1] * v[i - 1] + w[i] * v[i]);
  }
  if (!(total > 0.0)) {
    throw std::domain_error("mean_omega_numeric: zero total intensity");
  }
  return first / total;
}

}  // namespace wavepack

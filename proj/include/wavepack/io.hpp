#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "wavepack/recoil.hpp"
#include "wavepack/spectral.hpp"

namespace wavepack::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, the CSV number format.
std::string format_csv_number(double value);

/// Reads a waveform table with header `t,re,im` or `t,amp` (im = 0).
/// UTF-8, `.` decimal separator, optional BOM, blank lines ignored.
/// Throws FormatError on malformed content; SampledWaveform's own checks
/// apply to the parsed grid.
SampledWaveform read_waveform_csv(std::istream& in);

void write_waveform_csv(std::ostream& out, const SampledWaveform& waveform);

/// `omega,intensity` header followed by one row per grid point.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

/// `kx,ky,kz` header followed by one row per sample.
void write_momenta_csv(std::ostream& out, std::span<const Momentum> momenta);

}  // namespace wavepack::io

#include "wavepack/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <string_view>
#include <vector>

namespace wavepack::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

double parse_number(std::string_view field, std::size_t line_no) {
  if (!field.empty() && field.front() == '+') {
    field.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": cannot parse number '" +
                      std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_csv_number(double value) {
  std::array<char, 32> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return {buf.data(), static_cast<std::size_t>(len)};
}

SampledWaveform read_waveform_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool complex_columns = false;
  bool have_header = false;
  std::vector<double> t;
  std::vector<std::complex<double>> amp;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) {
      view.remove_prefix(3);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const auto fields = split(view);
    if (!have_header) {
      if (fields.size() == 3 && fields[0] == "t" && fields[1] == "re" && fields[2] == "im") {
        complex_columns = true;
      } else if (fields.size() == 2 && fields[0] == "t" && fields[1] == "amp") {
        complex_columns = false;
      } else {
        throw FormatError("waveform header must be 't,re,im' or 't,amp'");
      }
      have_header = true;
      continue;
    }
    const std::size_t expected = complex_columns ? 3 : 2;
    if (fields.size() != expected) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(expected) + " columns");
    }
    t.push_back(parse_number(fields[0], line_no));
    const double re = parse_number(fields[1], line_no);
    const double im = complex_columns ? parse_number(fields[2], line_no) : 0.0;
    amp.emplace_back(re, im);
  }
  if (!have_header) {
    throw FormatError("waveform file is empty");
  }
  try {
    return SampledWaveform(std::move(t), std::move(amp));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

void write_waveform_csv(std::ostream& out, const SampledWaveform& waveform) {
  out << "t,re,im\n";
  const auto t = waveform.times();
  const auto amp = waveform.amplitudes();
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << format_csv_number(t[i]) << ',' << format_csv_number(amp[i].real()) << ','
        << format_csv_number(amp[i].imag()) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "omega,intensity\n";
  const auto w = spectrum.omega();
  const auto v = spectrum.intensity();
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << format_csv_number(w[i]) << ',' << format_csv_number(v[i]) << '\n';
  }
}

void write_momenta_csv(std::ostream& out, std::span<const Momentum> momenta) {
  out << "kx,ky,kz\n";
  for (const auto& p : momenta) {
    out << format_csv_number(p.kx) << ',' << format_csv_number(p.ky) << ','
        << format_csv_number(p.kz) << '\n';
  }
}

}  // namespace wavepack::io

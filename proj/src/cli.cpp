#include "wavepack/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wavepack/adjustment.hpp"
#include "wavepack/io.hpp"
#include "wavepack/recoil.hpp"
#include "wavepack/spectral.hpp"

namespace wavepack::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "json";
  std::string path;
};

void add_output_options(CLI::App& sub, OutputOptions& opts) {
  sub.add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--output", opts.path, "Write the report here instead of standard output");
}

// monostate marks a value that could not be determined.
using Value = std::variant<std::monostate, double, std::int64_t, std::uint64_t, std::string>;
using Field = std::pair<std::string, Value>;

Value maybe(std::optional<double> v) { return v ? Value(*v) : Value(std::monostate{}); }

Json value_to_json(const Value& value) {
  return std::visit(
      [](const auto& v) -> Json {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      value);
}

std::string value_to_csv(const Value& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return io::format_csv_number(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      value);
}

Json fields_to_json(const std::vector<Field>& fields) {
  Json obj = Json::object();
  for (const auto& [name, value] : fields) {
    obj[name] = value_to_json(value);
  }
  return obj;
}

std::string fields_to_csv(const std::vector<Field>& fields) {
  std::string header;
  std::string row;
  for (const auto& [name, value] : fields) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += name;
    row += value_to_csv(value);
  }
  return header + '\n' + row + '\n';
}

std::string json_report(const Json& config, const Json& results) {
  Json doc = Json::object();
  doc["config"] = config;
  doc["results"] = results;
  return doc.dump(2) + '\n';
}

void emit(const OutputOptions& opts, const std::string& text, std::ostream& out) {
  if (opts.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.path, std::ios::binary);
  if (!file) {
    throw RuntimeError("cannot open output file '" + opts.path + "'");
  }
  file << text;
  if (!file) {
    throw RuntimeError("failed writing output file '" + opts.path + "'");
  }
}

// Keeps -0.0 out of reports.
double unsigned_zero(double v) { return v + 0.0; }

std::optional<double> try_width(double (*measure)(const Spectrum&), const Spectrum& s) {
  try {
    return measure(s);
  } catch (const WidthOutOfRange&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  double a0 = 1.0;
  double omega0 = 0.0;
  double tau = 0.0;
  std::string input;
  double omega_min = 0.0;
  double omega_max = 0.0;
  long long points = 0;
  OutputOptions output;

  CLI::Option* a0_opt = nullptr;
  CLI::Option* omega0_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* input_opt = nullptr;
};

CLI::App* add_spectrum(CLI::App& app, SpectrumArgs& a) {
  auto* sub = app.add_subcommand("spectrum", "Spectral intensity of a pulse or sampled waveform");
  a.a0_opt = sub->add_option("--a0", a.a0, "Pulse amplitude")->capture_default_str();
  a.omega0_opt = sub->add_option("--omega0", a.omega0, "Carrier angular frequency");
  a.tau_opt = sub->add_option("--tau", a.tau, "Pulse duration");
  a.input_opt = sub->add_option("--input", a.input, "Waveform CSV (t,re,im or t,amp)");
  sub->add_option("--omega-min", a.omega_min, "Lower end of the frequency grid")->required();
  sub->add_option("--omega-max", a.omega_max, "Upper end of the frequency grid")->required();
  sub->add_option("--points", a.points, "Number of frequency grid points")->required();
  add_output_options(*sub, a.output);
  return sub;
}

std::string run_spectrum(const SpectrumArgs& a) {
  if (a.points < 2) {
    throw UsageError("--points must be at least 2");
  }
  if (!(a.omega_max > a.omega_min)) {
    throw UsageError("--omega-max must exceed --omega-min");
  }
  const bool numeric = a.input_opt->count() > 0;
  if (numeric && (a.a0_opt->count() + a.omega0_opt->count() + a.tau_opt->count()) > 0) {
    throw UsageError("--input cannot be combined with --a0, --omega0 or --tau");
  }
  if (!numeric && (a.omega0_opt->count() == 0 || a.tau_opt->count() == 0)) {
    throw UsageError("analytic mode needs --omega0 and --tau (or pass --input)");
  }

  Json config = Json::object();
  config["subcommand"] = "spectrum";
  if (numeric) {
    config["input"] = a.input;
  } else {
    config["a0"] = a.a0;
    config["omega0"] = a.omega0;
    config["tau"] = a.tau;
  }
  config["omega-min"] = a.omega_min;
  config["omega-max"] = a.omega_max;
  config["points"] = a.points;
  config["format"] = a.output.format;

  const auto grid = linspace(a.omega_min, a.omega_max, static_cast<std::size_t>(a.points));

  std::optional<Spectrum> spectrum;
  std::vector<Field> summary;
  if (numeric) {
    std::ifstream file(a.input, std::ios::binary);
    if (!file) {
      throw RuntimeError("cannot read input file '" + a.input + "'");
    }
    SampledWaveform waveform = [&] {
      try {
        return io::read_waveform_csv(file);
      } catch (const io::FormatError& e) {
        throw RuntimeError("invalid waveform file '" + a.input + "': " + e.what());
      }
    }();
    spectrum = fourier_intensity(waveform, grid);
    const auto v = spectrum->intensity();
    const auto peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    const auto halfwidth = try_width(&first_zero_halfwidth_numeric, *spectrum);
    const double duration = waveform.duration();
    summary = {
        {"peak", v[peak]},
        {"peak_omega", spectrum->omega()[peak]},
        {"first_zero_halfwidth", maybe(halfwidth)},
        {"fwhm", maybe(try_width(static_cast<double (*)(const Spectrum&)>(&fwhm), *spectrum))},
        {"duration", duration},
        {"product", maybe(halfwidth ? std::optional<double>(*halfwidth * duration) : std::nullopt)},
    };
  } else {
    const Pulse pulse = [&] {
      try {
        return Pulse(a.a0, a.omega0, a.tau);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    spectrum = analytic_spectrum(pulse, grid);
    summary = {
        {"peak", peak_intensity(pulse)},
        {"peak_omega", pulse.carrier()},
        {"first_zero_halfwidth", first_zero_halfwidth(pulse)},
        {"fwhm", fwhm(pulse)},
        {"duration", pulse.duration()},
        {"product", uncertainty_product(pulse)},
    };
  }

  if (a.output.format == "csv") {
    std::ostringstream text;
    for (const auto& [name, value] : summary) {
      text << "# " << name << ',' << value_to_csv(value) << '\n';
    }
    io::write_spectrum_csv(text, *spectrum);
    return text.str();
  }
  Json results = Json::object();
  results["summary"] = fields_to_json(summary);
  results["omega"] = std::vector<double>(spectrum->omega().begin(), spectrum->omega().end());
  results["intensity"] =
      std::vector<double>(spectrum->intensity().begin(), spectrum->intensity().end());
  return json_report(config, results);
}

// ------------------------------------------------------------------- width

struct WidthArgs {
  double omega0 = 0.0;
  double tau = 0.0;
  double hbar = 1.0;
  OutputOptions output;
};

CLI::App* add_width(CLI::App& app, WidthArgs& a) {
  auto* sub = app.add_subcommand("width", "Spectral widths and energy moments of a pulse");
  sub->add_option("--omega0", a.omega0, "Carrier angular frequency")->required();
  sub->add_option("--tau", a.tau, "Pulse duration")->required();
  sub->add_option("--hbar", a.hbar, "Action constant")->capture_default_str();
  add_output_options(*sub, a.output);
  return sub;
}

std::string run_width(const WidthArgs& a) {
  if (!(a.tau > 0.0) || !std::isfinite(a.tau)) {
    throw UsageError("--tau must be positive");
  }
  if (!(a.omega0 > 0.0) || !std::isfinite(a.omega0)) {
    throw UsageError("--omega0 must be positive");
  }
  if (!(a.hbar > 0.0) || !std::isfinite(a.hbar)) {
    throw UsageError("--hbar must be positive");
  }
  const Pulse pulse(1.0, a.omega0, a.tau);
  const WidthReport widths = width_report(pulse);
  const MomentReport moments = energy_moments(pulse, a.hbar);

  const std::vector<Field> fields = {
      {"first_zero_halfwidth", widths.first_zero_halfwidth},
      {"fwhm", widths.fwhm},
      {"product", widths.product},
      {"mean_omega", moments.mean_omega},
      {"mean_energy", moments.mean_energy},
      {"delta_e", moments.delta_e_convention},
      {"hbar", moments.hbar},
  };
  if (a.output.format == "csv") {
    return fields_to_csv(fields);
  }
  Json config = Json::object();
  config["subcommand"] = "width";
  config["omega0"] = a.omega0;
  config["tau"] = a.tau;
  config["hbar"] = a.hbar;
  config["format"] = a.output.format;
  return json_report(config, fields_to_json(fields));
}

// ------------------------------------------------------------------ adjust

struct AdjustArgs {
  double e = 0.0;
  double de = 0.0;
  double t = 0.0;
  std::string mode = "both";
  OutputOptions output;
};

CLI::App* add_adjust(CLI::App& app, AdjustArgs& a) {
  auto* sub = app.add_subcommand("adjust", "Make a complex energy real by continuing time");
  sub->add_option("--e", a.e, "Real part of the energy")->required();
  sub->add_option("--de", a.de, "Imaginary part of the energy (level width)")->required();
  sub->add_option("--t", a.t, "Time the energy multiplies")->required();
  sub->add_option("--mode", a.mode, "Which closed form to report")
      ->check(CLI::IsMember({"paper", "consistent", "both"}))
      ->capture_default_str();
  add_output_options(*sub, a.output);
  return sub;
}

std::string run_adjust(const AdjustArgs& a) {
  if (!std::isfinite(a.e) || !std::isfinite(a.de) || !std::isfinite(a.t)) {
    throw UsageError("--e, --de and --t must be finite");
  }
  const ComplexEnergy ce{a.e, a.de};
  std::vector<Field> fields;
  try {
    if (a.mode == "paper" || a.mode == "both") {
      const double energy = adjusted_energy_paper(ce);
      const double zeta = ce.de * a.t / ce.e;
      const ComplexParts at = expand_product(ce, a.t, zeta);
      fields.emplace_back("paper_energy", energy);
      fields.emplace_back("zeta_paper", unsigned_zero(zeta));
      fields.emplace_back("paper_value", energy * a.t);
      fields.emplace_back("residual_im_paper", unsigned_zero(at.im));
    }
    if (a.mode == "consistent" || a.mode == "both") {
      const Continuation c = adjusted_energy_consistent(ce, a.t);
      const ComplexParts at = expand_product(ce, a.t, c.zeta);
      const std::complex<double> energy{ce.e, ce.de};
      const AdjustmentResult solved = solve_imag_zero(
          {[energy](std::complex<double> z) { return energy * z; }, a.t});
      fields.emplace_back("consistent_energy", ce.e + ce.de * ce.de / ce.e);
      fields.emplace_back("zeta_consistent", unsigned_zero(c.zeta));
      fields.emplace_back("consistent_value", c.value);
      fields.emplace_back("residual_im_consistent", unsigned_zero(at.im));
      fields.emplace_back("solver_zeta", unsigned_zero(solved.zeta));
      fields.emplace_back("solver_value", solved.adjusted_value);
      fields.emplace_back("solver_residual_im", solved.residual_im);
      fields.emplace_back("solver_evaluations", std::int64_t{solved.evaluations});
    }
  } catch (const UndefinedAdjustment& e) {
    throw RuntimeError(e.what());
  } catch (const NoRootInRange& e) {
    throw RuntimeError(e.what());
  }

  if (a.output.format == "csv") {
    return fields_to_csv(fields);
  }
  Json config = Json::object();
  config["subcommand"] = "adjust";
  config["e"] = a.e;
  config["de"] = a.de;
  config["t"] = a.t;
  config["mode"] = a.mode;
  config["format"] = a.output.format;
  return json_report(config, fields_to_json(fields));
}

// ------------------------------------------------------------------ recoil

struct RecoilArgs {
  double k = 0.0;
  long long n = 0;
  std::uint64_t seed = 0;
  std::string dump;
  unsigned threads = 0;
  OutputOptions output;
};

CLI::App* add_recoil(CLI::App& app, RecoilArgs& a) {
  auto* sub = app.add_subcommand("recoil", "Monte Carlo recoil momentum over the hemisphere");
  sub->add_option("--k", a.k, "Wave-vector magnitude")->required();
  sub->add_option("--n", a.n, "Number of absorbed photons")->required();
  sub->add_option("--seed", a.seed, "Random seed")->capture_default_str();
  sub->add_option("--dump", a.dump, "Write per-sample momenta (kx,ky,kz) to this CSV");
  sub->add_option("--threads", a.threads, "Worker threads (0 = all cores); output is unaffected");
  add_output_options(*sub, a.output);
  return sub;
}

std::string run_recoil(const RecoilArgs& a) {
  if (a.n < 1) {
    throw UsageError("--n must be at least 1");
  }
  if (!(a.k > 0.0) || !std::isfinite(a.k)) {
    throw UsageError("--k must be positive");
  }
  const auto n = static_cast<std::uint64_t>(a.n);
  const RecoilStats stats = recoil_stats(a.k, n, a.seed, a.threads);

  if (!a.dump.empty()) {
    std::ofstream file(a.dump, std::ios::binary);
    if (!file) {
      throw RuntimeError("cannot open dump file '" + a.dump + "'");
    }
    const auto samples = recoil_samples(a.k, n, a.seed);
    io::write_momenta_csv(file, samples);
    if (!file) {
      throw RuntimeError("failed writing dump file '" + a.dump + "'");
    }
  }

  const std::vector<Field> fields = {
      {"n", stats.n},
      {"k", stats.k},
      {"mean_kz", stats.mean_kz},
      {"std_kz", stats.std_kz},
      {"mean_kx", stats.mean_kx},
      {"mean_ky", stats.mean_ky},
      {"seed", stats.seed},
      {"generator", std::string(kRecoilGenerator)},
  };
  if (a.output.format == "csv") {
    return fields_to_csv(fields);
  }
  Json config = Json::object();
  config["subcommand"] = "recoil";
  config["k"] = a.k;
  config["n"] = a.n;
  config["seed"] = a.seed;
  if (!a.dump.empty()) {
    config["dump"] = a.dump;
  }
  config["format"] = a.output.format;

  return json_report(config, fields_to_json(fields));
}

// ------------------------------------------------------------------ replay

std::vector<std::string> config_to_args(const Json& config) {
  if (!config.is_object() || !config.contains("subcommand") ||
      !config["subcommand"].is_string()) {
    throw RuntimeError("report has no usable config object");
  }
  const auto subcommand = config["subcommand"].get<std::string>();
  if (subcommand == "replay") {
    throw RuntimeError("cannot replay a replay");
  }
  std::vector<std::string> args{subcommand};
  for (const auto& [key, value] : config.items()) {
    if (key == "subcommand") {
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return args;
}

std::vector<std::string> load_replay(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw RuntimeError("cannot read report '" + path + "'");
  }
  Json doc;
  try {
    doc = Json::parse(file);
  } catch (const Json::parse_error& e) {
    throw RuntimeError("report '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("config")) {
    throw RuntimeError("report '" + path + "' has no config key");
  }
  return config_to_args(doc["config"]);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wave-packet spectra, time-bandwidth widths, complex-energy adjustment and "
               "photon recoil sampling",
               "wavepack"};
  app.require_subcommand(1);

  SpectrumArgs spectrum_args;
  WidthArgs width_args;
  AdjustArgs adjust_args;
  RecoilArgs recoil_args;
  auto* spectrum_cmd = add_spectrum(app, spectrum_args);
  auto* width_cmd = add_width(app, width_args);
  auto* adjust_cmd = add_adjust(app, adjust_args);
  auto* recoil_cmd = add_recoil(app, recoil_args);

  std::string replay_path;
  std::string replay_output;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the config embedded in a JSON report");
  replay_cmd->add_option("report", replay_path, "JSON report written by an earlier run")
      ->required();
  replay_cmd->add_option("--output", replay_output, "Write the report here");

  std::vector<std::string> argv_storage{"wavepack"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& s : argv_storage) {
    argv.push_back(s.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (replay_cmd->parsed()) {
      auto replay_args = load_replay(replay_path);
      if (!replay_output.empty()) {
        replay_args.push_back("--output");
        replay_args.push_back(replay_output);
      }
      return run(replay_args, out, err);
    }
    if (spectrum_cmd->parsed()) {
      emit(spectrum_args.output, run_spectrum(spectrum_args), out);
    } else if (width_cmd->parsed()) {
      emit(width_args.output, run_width(width_args), out);
    } else if (adjust_cmd->parsed()) {
      emit(adjust_args.output, run_adjust(adjust_args), out);
    } else if (recoil_cmd->parsed()) {
      emit(recoil_args.output, run_recoil(recoil_args), out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const RuntimeError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kSuccess;
}

}  // namespace wavepack::cli

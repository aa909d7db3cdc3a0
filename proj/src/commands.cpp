#include "psifluc/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "psifluc/errors.hpp"
#include "psifluc/zeta_explicit.hpp"

namespace psifluc {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    parts.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

double parse_field(std::string_view text, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw FormatError("bad numeric field '" + std::string(text) + "'", line);
  return v;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

bool in_spectral_band(double lo, double hi) { return lo > 0.0 && lo < hi && hi <= 0.5; }

std::vector<double> synthetic_series(const std::string& spec, std::uint64_t seed, std::size_t n) {
  double coef = 0.0;
  if (spec.rfind("ar1:", 0) == 0) {
    const auto text = std::string_view(spec).substr(4);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), coef);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(std::abs(coef) < 1.0))
      throw DomainError("synthetic ar1 coefficient must be a number in (-1, 1)");
  } else if (spec != "white") {
    throw DomainError("synthetic signal must be 'white' or 'ar1:COEF'");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  double y = 0.0;
  for (int i = 0; i < 1000; ++i) y = coef * y + noise(rng);  // burn-in
  std::vector<double> out(n);
  for (auto& v : out) v = y = coef * y + noise(rng);
  return out;
}

std::string source_label(const RunConfig& config) {
  if (config.synthetic) return "synthetic:" + *config.synthetic + " seed=" + std::to_string(*config.seed);
  if (config.series_path) return "file:" + config.series_path->string();
  return "psi_fluc";
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "sample") return Command::Sample;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "fit") return Command::Fit;
  if (name == "reconstruct") return Command::Reconstruct;
  if (name == "analytic") return Command::Analytic;
  return std::nullopt;
}

const char* to_string(Command command) {
  switch (command) {
    case Command::Sample: return "sample";
    case Command::Spectrum: return "spectrum";
    case Command::Fit: return "fit";
    case Command::Reconstruct: return "reconstruct";
    case Command::Analytic: return "analytic";
  }
  return "?";
}

std::size_t resolved_n_samples(const RunConfig& config) {
  if (config.n_samples) return *config.n_samples;
  switch (config.command) {
    case Command::Sample: return 9999;  // x = 2 .. 10^4
    case Command::Reconstruct: return 499;  // x = 2 .. 500
    case Command::Analytic: return kMemGridPoints;
    default: return 100000;
  }
}

void validate(const RunConfig& config) {
  const std::size_t n = resolved_n_samples(config);
  const bool spectral = config.command == Command::Spectrum || config.command == Command::Fit;
  if (config.command == Command::Sample ? n < 1 : n < 2)
    throw DomainError("--n is too small for " + std::string(to_string(config.command)));
  if (config.command != Command::Analytic && config.x_start < 2)
    throw DomainError("--x-start must be >= 2 (smooth part undefined at x = 1)");
  if (spectral && !in_spectral_band(config.band_min, config.band_max))
    throw DomainError("--band must satisfy 0 < f_min < f_max <= 0.5");
  if (config.command == Command::Analytic && !(config.band_min > 0.0 && config.band_min < config.band_max))
    throw DomainError("--band must satisfy 0 < f_min < f_max");
  if (config.mem_order < 1) throw DomainError("--order must be >= 1");
  if (config.synthetic && !config.seed) throw DomainError("synthetic input requires --seed");
  if (config.synthetic && config.series_path)
    throw DomainError("synthetic input and --series are mutually exclusive");
  if (config.command == Command::Reconstruct && !config.zeros_path)
    throw DomainError("reconstruct requires --zeros");
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

FlucSeries read_sample_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  FlucSeries series;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "x,psi,smooth,fluc") throw FormatError("expected header x,psi,smooth,fluc", line_no);
      header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw FormatError("expected 4 fields", line_no);
    const double x = parse_field(fields[0], line_no);
    if (series.values.empty()) {
      if (x != std::floor(x) || x < 2) throw FormatError("grid must start at an integer >= 2", line_no);
      series.x_start = static_cast<std::int64_t>(x);
    } else if (x != static_cast<double>(series.x(series.size()))) {
      throw FormatError("grid is not consecutive integers", line_no);
    }
    series.values.push_back(parse_field(fields[3], line_no));
  }
  if (!header || series.values.empty()) throw FormatError("sample table has no rows");
  return series;
}

PowerSpectrum read_spectrum_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  PowerSpectrum spectrum;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "f,P") throw FormatError("expected header f,P", line_no);
      header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw FormatError("expected 2 fields", line_no);
    const double f = parse_field(fields[0], line_no);
    if (!spectrum.freqs.empty() && !(f > spectrum.freqs.back()))
      throw FormatError("frequencies must be strictly ascending", line_no);
    spectrum.freqs.push_back(f);
    spectrum.power.push_back(parse_field(fields[1], line_no));
  }
  if (!header || spectrum.freqs.empty()) throw FormatError("spectrum table has no rows");
  spectrum.nyquist = spectrum.freqs.back();
  spectrum.estimator.n_samples = 0;
  return spectrum;
}

std::vector<double> analysis_input(const RunConfig& config) {
  const std::size_t n = resolved_n_samples(config);
  if (config.synthetic) return remove_mean(synthetic_series(*config.synthetic, *config.seed, n));
  if (config.series_path) {
    auto in = open_input(*config.series_path);
    return remove_mean(read_sample_csv(in).values);
  }
  return remove_mean(fluctuation_series(config.x_start, n).values);
}

PowerSpectrum estimate_spectrum(const RunConfig& config) {
  validate(config);
  const auto series = analysis_input(config);
  if (config.method == SpectralMethod::Mem)
    return ar_psd(burg_fit(series, config.mem_order), kMemGridPoints, kMemGridLow);
  const std::size_t segment = config.welch_segment.value_or(default_welch_segment(series.size()));
  return welch_psd(series, segment, kWelchOverlap, Window::Hann);
}

PowerLawFit run_fit(const RunConfig& config) {
  validate(config);
  if (config.spectrum_path) {
    auto in = open_input(*config.spectrum_path);
    return fit_power_law(read_spectrum_csv(in), config.band_min, config.band_max);
  }
  return fit_power_law(estimate_spectrum(config), config.band_min, config.band_max);
}

void cmd_sample(const RunConfig& config, std::ostream& out) {
  validate(config);
  const std::size_t n = resolved_n_samples(config);
  const PsiSeries psi = psi_series(config.x_start, n);
  out << "x,psi,smooth,fluc\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = psi.x(i);
    const double smooth = smooth_part(static_cast<double>(x));
    out << x << ',' << format_double(psi.values[i]) << ',' << format_double(smooth) << ','
        << format_double(psi.values[i] - smooth) << '\n';
  }
}

void cmd_spectrum(const RunConfig& config, std::ostream& out) {
  validate(config);
  const auto series = analysis_input(config);
  out << "# source=" << source_label(config) << '\n';
  if (!config.series_path && !config.synthetic) out << "# x_start=" << config.x_start << '\n';
  out << "# dx=1\n# nyquist=0.5\n";

  PowerSpectrum spectrum;
  if (config.method == SpectralMethod::Mem) {
    const ArModel model = burg_fit(series, config.mem_order);
    spectrum = ar_psd(model, kMemGridPoints, kMemGridLow);
    out << "# method=mem\n# n_samples=" << series.size() << "\n# order=" << model.order
        << "\n# noise_var=" << format_double(model.noise_var) << "\n# coeffs=";
    for (std::size_t k = 0; k < model.coeffs.size(); ++k)
      out << (k ? "," : "") << format_double(model.coeffs[k]);
    out << '\n';
  } else {
    const std::size_t segment = config.welch_segment.value_or(default_welch_segment(series.size()));
    spectrum = welch_psd(series, segment, kWelchOverlap, Window::Hann);
    const auto& e = spectrum.estimator;
    out << "# method=welch\n# n_samples=" << e.n_samples << "\n# segment_len=" << e.segment_len
        << "\n# n_segments=" << e.n_segments << "\n# overlap=" << format_double(e.overlap_fraction)
        << "\n# window=" << to_string(e.window) << '\n';
  }
  out << "f,P\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    out << format_double(spectrum.freqs[i]) << ',' << format_double(spectrum.power[i]) << '\n';
}

void cmd_fit(const RunConfig& config, std::ostream& out) { out << to_json(run_fit(config)) << '\n'; }

void cmd_reconstruct(const RunConfig& config, std::ostream& out) {
  validate(config);
  const ZetaZeros zeros = load_zeros(*config.zeros_path);
  const std::size_t count = config.zero_count.value_or(zeros.size());
  if (count > zeros.size())
    throw DomainError("--K " + std::to_string(count) + " exceeds the " +
                      std::to_string(zeros.size()) + " zeros in " + zeros.source);
  const std::size_t n = resolved_n_samples(config);
  std::vector<double> xs(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) xs[i] = static_cast<double>(config.x_start) + 0.5 + static_cast<double>(i);
  const auto direct = fluctuation_at(xs);

  out << "# zeros=" << zeros.source << "\n# K=" << count << '\n';
  out << "x,fluc_direct,fluc_zeros,abs_err\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double recon = psi_fluc_from_zeros(xs[i], zeros, count);
    out << format_double(xs[i]) << ',' << format_double(direct[i]) << ',' << format_double(recon)
        << ',' << format_double(std::abs(recon - direct[i])) << '\n';
  }
}

void cmd_analytic(const RunConfig& config, std::ostream& out) {
  validate(config);
  const auto spectrum = analytic_spectrum(config.band_min, config.band_max, resolved_n_samples(config));
  out << "f,P_analytic\n";
  for (std::size_t i = 0; i < spectrum.freqs.size(); ++i)
    out << format_double(spectrum.freqs[i]) << ',' << format_double(spectrum.power[i]) << '\n';
}

void run(const RunConfig& config, std::ostream& fallback) {
  std::ostringstream buffer;
  std::ostream& out = config.output_path ? buffer : fallback;
  switch (config.command) {
    case Command::Sample: cmd_sample(config, out); break;
    case Command::Spectrum: cmd_spectrum(config, out); break;
    case Command::Fit: cmd_fit(config, out); break;
    case Command::Reconstruct: cmd_reconstruct(config, out); break;
    case Command::Analytic: cmd_analytic(config, out); break;
  }
  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file) throw IoError("cannot open " + config.output_path->string() + " for writing");
    file << buffer.str();
    if (!file.flush()) throw IoError("write failed for " + config.output_path->string());
  }
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const FormatError*>(&error)) return 3;
  if (dynamic_cast<const IoError*>(&error)) return 4;
  if (dynamic_cast<const DomainError*>(&error) || dynamic_cast<const ResourceError*>(&error) ||
      dynamic_cast<const DegenerateInputError*>(&error))
    return 2;
  return 1;
}

}  // namespace psifluc

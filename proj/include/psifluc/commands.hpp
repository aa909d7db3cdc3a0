#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "psifluc/powerlaw.hpp"
#include "psifluc/prime_series.hpp"
#include "psifluc/spectral.hpp"

namespace psifluc {

enum class Command { Sample, Spectrum, Fit, Reconstruct, Analytic };

/// Everything one CLI invocation needs. Unset optionals take per-command
/// defaults (see resolved_n_samples and friends).
struct RunConfig {
  Command command = Command::Sample;
  std::optional<std::size_t> n_samples;
  std::int64_t x_start = 2;
  SpectralMethod method = SpectralMethod::Mem;
  std::size_t mem_order = 1;
  std::optional<std::size_t> welch_segment;
  double band_min = kDefaultFitMin;
  double band_max = kDefaultFitMax;
  std::optional<std::filesystem::path> zeros_path;
  std::optional<std::size_t> zero_count;
  std::optional<std::filesystem::path> output_path;
  std::optional<std::uint64_t> seed;

  // Input overrides. series_path re-ingests `sample` output, spectrum_path
  // feeds an `f,P` table straight into `fit`, synthetic ("white" or
  // "ar1:COEF", needs seed) replaces psi_fluc with a seeded test signal.
  std::optional<std::filesystem::path> series_path;
  std::optional<std::filesystem::path> spectrum_path;
  std::optional<std::string> synthetic;
};

inline constexpr std::size_t kMemGridPoints = 512;
inline constexpr double kMemGridLow = 1e-4;
inline constexpr double kWelchOverlap = 0.5;

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command command);

std::size_t resolved_n_samples(const RunConfig& config);

/// Throws DomainError on an inconsistent configuration.
void validate(const RunConfig& config);

/// Doubles are written with 17 significant digits.
std::string format_double(double value);

/// Reads the `x,psi,smooth,fluc` table written by cmd_sample.
FlucSeries read_sample_csv(std::istream& in);

/// Reads an `f,P` table; '#' lines are skipped.
PowerSpectrum read_spectrum_csv(std::istream& in);

/// The mean-removed series the spectral commands analyse.
std::vector<double> analysis_input(const RunConfig& config);

PowerSpectrum estimate_spectrum(const RunConfig& config);
PowerLawFit run_fit(const RunConfig& config);

void cmd_sample(const RunConfig& config, std::ostream& out);
void cmd_spectrum(const RunConfig& config, std::ostream& out);
void cmd_fit(const RunConfig& config, std::ostream& out);
void cmd_reconstruct(const RunConfig& config, std::ostream& out);
void cmd_analytic(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command, writing to output_path or `fallback`.
void run(const RunConfig& config, std::ostream& fallback);

/// Process exit code for an exception escaping run():
/// 2 usage/domain, 3 data format, 4 I/O, 1 anything else.
int exit_code_for(const std::exception& error);

}  // namespace psifluc

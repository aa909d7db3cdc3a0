// psifluc: fluctuation of Chebyshev's psi function, its power spectrum, and
// the zeta-zero cross-check.
//
//   psifluc sample      --n 9999                  -> x,psi,smooth,fluc
//   psifluc spectrum    --n 100000 --method mem   -> f,P
//   psifluc fit         --n 100000                -> JSON power-law fit
//   psifluc reconstruct --zeros FILE --K 2000     -> x,fluc_direct,fluc_zeros,abs_err
//   psifluc analytic    --band 6.3:100            -> f,P_analytic

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "psifluc/commands.hpp"
#include "psifluc/errors.hpp"

namespace {

std::pair<double, double> parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw psifluc::DomainError("--band expects f_min:f_max");
  std::size_t used_lo = 0, used_hi = 0;
  try {
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    const double f_lo = std::stod(lo, &used_lo);
    const double f_hi = std::stod(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument(text);
    return {f_lo, f_hi};
  } catch (const std::logic_error&) {
    throw psifluc::DomainError("--band expects f_min:f_max, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of the fluctuation of Chebyshev's psi function"};
  psifluc::RunConfig config;

  std::string command;
  std::string method = "mem";
  std::string band;
  std::size_t n = 0, segment = 0, zero_count = 0;
  std::uint64_t seed = 0;
  std::string zeros, out, series, spectrum, synthetic;

  app.add_option("command", command, "sample | spectrum | fit | reconstruct | analytic")->required();
  auto* n_opt = app.add_option("--n", n, "number of samples (frequency points for analytic)");
  app.add_option("--x-start", config.x_start, "first grid abscissa (default 2)");
  app.add_option("--method", method, "spectral estimator: mem | welch")
      ->check(CLI::IsMember({"mem", "welch"}));
  app.add_option("--order", config.mem_order, "MEM pole count (default 1)");
  auto* seg_opt = app.add_option("--segment", segment, "Welch segment length (power of two)");
  auto* band_opt = app.add_option("--band", band, "frequency band f_min:f_max (default 0.001:0.1)");
  auto* zeros_opt = app.add_option("--zeros", zeros, "zeta zero ordinate table");
  auto* k_opt = app.add_option("--K", zero_count, "number of zeros to sum (default: all)");
  auto* out_opt = app.add_option("--out", out, "output file (default stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "seed for synthetic input");
  auto* series_opt = app.add_option("--series", series, "re-ingest a table written by `sample`");
  auto* spectrum_opt = app.add_option("--spectrum", spectrum, "fit a precomputed f,P table");
  auto* synth_opt = app.add_option("--synthetic", synthetic, "seeded test signal: white | ar1:COEF");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto cmd = psifluc::parse_command(command);
    if (!cmd) throw psifluc::DomainError("unknown command '" + command + "'");
    config.command = *cmd;
    config.method = method == "welch" ? psifluc::SpectralMethod::Welch : psifluc::SpectralMethod::Mem;
    if (*n_opt) config.n_samples = n;
    if (*seg_opt) config.welch_segment = segment;
    if (*band_opt) std::tie(config.band_min, config.band_max) = parse_band(band);
    if (*zeros_opt) config.zeros_path = zeros;
    if (*k_opt) config.zero_count = zero_count;
    if (*out_opt) config.output_path = out;
    if (*seed_opt) config.seed = seed;
    if (*series_opt) config.series_path = series;
    if (*spectrum_opt) config.spectrum_path = spectrum;
    if (*synth_opt) config.synthetic = synthetic;

    psifluc::run(config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "psifluc: " << e.what() << '\n';
    return psifluc::exit_code_for(e);
  }
  return 0;
}

#include "psifluc/zeta_explicit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "psifluc/compensated_sum.hpp"
#include "psifluc/errors.hpp"
#include "psifluc/spectral.hpp"

namespace psifluc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ZetaZeros parse_zeros(std::istream& in, std::string source) {
  ZetaZeros zeros;
  zeros.source = std::move(source);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    double t = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(t))
      throw FormatError("not a decimal ordinate: '" + std::string(text) + "'", line);
    if (t <= 0.0) throw FormatError("ordinate must be positive", line);
    if (zeros.ordinates.empty() && t <= 14.0)
      throw FormatError("first ordinate must exceed 14", line);
    if (!zeros.ordinates.empty() && t <= zeros.ordinates.back())
      throw FormatError("ordinates must be strictly ascending", line);
    zeros.ordinates.push_back(t);
  }
  if (in.bad()) throw IoError("read failure in " + zeros.source);
  if (zeros.ordinates.empty()) throw FormatError("no ordinates in " + zeros.source);
  return zeros;
}

ZetaZeros load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open zeros file " + path.string());
  return parse_zeros(in, path.string());
}

double psi_fluc_from_zeros(double x, const ZetaZeros& zeros, std::size_t count) {
  if (!(x >= 2.0)) throw DomainError("zero-sum reconstruction requires x >= 2");
  if (count > zeros.size())
    throw DomainError("requested " + std::to_string(count) + " zeros, table holds " +
                      std::to_string(zeros.size()));
  const double log_x = std::log(x);
  CompensatedSum sum;
  for (std::size_t k = count; k-- > 0;) {
    const double t = zeros.ordinates[k];
    const double phase = t * log_x;
    sum += (0.5 * std::cos(phase) + t * std::sin(phase)) / (0.25 + t * t);
  }
  return -2.0 * std::sqrt(x) * sum.value();
}

double zero_density_avg(double t) {
  if (!(t > 0.0)) throw DomainError("zero density requires t > 0");
  return std::log(t / kTwoPi) / kTwoPi;
}

double zero_count_avg(double t) {
  if (!(t > 0.0)) throw DomainError("zero count requires t > 0");
  const double u = t / kTwoPi;
  return u * std::log(u) - u + 1.0;
}

double analytic_fourier_mag(double f) {
  if (!(f >= kTwoPi)) throw DomainError("analytic transform magnitude requires f >= 2 pi");
  return std::log(f / kTwoPi) / std::sqrt(0.25 + f * f);
}

double analytic_psd(double f) {
  if (!(f > 0.0)) throw DomainError("analytic spectrum requires f > 0");
  const double l = std::log(f / kTwoPi);
  return 2.0 * l * l / (f * f);
}

double analytic_psd_slope(double f) {
  if (!(f > 0.0) || f == kTwoPi) throw DomainError("slope undefined at f <= 0 or f = 2 pi");
  return -2.0 + 2.0 / std::log(f / kTwoPi);
}

AnalyticSpectrum analytic_spectrum(double f_min, double f_max, std::size_t n) {
  if (!(f_min > 0.0)) throw DomainError("analytic band must lie in (0, inf)");
  AnalyticSpectrum out;
  out.freqs = log_grid(f_min, f_max, n);
  out.power.reserve(n);
  for (const double f : out.freqs) out.power.push_back(analytic_psd(f));
  return out;
}

}  // namespace psifluc

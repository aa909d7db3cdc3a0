#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace psifluc {

/// Ordinates t_k of nontrivial zeros 1/2 + i t_k, strictly ascending.
struct ZetaZeros {
  std::vector<double> ordinates;
  std::string source;

  std::size_t size() const { return ordinates.size(); }
};

/// Parses one decimal ordinate per line; blank lines and '#' comments are
/// skipped. Throws FormatError (with the 1-based line) on unparsable,
/// nonpositive or non-ascending values, a first ordinate not above 14, or
/// an input with no ordinates at all.
ZetaZeros parse_zeros(std::istream& in, std::string source = "<stream>");

/// parse_zeros on a file; IoError if it cannot be opened.
ZetaZeros load_zeros(const std::filesystem::path& path);

/// psi(x) - smooth_part(x) reconstructed from the first `count` zeros:
///
///   -2 sqrt(x) sum_k [cos(t_k ln x)/2 + t_k sin(t_k ln x)] / (1/4 + t_k^2)
///
/// which is the conjugate-pair sum -sum_rho x^rho / rho with rho = 1/2 + i t.
/// Terms are added from the highest zero down with compensated summation.
double psi_fluc_from_zeros(double x, const ZetaZeros& zeros, std::size_t count);

/// Average density of zeros at height t, ln(t / 2 pi) / (2 pi).
double zero_density_avg(double t);

/// Integral of zero_density_avg from 2 pi to t.
double zero_count_avg(double t);

/// |ln(f/2pi) / (1/2 + i f)|, the large-f magnitude of the transform of
/// the zero sum. Defined for f >= 2 pi only.
double analytic_fourier_mag(double f);

/// 2 ln^2(f / 2 pi) / f^2.
double analytic_psd(double f);

/// d ln P / d ln f of analytic_psd: -2 + 2 / ln(f / 2 pi).
double analytic_psd_slope(double f);

struct AnalyticSpectrum {
  std::vector<double> freqs;
  std::vector<double> power;
};

/// analytic_psd on n log-spaced points over [f_min, f_max].
AnalyticSpectrum analytic_spectrum(double f_min, double f_max, std::size_t n);

}  // namespace psifluc

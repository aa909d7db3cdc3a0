#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "psifluc/spectral.hpp"

namespace psifluc {

/// P(f) = amplitude * f^exponent, fitted by OLS of log10 P on log10 f.
struct PowerLawFit {
  double amplitude = 0.0;
  double exponent = 0.0;
  double f_min = 0.0;
  double f_max = 0.0;
  std::size_t n_points = 0;
  std::size_t n_excluded = 0;  // in-band points dropped for P <= 0
  double r_squared = 0.0;
  double residual_rms = 0.0;   // log10 power units

  double operator()(double f) const;

  /// Fitted power at the geometric centre of the band. Unlike `amplitude`
  /// (the line extrapolated to f = 1) this tracks the in-band level of the
  /// spectrum even when the slope changes.
  double band_level() const;
};

inline constexpr double kDefaultFitMin = 1e-3;
inline constexpr double kDefaultFitMax = 1e-1;

/// Band endpoints are inclusive. Throws DomainError unless f_min < f_max and
/// at least two distinct in-band frequencies carry positive power.
PowerLawFit fit_power_law(std::span<const double> freqs, std::span<const double> power,
                          double f_min = kDefaultFitMin, double f_max = kDefaultFitMax);

inline PowerLawFit fit_power_law(const PowerSpectrum& spectrum, double f_min = kDefaultFitMin,
                                 double f_max = kDefaultFitMax) {
  return fit_power_law(spectrum.freqs, spectrum.power, f_min, f_max);
}

/// Mean of log10 P - log10 fit(f) over positive-power points with f in [f_lo, f_hi].
double mean_log_residual(const PowerLawFit& fit, const PowerSpectrum& spectrum, double f_lo,
                         double f_hi);

/// {"a","b","f_min","f_max","n_points","r_squared","residual_rms","n_excluded"}
std::string to_json(const PowerLawFit& fit);

}  // namespace psifluc

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace psifluc {

enum class SpectralMethod { Mem, Welch };
enum class Window { Rectangular, Hann };

const char* to_string(SpectralMethod method);
const char* to_string(Window window);

/// How a PowerSpectrum was produced. Fields that do not apply are zero.
struct EstimatorInfo {
  SpectralMethod method = SpectralMethod::Mem;
  std::size_t n_samples = 0;
  std::size_t order = 0;           // MEM
  std::size_t segment_len = 0;     // Welch
  std::size_t n_segments = 0;      // Welch
  double overlap_fraction = 0.0;   // Welch
  Window window = Window::Rectangular;
};

/// One-sided power spectral density: power per unit frequency, with negative
/// frequencies folded in, so that integrating over [0, nyquist] gives the
/// variance of the input.
struct PowerSpectrum {
  std::vector<double> freqs;
  std::vector<double> power;
  double nyquist = 0.5;
  EstimatorInfo estimator;

  std::size_t size() const { return freqs.size(); }
};

/// All-pole model x_t + a_1 x_{t-1} + ... + a_p x_{t-p} = e_t, Var(e) = noise_var.
struct ArModel {
  std::size_t order = 0;
  std::vector<double> coeffs;       // a_1..a_p
  std::vector<double> reflection;   // Burg reflection coefficients k_1..k_p
  double noise_var = 0.0;
  double dx = 1.0;
  std::size_t n_samples = 0;
};

/// Subtracts the compensated sample mean.
std::vector<double> remove_mean(std::span<const double> series);

/// Burg's maximum-entropy recursion. The input is expected to be zero-mean.
///
/// Each stage picks the reflection coefficient minimizing the summed forward
/// and backward prediction error power, which keeps |k_m| <= 1. Throws
/// DomainError if order == 0 or order >= series.size(), and
/// DegenerateInputError for zero-variance input.
ArModel burg_fit(std::span<const double> series, std::size_t order, double dx = 1.0);

/// Evaluates 2 noise_var dx / |1 + sum_k a_k exp(-i 2 pi k f dx)|^2 at `freqs`.
std::vector<double> ar_psd_at(const ArModel& model, std::span<const double> freqs);

/// ar_psd_at on n_freq log-spaced points from f_lo to the Nyquist frequency.
PowerSpectrum ar_psd(const ArModel& model, std::size_t n_freq = 512, double f_lo = 1e-4);

/// Largest power of two <= n / 8 (at least 2).
std::size_t default_welch_segment(std::size_t n);

/// Welch's averaged modified periodogram on bins k / (segment_len dx),
/// k = 0..segment_len/2. Segments are windowed, FFT'd, normalized by the
/// window power, and averaged in order.
PowerSpectrum welch_psd(std::span<const double> series, std::size_t segment_len,
                        double overlap_fraction = 0.5, Window window = Window::Hann,
                        double dx = 1.0);

/// Log-spaced grid with exact endpoints.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace psifluc

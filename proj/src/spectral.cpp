#include "psifluc/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>

#include "psifluc/compensated_sum.hpp"
#include "psifluc/errors.hpp"

namespace psifluc {

const char* to_string(SpectralMethod method) {
  return method == SpectralMethod::Mem ? "mem" : "welch";
}

const char* to_string(Window window) {
  return window == Window::Hann ? "hann" : "rectangular";
}

std::vector<double> remove_mean(std::span<const double> series) {
  if (series.empty()) throw DomainError("remove_mean requires a non-empty series");
  CompensatedSum total;
  for (const double v : series) total += v;
  const double mean = total.value() / static_cast<double>(series.size());
  std::vector<double> out(series.begin(), series.end());
  for (double& v : out) v -= mean;
  return out;
}

ArModel burg_fit(std::span<const double> series, std::size_t order, double dx) {
  const std::size_t n = series.size();
  if (order == 0) throw DomainError("AR order must be at least 1");
  if (order >= n) throw DomainError("AR order must be smaller than the series length");
  if (!(dx > 0.0)) throw DomainError("grid step must be positive");
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  if (*lo == *hi) throw DegenerateInputError("Burg fit of a constant series");

  CompensatedSum power;
  for (const double v : series) power += v * v;

  ArModel model;
  model.order = order;
  model.dx = dx;
  model.n_samples = n;
  model.noise_var = power.value() / static_cast<double>(n);

  // fwd[j] holds the forward error at time j + m, bwd[j] the backward error
  // at time j + m - 1, for the current stage m.
  std::vector<double> fwd(series.begin() + 1, series.end());
  std::vector<double> bwd(series.begin(), series.end() - 1);
  std::vector<double> a;  // a_1..a_m
  a.reserve(order);

  for (std::size_t m = 1; m <= order; ++m) {
    CompensatedSum num, den;
    for (std::size_t j = 0; j < fwd.size(); ++j) {
      num += fwd[j] * bwd[j];
      den += fwd[j] * fwd[j] + bwd[j] * bwd[j];
    }
    if (!(den.value() > 0.0)) throw DegenerateInputError("Burg recursion ran out of signal power");
    const double k = std::clamp(-2.0 * num.value() / den.value(), -1.0, 1.0);

    std::vector<double> next(m);
    for (std::size_t i = 0; i + 1 < m; ++i) next[i] = a[i] + k * a[m - 2 - i];
    next[m - 1] = k;
    a = std::move(next);
    model.reflection.push_back(k);
    model.noise_var *= (1.0 - k * k);

    if (m == order) break;
    const std::size_t len = fwd.size() - 1;
    std::vector<double> f2(len), b2(len);
    for (std::size_t j = 0; j < len; ++j) {
      f2[j] = fwd[j + 1] + k * bwd[j + 1];
      b2[j] = bwd[j] + k * fwd[j];
    }
    fwd = std::move(f2);
    bwd = std::move(b2);
  }
  model.coeffs = std::move(a);
  return model;
}

std::vector<double> ar_psd_at(const ArModel& model, std::span<const double> freqs) {
  std::vector<double> out(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double omega = 2.0 * std::numbers::pi * freqs[i] * model.dx;
    std::complex<double> denom = 1.0;
    for (std::size_t k = 0; k < model.coeffs.size(); ++k)
      denom += model.coeffs[k] * std::polar(1.0, -omega * static_cast<double>(k + 1));
    out[i] = 2.0 * model.noise_var * model.dx / std::norm(denom);
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("log grid needs at least 2 points");
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log grid needs 0 < lo < hi");
  std::vector<double> grid(n);
  const double l0 = std::log(lo), step = (std::log(hi) - l0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = std::exp(l0 + step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

PowerSpectrum ar_psd(const ArModel& model, std::size_t n_freq, double f_lo) {
  PowerSpectrum out;
  out.nyquist = 0.5 / model.dx;
  if (!(f_lo > 0.0 && f_lo < out.nyquist)) throw DomainError("f_lo must lie in (0, nyquist)");
  out.freqs = log_grid(f_lo, out.nyquist, n_freq);
  out.power = ar_psd_at(model, out.freqs);
  out.estimator.method = SpectralMethod::Mem;
  out.estimator.order = model.order;
  out.estimator.n_samples = model.n_samples;
  return out;
}

std::size_t default_welch_segment(std::size_t n) {
  std::size_t seg = 2;
  while (seg * 2 <= n / 8) seg *= 2;
  return seg;
}

namespace {

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanDeleter {
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

std::vector<double> make_window(Window window, std::size_t len) {
  std::vector<double> w(len, 1.0);
  if (window == Window::Hann && len > 1)
    for (std::size_t i = 0; i < len; ++i)
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                   static_cast<double>(len - 1)));
  return w;
}

}  // namespace

PowerSpectrum welch_psd(std::span<const double> series, std::size_t segment_len,
                        double overlap_fraction, Window window, double dx) {
  const std::size_t n = series.size();
  if (segment_len < 2 || (segment_len & (segment_len - 1)) != 0)
    throw DomainError("Welch segment length must be a power of two >= 2");
  if (segment_len > n) throw DomainError("Welch segment length exceeds series length");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw DomainError("overlap fraction must lie in [0, 1)");
  if (!(dx > 0.0)) throw DomainError("grid step must be positive");

  const std::size_t step = std::max<std::size_t>(
      1, segment_len - static_cast<std::size_t>(std::floor(overlap_fraction * segment_len)));
  const std::size_t n_segments = 1 + (n - segment_len) / step;
  const std::size_t n_bins = segment_len / 2 + 1;

  const auto w = make_window(window, segment_len);
  CompensatedSum w_power;
  for (const double v : w) w_power += v * v;
  // density scaling: |X_k|^2 / (fs * sum w^2), fs = 1/dx
  const double scale = dx / w_power.value();

  std::unique_ptr<double, FftwDeleter> in(
      static_cast<double*>(fftw_malloc(sizeof(double) * segment_len)));
  std::unique_ptr<fftw_complex, FftwDeleter> spec(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_bins)));
  // FFTW_ESTIMATE leaves the buffers untouched while planning.
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter> plan(fftw_plan_dft_r2c_1d(
      static_cast<int>(segment_len), in.get(), spec.get(), FFTW_ESTIMATE));

  std::vector<double> acc(n_bins, 0.0);
  for (std::size_t s = 0; s < n_segments; ++s) {
    const double* seg = series.data() + s * step;
    for (std::size_t i = 0; i < segment_len; ++i) in.get()[i] = seg[i] * w[i];
    fftw_execute(plan.get());
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double re = spec.get()[k][0], im = spec.get()[k][1];
      acc[k] += re * re + im * im;
    }
  }

  PowerSpectrum out;
  out.nyquist = 0.5 / dx;
  out.freqs.resize(n_bins);
  out.power.resize(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const bool edge = (k == 0 || k == n_bins - 1);
    out.freqs[k] = static_cast<double>(k) / (static_cast<double>(segment_len) * dx);
    out.power[k] = (edge ? 1.0 : 2.0) * scale * acc[k] / static_cast<double>(n_segments);
  }
  out.estimator.method = SpectralMethod::Welch;
  out.estimator.n_samples = n;
  out.estimator.segment_len = segment_len;
  out.estimator.n_segments = n_segments;
  out.estimator.overlap_fraction = overlap_fraction;
  out.estimator.window = window;
  return out;
}

}  // namespace psifluc

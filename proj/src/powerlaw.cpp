#include "psifluc/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "psifluc/compensated_sum.hpp"
#include "psifluc/errors.hpp"

namespace psifluc {

double PowerLawFit::operator()(double f) const { return amplitude * std::pow(f, exponent); }

double PowerLawFit::band_level() const { return (*this)(std::sqrt(f_min * f_max)); }

PowerLawFit fit_power_law(std::span<const double> freqs, std::span<const double> power,
                          double f_min, double f_max) {
  if (freqs.size() != power.size()) throw DomainError("frequency and power lengths differ");
  if (!(f_min > 0.0) || !(f_min < f_max)) throw DomainError("fit band needs 0 < f_min < f_max");

  PowerLawFit fit;
  fit.f_min = f_min;
  fit.f_max = f_max;

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] < f_min || freqs[i] > f_max) continue;
    if (!(power[i] > 0.0)) {
      ++fit.n_excluded;
      continue;
    }
    lx.push_back(std::log10(freqs[i]));
    ly.push_back(std::log10(power[i]));
  }
  const std::size_t n = lx.size();
  if (n < 2) throw DomainError("fewer than 2 usable points in the fit band");

  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx.value() / static_cast<double>(n), my = sy.value() / static_cast<double>(n);
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx, dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx.value() > 0.0)) throw DomainError("fit band holds a single distinct frequency");

  const double slope = sxy.value() / sxx.value();
  const double intercept = my - slope * mx;

  CompensatedSum ss_res;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (intercept + slope * lx[i]);
    ss_res += r * r;
  }

  fit.exponent = slope;
  fit.amplitude = std::pow(10.0, intercept);
  fit.n_points = n;
  fit.residual_rms = std::sqrt(ss_res.value() / static_cast<double>(n));
  if (syy.value() > 0.0)
    fit.r_squared = std::clamp(1.0 - ss_res.value() / syy.value(), 0.0, 1.0);
  else
    fit.r_squared = 1.0;  // flat data, reproduced exactly by slope 0
  return fit;
}

double mean_log_residual(const PowerLawFit& fit, const PowerSpectrum& spectrum, double f_lo,
                         double f_hi) {
  CompensatedSum total;
  std::size_t count = 0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double f = spectrum.freqs[i];
    if (f < f_lo || f > f_hi || !(spectrum.power[i] > 0.0)) continue;
    total += std::log10(spectrum.power[i]) - std::log10(fit(f));
    ++count;
  }
  if (count == 0) throw DomainError("no positive-power points in the residual band");
  return total.value() / static_cast<double>(count);
}

std::string to_json(const PowerLawFit& fit) {
  nlohmann::ordered_json j;
  j["a"] = fit.amplitude;
  j["b"] = fit.exponent;
  j["f_min"] = fit.f_min;
  j["f_max"] = fit.f_max;
  j["n_points"] = fit.n_points;
  j["r_squared"] = fit.r_squared;
  j["residual_rms"] = fit.residual_rms;
  j["n_excluded"] = fit.n_excluded;
  return j.dump();
}

}  // namespace psifluc

#include "psifluc/prime_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "psifluc/compensated_sum.hpp"
#include "psifluc/errors.hpp"

namespace psifluc {

namespace detail {

std::vector<std::int64_t> small_primes(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return primes;
}

// base_primes must contain every prime <= sqrt(hi).
void sieve_segment(std::int64_t lo, std::int64_t hi, std::span<const std::int64_t> base_primes,
                   std::vector<double>& lambda) {
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<char> composite(len, 0);
  for (const std::int64_t p : base_primes) {
    if (p * p > hi) break;
    std::int64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::int64_t m = start; m <= hi; m += p) composite[static_cast<std::size_t>(m - lo)] = 1;
  }
  lambda.assign(len, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    const std::int64_t m = lo + static_cast<std::int64_t>(i);
    if (m >= 2 && !composite[i]) lambda[i] = std::log(static_cast<double>(m));
  }
  // Higher powers p^k, k >= 2, were marked composite above.
  for (const std::int64_t p : base_primes) {
    if (p * p > hi) break;
    const double log_p = std::log(static_cast<double>(p));
    for (std::int64_t q = p * p;; q *= p) {
      if (q >= lo) lambda[static_cast<std::size_t>(q - lo)] = log_p;
      if (q > hi / p) break;
    }
  }
}

}  // namespace detail

namespace {

void check_limit(std::int64_t limit) {
  if (limit > kMaxSieveLimit)
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds " +
                        std::to_string(kMaxSieveLimit));
}

std::int64_t grid_end(std::int64_t x_start, std::size_t n) {
  if (n == 0) throw DomainError("series length must be at least 1");
  if (n - 1 > static_cast<std::size_t>(std::numeric_limits<std::int64_t>::max() - x_start))
    throw ResourceError("grid end overflows a 64-bit integer");
  const std::int64_t end = x_start + static_cast<std::int64_t>(n - 1);
  check_limit(end);
  return end;
}

}  // namespace

std::vector<double> sieve_prime_power_logs(std::int64_t limit) {
  if (limit < 2) throw DomainError("sieve limit must be at least 2");
  check_limit(limit);
  std::vector<double> lambda(static_cast<std::size_t>(limit) + 1, 0.0);
  for_each_prime_power(2, limit, [&](std::int64_t m, double v) {
    lambda[static_cast<std::size_t>(m)] = v;
  });
  return lambda;
}

PsiSeries psi_series(std::int64_t x_start, std::size_t n) {
  if (x_start < 1) throw DomainError("psi grid must start at x >= 1");
  const std::int64_t x_end = grid_end(x_start, n);

  PsiSeries out;
  out.x_start = x_start;
  out.values.resize(n);

  CompensatedSum below;  // sum of Lambda(m) over m < cursor
  std::int64_t cursor = x_start;
  auto fill_until = [&](std::int64_t stop) {  // fills grid points in [cursor, stop)
    const double s = below.value();
    for (; cursor < stop; ++cursor) out.values[static_cast<std::size_t>(cursor - x_start)] = s;
  };

  for_each_prime_power(2, x_end, [&](std::int64_t m, double v) {
    if (m >= x_start) {
      fill_until(m);
      out.values[static_cast<std::size_t>(m - x_start)] = below.value() + 0.5 * v;
      cursor = m + 1;
    }
    below += v;
  });
  fill_until(x_end + 1);
  return out;
}

std::vector<double> psi_at(std::span<const double> xs) {
  std::vector<double> out(xs.size(), 0.0);
  if (xs.empty()) return out;
  for (const double x : xs)
    if (!(x >= 1.0)) throw DomainError("psi_at requires x >= 1");
  const double x_max = *std::max_element(xs.begin(), xs.end());
  if (!(x_max <= static_cast<double>(kMaxSieveLimit))) check_limit(kMaxSieveLimit + 1);

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });

  CompensatedSum below;
  std::size_t next = 0;
  for_each_prime_power(2, static_cast<std::int64_t>(std::floor(x_max)), [&](std::int64_t m, double v) {
    const auto md = static_cast<double>(m);
    for (; next < order.size() && xs[order[next]] < md; ++next) out[order[next]] = below.value();
    for (; next < order.size() && xs[order[next]] == md; ++next)
      out[order[next]] = below.value() + 0.5 * v;
    below += v;
  });
  for (; next < order.size(); ++next) out[order[next]] = below.value();
  return out;
}

double smooth_part(double x) {
  if (!(x > 1.0)) throw DomainError("smooth part requires x > 1");
  // sum_{n>=1} x^{-2n}/(2n) = -ln(1 - x^{-2}) / 2
  return x - 0.5 * std::log1p(-1.0 / (x * x)) - std::log(2.0 * std::numbers::pi);
}

FlucSeries fluctuation_series(std::int64_t x_start, std::size_t n) {
  if (x_start < 2) throw DomainError("fluctuation grid must start at x >= 2");
  const PsiSeries psi = psi_series(x_start, n);
  FlucSeries out;
  out.x_start = x_start;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.values[i] = psi.values[i] - smooth_part(static_cast<double>(psi.x(i)));
  return out;
}

std::vector<double> fluctuation_at(std::span<const double> xs) {
  for (const double x : xs)
    if (!(x >= 2.0)) throw DomainError("fluctuation requires x >= 2");
  auto out = psi_at(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] -= smooth_part(xs[i]);
  return out;
}

}  // namespace psifluc

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace psifluc {

/// Largest integer the segmented sieve accepts as an upper limit.
inline constexpr std::int64_t kMaxSieveLimit = 100'000'000'000;

/// Chebyshev psi sampled at x_start, x_start + 1, ...; jumps take the midpoint.
struct PsiSeries {
  std::int64_t x_start = 1;
  std::int64_t dx = 1;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::int64_t x(std::size_t i) const { return x_start + static_cast<std::int64_t>(i) * dx; }
};

/// psi(x) - smooth_part(x) on an integer grid starting at x >= 2.
struct FlucSeries {
  std::int64_t x_start = 2;
  std::int64_t dx = 1;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::int64_t x(std::size_t i) const { return x_start + static_cast<std::int64_t>(i) * dx; }
};

/// von Mangoldt table indexed by m for m in [0, limit]; entries 0 and 1 are 0.
/// Throws DomainError for limit < 2, ResourceError above kMaxSieveLimit.
std::vector<double> sieve_prime_power_logs(std::int64_t limit);

/// Calls `visit(m, log p)` for every prime power m = p^k in [lo, hi], in
/// ascending order of m. Memory is O(sqrt(hi) + segment).
template <typename Visitor>
void for_each_prime_power(std::int64_t lo, std::int64_t hi, Visitor&& visit);

PsiSeries psi_series(std::int64_t x_start, std::size_t n);

/// psi at arbitrary real points x >= 1. Integer points use the half-jump
/// convention; a single sieve covers all points.
std::vector<double> psi_at(std::span<const double> xs);

/// x + sum_n x^{-2n}/(2n) - ln(2 pi), the trivial-zero series in closed form.
double smooth_part(double x);

FlucSeries fluctuation_series(std::int64_t x_start, std::size_t n);
inline FlucSeries fluctuation_series(std::size_t n) { return fluctuation_series(2, n); }

/// psi(x) - smooth_part(x) at arbitrary real x >= 2.
std::vector<double> fluctuation_at(std::span<const double> xs);

namespace detail {
std::vector<std::int64_t> small_primes(std::int64_t limit);
void sieve_segment(std::int64_t lo, std::int64_t hi, std::span<const std::int64_t> base_primes,
                   std::vector<double>& lambda);
}  // namespace detail

template <typename Visitor>
void for_each_prime_power(std::int64_t lo, std::int64_t hi, Visitor&& visit) {
  constexpr std::int64_t kSegment = std::int64_t{1} << 18;
  if (lo < 2) lo = 2;
  if (hi < lo) return;
  std::int64_t root = 1;
  while ((root + 1) * (root + 1) <= hi) ++root;
  const auto base = detail::small_primes(root);
  std::vector<double> lambda;
  for (std::int64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
    const std::int64_t seg_hi = seg_lo + kSegment - 1 < hi ? seg_lo + kSegment - 1 : hi;
    detail::sieve_segment(seg_lo, seg_hi, base, lambda);
    for (std::int64_t m = seg_lo; m <= seg_hi; ++m) {
      const double v = lambda[static_cast<std::size_t>(m - seg_lo)];
      if (v != 0.0) visit(m, v);
    }
  }
}

}  // namespace psifluc

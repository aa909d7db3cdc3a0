#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psifluc/errors.hpp"
#include "psifluc/prime_series.hpp"

using namespace psifluc;

TEST_CASE("von Mangoldt table for small limits") {
  const auto lambda = sieve_prime_power_logs(10);
  REQUIRE(lambda.size() == 11);
  for (int m : {2, 3, 4, 5, 7, 8, 9}) CHECK(lambda[m] > 0.0);
  for (int m : {0, 1, 6, 10}) CHECK(lambda[m] == 0.0);
  CHECK(lambda[8] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(lambda[9] == doctest::Approx(std::log(3.0)).epsilon(1e-15));

  const auto two = sieve_prime_power_logs(2);
  CHECK(two[2] == doctest::Approx(std::log(2.0)));

  CHECK_THROWS_AS(sieve_prime_power_logs(1), DomainError);
  CHECK_THROWS_AS(sieve_prime_power_logs(kMaxSieveLimit + 1), ResourceError);
}

TEST_CASE("von Mangoldt sum to 10^4 matches prime-power enumeration") {
  const auto primes = oracle::primes_upto(10'000);
  long double expected = 0.0L;
  for (auto p : primes)
    for (std::int64_t q = p; q <= 10'000; q *= p) expected += std::log(static_cast<long double>(p));

  const auto lambda = sieve_prime_power_logs(10'000);
  long double total = 0.0L;
  for (double v : lambda) total += v;
  CHECK(static_cast<double>(total) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));
  CHECK(static_cast<double>(expected) == doctest::Approx(10013.39).epsilon(1e-6));

  // The prime-only part theta(10^4) = sum_{p <= 10^4} ln p is the smaller 9895.99.
  double theta = 0.0;
  for (auto p : primes) theta += lambda[p];
  CHECK(theta == doctest::Approx(9895.99).epsilon(1e-6));

  for (std::int64_t m = 2; m <= 10'000; ++m) {
    std::int64_t base = 0;
    for (auto p : primes) {
      if (m % p == 0) {
        std::int64_t r = m;
        while (r % p == 0) r /= p;
        base = r == 1 ? p : 0;
        break;
      }
    }
    const double want = base ? std::log(static_cast<double>(base)) : 0.0;
    if (lambda[m] != doctest::Approx(want)) FAIL("Lambda(" << m << ") = " << lambda[m]);
  }
}

TEST_CASE("worked examples of psi") {
  const auto psi = psi_series(1, 12);
  CHECK(psi.values[0] == 0.0);
  CHECK(psi.values[1] == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(psi.values[9] - std::log(2520.0)) < 1e-12);
  CHECK(std::abs(psi.values[11] - std::log(27720.0)) < 1e-12);
  CHECK(std::abs(psi.values[10] - 0.5 * (psi.values[9] + psi.values[11])) < 1e-12);
  CHECK(psi.x(9) == 10);
}

TEST_CASE("psi_series agrees with the double loop for all x <= 10^4") {
  const auto primes = oracle::primes_upto(10'000);
  const auto psi = psi_series(1, 10'000);
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    worst = std::max(worst, std::abs(psi.values[i] - oracle::psi_direct(psi.x(i), primes)));
  CHECK(worst < 1e-10);
}

TEST_CASE("segment boundaries and offsets do not change values") {
  // 2^18 is the sieve segment length; straddle it and an offset start.
  const std::int64_t lo = (std::int64_t{1} << 18) - 40;
  const auto primes = oracle::primes_upto(lo + 100);
  const auto psi = psi_series(lo, 80);
  for (std::size_t i = 0; i < psi.size(); ++i)
    CHECK(psi.values[i] == doctest::Approx(oracle::psi_direct(psi.x(i), primes)).epsilon(1e-13));

  const auto whole = psi_series(1, 5000);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto start = std::uniform_int_distribution<std::int64_t>(1, 4000)(rng);
    const auto n = std::uniform_int_distribution<std::size_t>(1, 1000)(rng);
    const auto part = psi_series(start, n);
    for (std::size_t i = 0; i < n; ++i)
      REQUIRE(std::abs(part.values[i] - whole.values[static_cast<std::size_t>(start - 1) + i]) <
              1e-10);
  }
}

TEST_CASE("psi invariants: monotone, half jumps, PNT") {
  const std::int64_t n = 10'000;
  const auto psi = psi_series(1, static_cast<std::size_t>(n));
  const auto lambda = sieve_prime_power_logs(n + 1);
  for (std::size_t i = 1; i < psi.size(); ++i) REQUIRE(psi.values[i] >= psi.values[i - 1]);
  for (std::int64_t q = 2; q < n; ++q) {
    if (lambda[q] == 0.0) continue;
    // psi(q) is the midpoint of psi(q-) = psi(q-1) + Lambda(q-1)/2 and psi(q+) = psi(q-) + Lambda(q).
    const double left_limit = psi.values[q - 2] + 0.5 * lambda[q - 1];
    const double right_limit = left_limit + lambda[q];
    REQUIRE(psi.values[q - 1] == doctest::Approx(0.5 * (left_limit + right_limit)).epsilon(1e-13));
    REQUIRE(psi.values[q] - psi.values[q - 1] >= 0.5 * lambda[q] - 1e-14 * psi.values[q]);
  }
  CHECK(std::abs(psi.values.back() / static_cast<double>(n) - 1.0) < 0.03);
  CHECK(psi.values.back() / static_cast<double>(n) - 1.0 == doctest::Approx(0.001339).epsilon(1e-3));
}

TEST_CASE("psi_at handles integers and half-integers") {
  const std::vector<double> xs{10.5, 11.0, 1.0, 2.0, 12.0, 10.0, 2.5};
  const auto v = psi_at(xs);
  CHECK(v[0] == doctest::Approx(std::log(2520.0)));
  CHECK(v[1] == doctest::Approx(0.5 * (std::log(2520.0) + std::log(27720.0))));
  CHECK(v[2] == 0.0);
  CHECK(v[3] == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(v[4] == doctest::Approx(std::log(27720.0)));
  CHECK(v[5] == doctest::Approx(std::log(2520.0)));
  CHECK(v[6] == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(psi_at(std::vector<double>{0.5}), DomainError);
}

TEST_CASE("smooth part: closed form against the truncated series") {
  CHECK(smooth_part(2.0) == doctest::Approx(oracle::smooth_series(2.0)).epsilon(1e-14));
  CHECK(smooth_part(2.0) == doctest::Approx(0.3059639).epsilon(1e-7));
  CHECK(smooth_part(10.0) == doctest::Approx(8.1671481015).epsilon(1e-11));
  double worst = 0.0;
  for (int x = 2; x <= 1000; ++x)
    worst = std::max(worst, std::abs(smooth_part(x) - oracle::smooth_series(x)));
  CHECK(worst < 1e-12);
  const double tail = smooth_part(1000.0) - (1000.0 - std::log(2.0 * std::numbers::pi));
  CHECK(tail == doctest::Approx(5e-7).epsilon(1e-3));
  CHECK_THROWS_AS(smooth_part(1.0), DomainError);
  CHECK_THROWS_AS(smooth_part(0.3), DomainError);
}

TEST_CASE("fluctuation series") {
  const auto fluc = fluctuation_series(9999);
  REQUIRE(fluc.size() == 9999);
  CHECK(fluc.x_start == 2);
  CHECK(fluc.values[0] == doctest::Approx(0.5 * std::log(2.0) - oracle::smooth_series(2.0)));
  CHECK(fluc.values[0] == doctest::Approx(0.0406).epsilon(1e-3));
  CHECK(fluc.values[8] == doctest::Approx(-0.3351).epsilon(1e-3));
  // |psi(x) - x| < sqrt(x) ln^2(x) / (8 pi) for x >= 73.2 (Schoenfeld, under RH;
  // verified numerically far beyond 10^4). The smooth part differs from x by < 2.
  double peak = 0.0, sum = 0.0;
  int sign_changes = 0;
  for (std::size_t i = 0; i < fluc.size(); ++i) {
    const double x = static_cast<double>(fluc.x(i));
    const double bound = x >= 74 ? std::sqrt(x) * std::pow(std::log(x), 2) / (8 * std::numbers::pi) + 2 : 4.0;
    REQUIRE(std::abs(fluc.values[i]) < bound);
    peak = std::max(peak, std::abs(fluc.values[i]));
    sum += fluc.values[i];
    if (i && (fluc.values[i] > 0) != (fluc.values[i - 1] > 0)) ++sign_changes;
  }
  CHECK(peak < 60.0);
  CHECK(fluc.values.back() == doctest::Approx(10013.39 - 10000 + std::log(2 * std::numbers::pi)).epsilon(1e-3));
  CHECK(sign_changes > 10);  // oscillates about zero
  CHECK(std::abs(sum / fluc.size()) < peak);

  const auto shifted = fluctuation_series(100, 10);
  CHECK(shifted.values[0] == doctest::Approx(fluc.values[98]).epsilon(1e-13));
  CHECK_THROWS_AS(fluctuation_series(1, 5), DomainError);
  CHECK_THROWS_AS(fluctuation_series(2, 0), DomainError);
}

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/summation.hpp"

namespace mtoeplitz {

inline constexpr double kDefaultZetaTolerance = 1e-10;

namespace detail {

// B_{2k} / (2k)! for k = 1..10.
inline constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

struct TailEstimate {
  double value;
  double last_term;  // magnitude of the final Euler-Maclaurin correction
};

// sum_{n >= N} n^{-s} by Euler-Maclaurin at the point N (N >= 1).
inline TailEstimate euler_maclaurin_from(double s, double N) {
  CompensatedSum sum;
  sum.add(std::pow(N, 1.0 - s) / (s - 1.0));
  sum.add(0.5 * std::pow(N, -s));
  double rising = s;  // s (s+1) ... (s + 2k - 2)
  double power = std::pow(N, -s - 1.0);
  double last = 0.0;
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    const double term = kBernoulliOverFactorial[k] * rising * power;
    sum.add(term);
    last = std::abs(term);
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    rising *= (s + j) * (s + j + 1.0);
    power /= N * N;
  }
  return {sum.value(), last};
}

}  // namespace detail

/// sum_{n > M} n^{-s} for s > 1 and integer M >= 0. The first few terms are
/// summed directly; the remainder is evaluated analytically.
inline double power_tail(double s, std::uint64_t M, double tol = kDefaultZetaTolerance) {
  if (!(s > 1.0)) throw PreconditionFailed("power_tail: exponent must exceed 1");
  std::uint64_t start = std::max<std::uint64_t>(
      M + 1, static_cast<std::uint64_t>(std::ceil(std::max(10.0, s))));
  while (true) {
    CompensatedSum direct;
    for (std::uint64_t n = M + 1; n < start; ++n) direct.add(std::pow(static_cast<double>(n), -s));
    const auto tail = detail::euler_maclaurin_from(s, static_cast<double>(start));
    const double total = direct.value() + tail.value;
    if (tail.last_term <= tol * total * 1e-3 || start > (std::uint64_t{1} << 40)) return total;
    start *= 2;
  }
}

/// Riemann zeta for real s > 1 to relative tolerance `tol`.
inline double zeta(double s, double tol = kDefaultZetaTolerance) {
  if (!(s > 1.0)) throw PreconditionFailed("zeta: s must exceed 1 (pole at s = 1)");
  return power_tail(s, 0, tol);
}

/// prod_{t <= P} (1 - t^{-s})^{-1} over the given primes.
inline double zeta_euler_product(double s, std::span<const std::uint64_t> primes) {
  double log_sum = 0.0;
  CompensatedSum acc;
  for (std::uint64_t t : primes) acc.add(-std::log1p(-std::pow(static_cast<double>(t), -s)));
  log_sum = acc.value();
  return std::exp(log_sum);
}

}  // namespace mtoeplitz

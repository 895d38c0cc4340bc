#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/sequence.hpp"
#include "mtoeplitz/summation.hpp"

namespace mtoeplitz {

using BigNatural = boost::multiprecision::cpp_int;

/// divisors() refuses to materialize more than this many divisors.
inline constexpr std::uint64_t kDivisorCap = std::uint64_t{1} << 24;

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

/// Primes in [2, limit], ascending (sieve of Eratosthenes).
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

namespace detail {

// Primes up to 10^6, enough for trial division of any n <= 10^12.
inline const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = sieve_primes(1'000'000);
  return primes;
}

inline bool mul_overflows(std::uint64_t a, std::uint64_t b) {
  return a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a;
}

}  // namespace detail

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t t : detail::trial_primes()) {
    if (t > n / t) return true;
    if (n % t == 0) return n == t;
  }
  for (std::uint64_t t = detail::trial_primes().back() + 2; t <= n / t; t += 2) {
    if (n % t == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Canonical factorization: primes strictly increasing, exponents >= 1.
/// The represented integer may exceed 64 bits.
class Factorization {
 public:
  Factorization() = default;

  /// Validates the canonical-form invariants; throws PreconditionFailed.
  explicit Factorization(std::vector<PrimePower> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i].exponent == 0) throw PreconditionFailed("factorization exponent must be >= 1");
      if (!is_prime(parts_[i].prime)) throw PreconditionFailed("factorization base is not prime");
      if (i > 0 && parts_[i - 1].prime >= parts_[i].prime) {
        throw PreconditionFailed("factorization primes must be strictly increasing");
      }
    }
  }

  std::span<const PrimePower> parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  const PrimePower& operator[](std::size_t i) const { return parts_[i]; }

  BigNatural value() const {
    BigNatural v = 1;
    for (const auto& pp : parts_) {
      for (std::uint32_t e = 0; e < pp.exponent; ++e) v *= pp.prime;
    }
    return v;
  }

  bool fits_u64() const {
    std::uint64_t v = 1;
    for (const auto& pp : parts_) {
      for (std::uint32_t e = 0; e < pp.exponent; ++e) {
        if (detail::mul_overflows(v, pp.prime)) return false;
        v *= pp.prime;
      }
    }
    return true;
  }

  /// Throws ResourceLimit when the value does not fit in 64 bits.
  std::uint64_t value_u64() const {
    std::uint64_t v = 1;
    for (const auto& pp : parts_) {
      for (std::uint32_t e = 0; e < pp.exponent; ++e) {
        if (detail::mul_overflows(v, pp.prime)) {
          throw ResourceLimit("integer " + value().str() + " exceeds the 64-bit range");
        }
        v *= pp.prime;
      }
    }
    return v;
  }

  /// d(n) = prod (e_i + 1), exact.
  BigNatural divisor_count() const {
    BigNatural d = 1;
    for (const auto& pp : parts_) d *= (pp.exponent + 1);
    return d;
  }

  bool operator==(const Factorization&) const = default;

 private:
  std::vector<PrimePower> parts_;
};

/// Trial division by sieved primes; intended for n up to ~10^12.
inline Factorization factorize(std::uint64_t n) {
  if (n == 0) throw PreconditionFailed("factorize: n must be >= 1");
  std::vector<PrimePower> parts;
  auto take = [&](std::uint64_t t) {
    std::uint32_t e = 0;
    while (n % t == 0) {
      n /= t;
      ++e;
    }
    if (e > 0) parts.push_back({t, e});
  };
  for (std::uint64_t t : detail::trial_primes()) {
    if (t > n / t) break;
    take(t);
  }
  if (n > 1) {
    for (std::uint64_t t = detail::trial_primes().back() + 2; t <= n / t; t += 2) take(t);
  }
  if (n > 1) parts.push_back({n, 1});
  return Factorization(std::move(parts));
}

inline std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw PreconditionFailed("divisor_count: n must be >= 1");
  std::uint64_t d = 1;
  const auto fac = factorize(n);
  for (const auto& pp : fac.parts()) d *= (pp.exponent + 1);
  return d;
}

/// Smallest-prime-factor table on 1..limit for bulk factorization.
class SmallestFactorSieve {
 public:
  explicit SmallestFactorSieve(std::uint64_t limit) : spf_(limit + 1, 0) {
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
      if (i <= limit / i) {
        for (std::uint64_t j = i * i; j <= limit; j += i) {
          if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }

  std::uint64_t limit() const noexcept { return spf_.size() - 1; }
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }
  std::uint64_t smallest_factor(std::uint64_t n) const { return spf_[n]; }

  /// Calls fn(prime, exponent) for each prime power of n, ascending.
  template <class Fn>
  void for_each_prime_power(std::uint64_t n, Fn&& fn) const {
    while (n > 1) {
      const std::uint64_t t = spf_[n];
      std::uint32_t e = 0;
      while (n % t == 0) {
        n /= t;
        ++e;
      }
      fn(t, e);
    }
  }

  Factorization factorize(std::uint64_t n) const {
    if (n == 0 || n > limit()) throw PreconditionFailed("sieve factorize: n outside 1..limit");
    std::vector<PrimePower> parts;
    for_each_prime_power(n, [&](std::uint64_t t, std::uint32_t e) { parts.push_back({t, e}); });
    return Factorization(std::move(parts));
  }

  /// d(n) for n = 1..limit (index 0 unused).
  std::vector<std::uint32_t> divisor_counts() const {
    std::vector<std::uint32_t> d(spf_.size(), 0);
    if (d.size() > 1) d[1] = 1;
    for (std::uint64_t n = 2; n < d.size(); ++n) {
      std::uint64_t m = n;
      const std::uint64_t t = spf_[n];
      std::uint32_t e = 0;
      while (m % t == 0) {
        m /= t;
        ++e;
      }
      d[n] = d[m] * (e + 1);
    }
    return d;
  }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint64_t> primes_;
};

// ---------------------------------------------------------------------------
// Divisors
// ---------------------------------------------------------------------------

/// Lazily walks the exponent lattice of `n`, calling fn(divisor, exponents)
/// for every divisor. Order is odometer order (first prime fastest), not
/// ascending. The modulus must fit in 64 bits.
template <class Fn>
void iterate_divisors(const Factorization& n, Fn&& fn) {
  n.value_u64();
  const auto parts = n.parts();
  std::vector<std::uint32_t> exps(parts.size(), 0);
  std::vector<std::uint64_t> partial(parts.size() + 1, 1);
  std::uint64_t d = 1;
  while (true) {
    fn(d, std::span<const std::uint32_t>(exps));
    std::size_t i = 0;
    for (; i < parts.size(); ++i) {
      if (exps[i] < parts[i].exponent) {
        ++exps[i];
        d *= parts[i].prime;
        break;
      }
      // reset this digit: divide out prime^exponent
      for (std::uint32_t e = 0; e < exps[i]; ++e) d /= parts[i].prime;
      exps[i] = 0;
    }
    if (i == parts.size()) return;
  }
}

inline std::vector<std::uint64_t> divisors(const Factorization& n) {
  if (n.divisor_count() > kDivisorCap) {
    throw DivisorCapExceeded("divisor count " + n.divisor_count().str() +
                             " exceeds the enumeration cap; use iterate_divisors");
  }
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(n.divisor_count()));
  iterate_divisors(n, [&](std::uint64_t d, std::span<const std::uint32_t>) { out.push_back(d); });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw PreconditionFailed("divisors: n must be >= 1");
  return divisors(factorize(n));
}

// ---------------------------------------------------------------------------
// gcd / lcm
// ---------------------------------------------------------------------------

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw PreconditionFailed("gcd: arguments must be >= 1");
  return std::gcd(a, b);
}

inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw PreconditionFailed("lcm: arguments must be >= 1");
  const std::uint64_t q = a / std::gcd(a, b);
  if (detail::mul_overflows(q, b)) throw ResourceLimit("lcm exceeds the 64-bit range");
  return q * b;
}

// ---------------------------------------------------------------------------
// Witness moduli
// ---------------------------------------------------------------------------

struct PrimorialPower {
  BigNatural value;
  Factorization factors;
};

/// c = (2*3*5*...*T)^k for prime T.
inline PrimorialPower primorial_power(std::uint64_t T, std::uint32_t k) {
  if (!is_prime(T)) throw PreconditionFailed("primorial_power: T must be prime");
  if (k == 0) throw PreconditionFailed("primorial_power: k must be >= 1");
  std::vector<PrimePower> parts;
  for (std::uint64_t t : sieve_primes(T)) parts.push_back({t, k});
  Factorization f(std::move(parts));
  return {f.value(), f};
}

/// c = prod_{t <= T} t^{a_t} with a_t = floor(log T / log t), i.e. the
/// largest a with t^a <= T (computed in integers).
inline Factorization diagonal_witness_modulus(std::uint64_t T) {
  if (!is_prime(T)) throw PreconditionFailed("diagonal_witness_modulus: T must be prime");
  std::vector<PrimePower> parts;
  for (std::uint64_t t : sieve_primes(T)) {
    std::uint32_t a = 0;
    std::uint64_t pw = 1;
    while (pw <= T / t) {
      pw *= t;
      ++a;
    }
    parts.push_back({t, a});
  }
  return Factorization(std::move(parts));
}

// ---------------------------------------------------------------------------
// Dirichlet convolution
// ---------------------------------------------------------------------------

/// c(n) = sum_{d | n} a(d) b(n/d) for n = 1..N. The outer loop runs over the
/// index of `b` ascending, so each c(n) accumulates its terms in increasing
/// order of n/d.
template <class Scalar>
Sequence<Scalar> dirichlet_convolve(const Sequence<Scalar>& a, const Sequence<Scalar>& b) {
  if (a.size() != b.size()) throw PreconditionFailed("dirichlet_convolve: length mismatch");
  const std::size_t n_max = a.size();
  using Acc = typename AccumulatorFor<Scalar>::type;
  std::vector<Acc> acc(n_max);
  for (std::uint64_t e = 1; e <= n_max; ++e) {
    const Scalar be = b(e);
    for (std::uint64_t d = 1; d * e <= n_max; ++d) acc[d * e - 1].add(a(d) * be);
  }
  Sequence<Scalar> c(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) c(n) = acc[n - 1].value();
  return c;
}

template <class Scalar>
Sequence<Scalar> dirichlet_convolve(const Sequence<Scalar>& a, const Sequence<Scalar>& b,
                                    std::size_t n_max) {
  if (a.size() < n_max || b.size() < n_max) {
    throw PreconditionFailed("dirichlet_convolve: inputs shorter than N");
  }
  return dirichlet_convolve(a.prefix(n_max), b.prefix(n_max));
}

}  // namespace mtoeplitz

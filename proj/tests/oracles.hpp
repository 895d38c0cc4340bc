#pragma once

// Naive reference implementations used only by the tests. None of them call
// into the library's number theory, summation or operator code.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_trial(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (is_prime_trial(n)) out.push_back(n);
  }
  return out;
}

inline std::vector<std::uint64_t> divisors_brute(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_trial(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    std::uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// sum_{n <= N} n^{-s} in long double, plus the integral tail bounds
/// int_{N+1}^inf x^{-s} dx <= sum_{n > N} n^{-s} <= int_N^inf x^{-s} dx.
struct ZetaBracket {
  long double lower;
  long double upper;
};

inline ZetaBracket zeta_bracket(double s, std::uint64_t N) {
  long double partial = 0;
  for (std::uint64_t n = N; n >= 1; --n) partial += std::pow(static_cast<long double>(n), -s);
  const long double lo = std::pow(static_cast<long double>(N + 1), 1 - s) / (s - 1);
  const long double hi = std::pow(static_cast<long double>(N), 1 - s) / (s - 1);
  return {partial + lo, partial + hi};
}

/// f(i/j) for the closed-form families, from first principles.
struct PowerSymbol {
  double alpha;
  double operator()(std::uint64_t i, std::uint64_t j) const {
    return i % j == 0 ? std::pow(static_cast<double>(i / j), -alpha) : 0.0;
  }
};

struct ProductPowerSymbol {
  double alpha, beta;
  double operator()(std::uint64_t i, std::uint64_t j) const {
    const std::uint64_t g = std::gcd(i, j);
    return std::pow(static_cast<double>(i / g), -alpha) * std::pow(static_cast<double>(j / g), -beta);
  }
};

struct CmSymbol {
  std::map<std::uint64_t, double> prime_values;
  double operator()(std::uint64_t i, std::uint64_t j) const {
    if (i % j != 0) return 0.0;
    double v = 1.0;
    for (const auto& [t, e] : factor_trial(i / j)) {
      const auto it = prime_values.find(t);
      const double g = it == prime_values.end() ? 0.0 : it->second;
      for (std::uint32_t k = 0; k < e; ++k) v *= g;
    }
    return v;
  }
};

/// y_i = sum_j a(i, j) x_j over a dense N x N section, long double accumulation.
template <class Entry>
std::vector<double> dense_product(const Entry& a, const std::vector<double>& x, std::size_t M) {
  std::vector<double> y(M);
  for (std::size_t i = 1; i <= M; ++i) {
    long double s = 0;
    for (std::size_t j = 1; j <= x.size(); ++j) s += static_cast<long double>(a(i, j)) * x[j - 1];
    y[i - 1] = static_cast<double>(s);
  }
  return y;
}

inline double lp_norm(const std::vector<double>& x, double p) {
  if (std::isinf(p)) {
    double m = 0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  long double s = 0;
  for (double v : x) s += std::pow(static_cast<long double>(std::abs(v)), p);
  return static_cast<double>(std::pow(s, 1.0L / p));
}

/// Largest eigenvalue of a symmetric positive semidefinite matrix by plain
/// power iteration in long double.
inline double top_eigenvalue(const std::vector<std::vector<long double>>& G, int iters = 20000) {
  const std::size_t n = G.size();
  std::vector<long double> v(n, 1.0L / std::sqrt(static_cast<long double>(n))), w(n);
  long double lambda = 0;
  for (int it = 0; it < iters; ++it) {
    long double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += G[i][j] * v[j];
      w[i] = s;
      norm += s * s;
    }
    norm = std::sqrt(norm);
    long double next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      next += v[i] * w[i];
      v[i] = w[i] / norm;
    }
    if (std::abs(next - lambda) <= 1e-16L * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return static_cast<double>(lambda);
}

}  // namespace oracle

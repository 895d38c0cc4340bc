#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/norms.hpp"
#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/operator.hpp"
#include "mtoeplitz/symbol.hpp"

namespace mtoeplitz {

/// Index set the ascent runs on. `prefix` is {1..N}; `lattice` is the
/// divisor set of a modulus c with d(c) <= N chosen for the symbol;
/// `automatic` uses the lattice for symbols that factor over primes.
enum class AscentSupport { automatic, prefix, lattice };

struct AscentOptions {
  std::size_t max_iter = 2000;
  double tol = 1e-12;
  AscentSupport support = AscentSupport::automatic;
};

struct AscentResult {
  double value = 0.0;             // ||A x||_q with ||x||_p = 1, nondecreasing in the iteration
  std::vector<double> history;    // value after each step
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<std::uint64_t> indices;
  std::vector<double> x;          // final iterate on `indices`
  std::uint64_t modulus = 0;      // c for lattice support, 0 for prefix
  std::vector<std::uint32_t> exponents;  // exponents of c over 2, 3, 5, ...
  bool delta_start = false;       // the reported run started from e_1
};

namespace detail {

inline double normalize_p(std::vector<double>& x, double p) {
  const double n = vector_norm(x, p);
  if (n > 0.0) {
    for (double& v : x) v /= n;
  }
  return n;
}

// Boyd's iteration for ||B||_{p -> q} of an entrywise nonnegative operator.
template <class Apply, class ApplyT>
AscentResult boyd_iterate(Apply&& apply_op, ApplyT&& apply_t, std::vector<double> x, double p,
                          double q, std::size_t max_iter, double tol) {
  AscentResult out;
  normalize_p(x, p);
  double prev = vector_norm(apply_op(x), q);
  out.history.push_back(prev);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    auto z = apply_op(x);
    for (double& v : z) v = q == 2.0 ? v : std::pow(v, q - 1.0);
    auto w = apply_t(z);
    for (double& v : w) v = p == 2.0 ? v : std::pow(v, 1.0 / (p - 1.0));
    if (normalize_p(w, p) == 0.0) break;
    const double value = vector_norm(apply_op(w), q);
    out.iterations = it;
    if (value < prev) {
      if (value < prev * (1.0 - 1e-12)) throw std::logic_error("ascent lost monotonicity");
      // Rounding at the fixed point; keep the better iterate.
      out.converged = true;
      break;
    }
    x = std::move(w);
    out.history.push_back(value);
    const double gain = (value - prev) / value;
    prev = value;
    if (gain < tol) {
      out.converged = true;
      break;
    }
  }
  out.value = prev;
  out.x = std::move(x);
  return out;
}

inline bool factors_over_primes(const SymbolSpec& f) {
  switch (f.kind()) {
    case SymbolKind::power_on_naturals:
    case SymbolKind::product_power:
    case SymbolKind::completely_multiplicative:
    case SymbolKind::multiplicative:
      return true;
    default:
      return false;
  }
}

// ||B_t||_{p -> q} for the block B_t[i][j] = f(t^i / t^j), 0 <= i, j <= a.
inline double prime_block_norm(const SymbolSpec& f, std::uint64_t t, std::uint32_t a, double p,
                               double q) {
  const std::size_t n = a + 1;
  std::vector<double> B(n * n);
  std::vector<std::uint64_t> pw(n, 1);
  for (std::size_t i = 1; i < n; ++i) pw[i] = pw[i - 1] * t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      B[i * n + j] = i >= j ? evaluate(f, pw[i - j], 1) : evaluate(f, 1, pw[j - i]);
    }
  }
  auto mul = [&](const std::vector<double>& x) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      CompensatedSum s;
      for (std::size_t j = 0; j < n; ++j) s.add(B[i * n + j] * x[j]);
      y[i] = s.value();
    }
    return y;
  };
  auto mul_t = [&](const std::vector<double>& y) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      CompensatedSum s;
      for (std::size_t i = 0; i < n; ++i) s.add(B[i * n + j] * y[i]);
      x[j] = s.value();
    }
    return x;
  };
  return boyd_iterate(mul, mul_t, std::vector<double>(n, 1.0), p, q, 500, 1e-13).value;
}

}  // namespace detail

/// Exponent vector a_1 >= a_2 >= ... over the primes 2, 3, 5, ... with
/// prod (a_i + 1) <= N and c = prod t_i^{a_i} < 2^64, maximizing the product
/// of the per-prime block norms. For p = q = 2 and symbols that factor over
/// primes the compression to the divisors of c is a tensor product of the
/// blocks, so the score is the compressed norm itself.
inline std::vector<std::uint32_t> choose_lattice_exponents(const SymbolSpec& f, std::size_t N,
                                                           double p, double q) {
  const auto primes = sieve_primes(200);
  std::map<std::pair<std::uint64_t, std::uint32_t>, double> cache;
  auto block = [&](std::uint64_t t, std::uint32_t a) {
    auto [it, fresh] = cache.try_emplace({t, a}, 0.0);
    if (fresh) it->second = detail::prime_block_norm(f, t, a, p, q);
    return it->second;
  };
  std::vector<std::uint32_t> best, current;
  double best_score = -1.0;
  auto search = [&](auto&& self, std::size_t i, std::uint32_t cap, std::size_t count_left,
                    std::uint64_t c, double score) -> void {
    if (score > best_score) {
      best_score = score;
      best = current;
    }
    if (i >= primes.size()) return;
    const std::uint64_t t = primes[i];
    std::uint64_t cc = c;
    for (std::uint32_t a = 1; a <= cap && (a + 1) <= count_left; ++a) {
      if (detail::mul_overflows(cc, t)) break;
      cc *= t;
      current.push_back(a);
      self(self, i + 1, a, count_left / (a + 1), cc, score * block(t, a));
      current.pop_back();
    }
  };
  search(search, 0, 64, N, 1, 1.0);
  return best;
}

/// Certified lower bound for ||M_f||_{p,q} by mixed-norm power ascent on the
/// compression of A_f to a finite index set, 1 < p <= q < inf, f >= 0.
///
/// Each step sets z = (A x)^{q-1}, x <- normalize_p((A^T z)^{1/(p-1)}); the
/// value ||A x||_q is nondecreasing for entrywise nonnegative A. The start is
/// uniform; for p < q a second run from e_1 is made as well, since the uniform
/// vector can be a stationary point there, and the better run is reported.
inline AscentResult lower_bound_ascent(const SymbolSpec& f, std::size_t N, double p, double q,
                                       const AscentOptions& opt = {}) {
  require_exponent_pair(p, q);
  if (p == 1.0 || std::isinf(q)) {
    throw PreconditionFailed("ascent needs 1 < p <= q < inf; use the witnesses for edge cases");
  }
  if (N == 0) throw PreconditionFailed("ascent needs N >= 1");
  f.require_nonnegative("lower_bound_ascent");
  if (!(evaluate(f, 1, 1) > 0.0)) throw PreconditionFailed("ascent needs f(1) > 0");

  AscentSupport support = opt.support;
  if (support == AscentSupport::automatic) {
    support = detail::factors_over_primes(f) ? AscentSupport::lattice : AscentSupport::prefix;
  }
  std::vector<std::uint64_t> indices;
  std::vector<std::uint32_t> exps;
  std::uint64_t modulus = 0;
  if (support == AscentSupport::lattice) {
    exps = choose_lattice_exponents(f, N, p, q);
    const auto primes = sieve_primes(200);
    std::vector<PrimePower> parts;
    for (std::size_t i = 0; i < exps.size(); ++i) parts.push_back({primes[i], exps[i]});
    const Factorization c(std::move(parts));
    modulus = c.value_u64();
    indices = divisors(c);
  } else {
    indices.resize(N);
    for (std::size_t i = 0; i < N; ++i) indices[i] = i + 1;
  }
  const CompressedOperator A(f, indices);
  auto mul = [&](const std::vector<double>& x) { return A.apply(x); };
  auto mul_t = [&](const std::vector<double>& y) { return A.apply_transpose(y); };

  AscentResult best = detail::boyd_iterate(mul, mul_t, std::vector<double>(indices.size(), 1.0), p,
                                           q, opt.max_iter, opt.tol);
  if (p < q && indices.size() > 1) {
    std::vector<double> e1(indices.size(), 0.0);
    e1[0] = 1.0;
    auto alt = detail::boyd_iterate(mul, mul_t, std::move(e1), p, q, opt.max_iter, opt.tol);
    if (alt.value > best.value) {
      best = std::move(alt);
      best.delta_start = true;
    }
  }
  best.indices = std::move(indices);
  best.modulus = modulus;
  best.exponents = std::move(exps);
  return best;
}

}  // namespace mtoeplitz

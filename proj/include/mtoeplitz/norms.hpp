#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/operator.hpp"
#include "mtoeplitz/sequence.hpp"
#include "mtoeplitz/summation.hpp"
#include "mtoeplitz/symbol.hpp"
#include "mtoeplitz/symbol_norms.hpp"
#include "mtoeplitz/zeta.hpp"

namespace mtoeplitz {

// ---------------------------------------------------------------------------
// Vector norms and exponents
// ---------------------------------------------------------------------------

inline double vector_norm(std::span<const double> x, double p) {
  if (!(p >= 1.0)) throw PreconditionFailed("vector_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  CompensatedSum acc;
  if (p == 1.0) {
    for (double v : x) acc.add(std::abs(v));
    return acc.value();
  }
  if (p == 2.0) {
    for (double v : x) acc.add(v * v);
    return std::sqrt(acc.value());
  }
  for (double v : x) acc.add(std::pow(std::abs(v), p));
  return std::pow(acc.value(), 1.0 / p);
}

inline double vector_norm(const TruncatedSequence& x, double p) { return vector_norm(x.values(), p); }

inline double vector_norm(const SparseSequence& x, double p) {
  std::vector<double> v;
  v.reserve(x.size());
  for (const auto& e : x) v.push_back(e.value);
  return vector_norm(v, p);
}

inline void require_exponent_pair(double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw PreconditionFailed("exponents must satisfy p, q >= 1");
  if (p > q) throw OutsideScope("p > q lies outside the 1 <= p <= q <= inf framework");
}

/// r with 1/r = 1 - 1/p + 1/q, with 1/inf = 0. The three edge cases are exact.
inline double conjugate_r(double p, double q) {
  require_exponent_pair(p, q);
  if (p == q) return 1.0;
  if (p == 1.0) return q;
  if (std::isinf(q)) return p / (p - 1.0);
  return 1.0 / (1.0 - 1.0 / p + 1.0 / q);
}

/// ||f||_{r,Q+}, the sufficient-condition bound on ||M_f||_{p,q}.
inline NormEstimate upper_bound_theorem1(const SymbolSpec& f, double p, double q,
                                         double tol = kDefaultZetaTolerance) {
  return lr_norm(f, conjugate_r(p, q), tol);
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

enum class WitnessKind { delta_at_c, divisor_uniform, dual_exponent, ascent };

inline const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::delta_at_c: return "deltaAtC";
    case WitnessKind::divisor_uniform: return "divisorUniform";
    case WitnessKind::dual_exponent: return "dualExponent";
    case WitnessKind::ascent: return "ascent";
  }
  return "?";
}

/// A unit vector x (in the relevant l^p) and the lower bound it certifies.
struct Witness {
  WitnessKind kind{};
  SparseSequence x;
  double lower = 0.0;
  double truncated = 0.0;       // contribution of outputs n <= M only
  double tail_power = 0.0;      // analytic sum over n > M of |y_n|^q (delta witness)
  std::uint64_t modulus = 1;
  std::uint64_t output_length = 0;
};

namespace detail {

// sum_{m > M, (m, k) = 1} m^{-s}, by Moebius inversion over squarefree e | k.
inline double coprime_power_tail(double s, std::uint64_t M, const Factorization& k) {
  const auto parts = k.parts();
  CompensatedSum acc;
  const std::size_t subsets = std::size_t{1} << parts.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t e = 1;
    int sign = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (mask >> i & 1U) {
        e *= parts[i].prime;
        sign = -sign;
      }
    }
    acc.add(sign * std::pow(static_cast<double>(e), -s) * power_tail(s, M / e));
  }
  return acc.value();
}

inline double abs_pow(double v, double q) { return q == 1.0 ? std::abs(v) : std::pow(std::abs(v), q); }

// Power sum over n > M of |f(n/c)|^q, in closed form per family.
inline double column_tail_power(const SymbolSpec& f, double q, std::uint64_t c, std::uint64_t M) {
  switch (f.kind()) {
    case SymbolKind::power_on_naturals: {
      const double s = f.get_if<PowerOnNaturals>()->alpha * q;
      if (!(s > 1.0)) return kInfinity;
      return power_tail(s, M / c);
    }
    case SymbolKind::product_power: {
      const auto& pp = *f.get_if<ProductPower>();
      const double a = pp.alpha * q;
      const double b = pp.beta * q;
      if (!(a > 1.0)) return kInfinity;
      // n = g m with g | c and (m, c/g) = 1: f(n/c) = m^{-alpha} (c/g)^{-beta}.
      CompensatedSum acc;
      for (std::uint64_t g : divisors(factorize(c))) {
        acc.add(std::pow(static_cast<double>(c / g), -b) *
                coprime_power_tail(a, M / g, factorize(c / g)));
      }
      return acc.value();
    }
    case SymbolKind::tabulated_naturals: {
      double s = 0.0;
      for (const auto& [n, v] : f.get_if<TabulatedNaturals>()->values) {
        if (n > M / c) s += abs_pow(v, q);
      }
      return s;
    }
    case SymbolKind::tabulated_rationals: {
      CompensatedSum acc;
      for (const auto& [r, v] : f.get_if<TabulatedRationals>()->values) {
        if (c % r.den() != 0) continue;
        const BigNatural n = BigNatural(r.num()) * (c / r.den());
        if (n > M) acc.add(abs_pow(v, q));
      }
      return acc.value();
    }
    default: {
      // Multiplicative families: closed norm minus the enumerated part.
      const double full = std::pow(lr_norm_naturals(f, q).value(), q);
      CompensatedSum part;
      for (double v : values_on_naturals(f, M / c)) part.add(abs_pow(v, q));
      return std::max(0.0, full - part.value());
    }
  }
}

inline void require_nonnegative_exponent_q(double q) {
  if (!(q >= 1.0)) throw PreconditionFailed("q must be >= 1");
}

}  // namespace detail

/// x = e_c. The lower bound is ||M_f e_c||_q: the outputs n <= M are summed
/// explicitly and the remainder n > M in closed form, so for naturals-
/// supported f the result equals ||f||_q regardless of c.
inline Witness witness_delta(const SymbolSpec& f, double q, const Factorization& c, std::uint64_t M,
                             bool analytic_tail = true) {
  f.require_nonnegative("witness_delta");
  detail::require_nonnegative_exponent_q(q);
  const std::uint64_t cv = c.value_u64();
  if (M == 0) throw PreconditionFailed("witness_delta: M must be >= 1");
  Witness w;
  w.kind = WitnessKind::delta_at_c;
  w.x = {{cv, 1.0}};
  w.modulus = cv;
  w.output_length = M;
  // Nonzero entries of the column at n <= M, without a dense vector.
  std::vector<double> entries;
  if (f.supported_on_naturals()) {
    if (cv <= M) entries = values_on_naturals(f, M / cv);
  } else if (const auto* tab = f.get_if<TabulatedRationals>()) {
    for (const auto& [r, v] : tab->values) {
      if (cv % r.den() != 0) continue;
      if (BigNatural(r.num()) * (cv / r.den()) <= M) entries.push_back(v);
    }
  } else {
    entries.reserve(M);
    for (std::uint64_t n = 1; n <= M; ++n) entries.push_back(evaluate(f, n, cv));
  }
  if (std::isinf(q)) {
    w.truncated = vector_norm(entries, q);
    w.lower = w.truncated;
    return w;
  }
  CompensatedSum part;
  for (double v : entries) part.add(detail::abs_pow(v, q));
  w.truncated = std::pow(part.value(), 1.0 / q);
  if (analytic_tail) w.tail_power = detail::column_tail_power(f, q, cv, M);
  w.lower = std::pow(part.value() + w.tail_power, 1.0 / q);
  return w;
}

/// x uniform on the divisors of c with ||x||_q = 1. The certified value is
/// sum_n x_n^{q-1} y_n = (1/d(c)) sum_{n, k | c} f(n/k), evaluated through
/// the coprime pairs (u, v) with uv | c, each of which occurs d(c/uv) times.
inline Witness witness_divisor_uniform(const SymbolSpec& f, double q, const Factorization& c) {
  f.require_nonnegative("witness_divisor_uniform");
  if (!(q > 1.0) || std::isinf(q)) throw PreconditionFailed("divisor-uniform witness needs 1 < q < inf");
  const BigNatural dc = c.divisor_count();
  if (dc > kDivisorCap) {
    throw DivisorCapExceeded("divisor-uniform witness: d(c) = " + dc.str() + " exceeds the cap");
  }
  const std::uint64_t cv = c.value_u64();
  const auto parts = c.parts();
  BigNatural terms = 1;
  for (const auto& pp : parts) terms *= 2 * pp.exponent + 1;
  if (terms > kDivisorCap) throw DivisorCapExceeded("divisor-uniform witness: lattice too large");

  CompensatedSum acc;
  // Depth-first over primes: exponent e of t goes to u (numerator) or v.
  auto recurse = [&](auto&& self, std::size_t i, std::uint64_t u, std::uint64_t v,
                     std::uint64_t multiplicity) -> void {
    if (i == parts.size()) {
      const double fv = evaluate(f, u, v);
      if (fv != 0.0) acc.add(fv * static_cast<double>(multiplicity));
      return;
    }
    const std::uint64_t t = parts[i].prime;
    const std::uint32_t a = parts[i].exponent;
    self(self, i + 1, u, v, multiplicity * (a + 1));
    std::uint64_t pw = 1;
    for (std::uint32_t e = 1; e <= a; ++e) {
      pw *= t;
      self(self, i + 1, u * pw, v, multiplicity * (a - e + 1));
      self(self, i + 1, u, v * pw, multiplicity * (a - e + 1));
    }
  };
  recurse(recurse, 0, 1, 1, 1);

  Witness w;
  w.kind = WitnessKind::divisor_uniform;
  w.modulus = cv;
  const double dcount = static_cast<double>(dc);
  w.lower = acc.value() / dcount;
  w.truncated = w.lower;
  const double xv = std::pow(dcount, -1.0 / q);
  for (std::uint64_t d : divisors(c)) w.x.push_back({d, xv});
  w.output_length = cv;
  return w;
}

/// Witness for q = inf: x_n = f(c/n)^{r/p} F^{-1/p} with F = sum_{n <= M}
/// f(c/n)^r, so ||x||_p = 1 and y_c = F^{1/r}. For p = inf (r = 1) x is the
/// indicator of {n : f(c/n) > 0} and y_c = F. For naturals-supported f only
/// the divisors of c contribute and M = 0 means all of them.
inline Witness witness_dual_exponent(const SymbolSpec& f, double p, const Factorization& c,
                                     std::uint64_t M = 0) {
  f.require_nonnegative("witness_dual_exponent");
  if (!(p > 1.0)) throw PreconditionFailed("dual-exponent witness needs p > 1 (use the delta witness at p = 1)");
  const std::uint64_t cv = c.value_u64();
  const double r = conjugate_r(p, kInfinity);
  const bool naturals = f.supported_on_naturals();
  if (M == 0) M = naturals ? cv : std::max<std::uint64_t>(cv, std::uint64_t{1} << 16);

  std::vector<std::pair<std::uint64_t, double>> profile;  // (n, f(c/n)) with f(c/n) > 0
  if (naturals) {
    for (std::uint64_t d : divisors(c)) {
      const std::uint64_t n = cv / d;
      if (n > M) continue;
      const double v = evaluate(f, d, 1);
      if (v > 0.0) profile.emplace_back(n, v);
    }
    std::sort(profile.begin(), profile.end());
  } else {
    for (std::uint64_t n = 1; n <= M; ++n) {
      const double v = evaluate(f, cv, n);
      if (v > 0.0) profile.emplace_back(n, v);
    }
  }
  CompensatedSum F;
  for (const auto& [n, v] : profile) F.add(std::pow(v, r));
  if (!(F.value() > 0.0)) {
    throw PreconditionFailed("dual-exponent witness: f vanishes on c/n for every n <= M");
  }
  Witness w;
  w.kind = WitnessKind::dual_exponent;
  w.modulus = cv;
  w.output_length = M;
  if (std::isinf(p)) {
    for (const auto& [n, v] : profile) w.x.push_back({n, 1.0});
    w.lower = F.value();
  } else {
    const double scale = std::pow(F.value(), -1.0 / p);
    for (const auto& [n, v] : profile) w.x.push_back({n, std::pow(v, r / p) * scale});
    w.lower = std::pow(F.value(), 1.0 / r);
  }
  w.truncated = w.lower;
  return w;
}

}  // namespace mtoeplitz

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtoeplitz/ascent.hpp"
#include "mtoeplitz/error.hpp"
#include "mtoeplitz/norms.hpp"
#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/symbol.hpp"
#include "mtoeplitz/symbol_norms.hpp"

namespace mtoeplitz {

enum class WitnessStrategy { automatic, delta, diagonal, primorial, ascent, all };

inline WitnessStrategy parse_witness_strategy(const std::string& s) {
  if (s == "auto") return WitnessStrategy::automatic;
  if (s == "delta") return WitnessStrategy::delta;
  if (s == "diagonal") return WitnessStrategy::diagonal;
  if (s == "primorial") return WitnessStrategy::primorial;
  if (s == "ascent") return WitnessStrategy::ascent;
  if (s == "all") return WitnessStrategy::all;
  throw PreconditionFailed("unknown witness strategy '" + s + "'");
}

struct BracketOptions {
  WitnessStrategy strategy = WitnessStrategy::automatic;
  std::uint64_t T = 13;                        // largest prime in witness moduli
  std::uint32_t k = 2;                         // primorial exponent
  std::size_t N = 1024;                        // ascent index-set size
  std::uint64_t M = std::uint64_t{1} << 16;    // output truncation of witnesses
  AscentOptions ascent{};
};

struct WitnessParams {
  std::uint64_t c = 0;
  std::uint64_t T = 0;
  std::uint32_t k = 0;
  std::size_t iterations = 0;
  std::uint64_t M = 0;
};

struct NormBracket {
  double p = 1, q = 1, r = 1;
  double lower = 0.0;
  std::optional<double> upper;     // empty when ||f||_r diverges
  WitnessKind witness_kind = WitnessKind::delta_at_c;
  WitnessParams witness_params;
  std::size_t N = 0;
  std::size_t iterations = 0;
  double elapsed_ms = 0.0;

  bool upper_diverges() const noexcept { return !upper.has_value(); }
  bool consistent() const noexcept { return !upper || lower <= *upper * (1.0 + 1e-12); }
};

namespace detail {

struct Candidate {
  double lower;
  WitnessKind kind;
  WitnessParams params;
};

}  // namespace detail

/// Combines the upper bound ||f||_r with the lower bounds selected by
/// `strategy`, keeping the largest.
///
/// automatic: p = 1 uses delta witnesses at c = 1 and the primorial power;
/// p = q the divisor-uniform witnesses; q = inf the dual-exponent witness;
/// interior exponents the ascent. `diagonal` takes the best divisor-uniform
/// witness over the moduli of every prime T' <= T, `primorial` the edge-case
/// witness at c = primorial_power(T, k).
inline NormBracket bracket(const SymbolSpec& f, double p, double q, const BracketOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  NormBracket b;
  b.p = p;
  b.q = q;
  b.r = conjugate_r(p, q);
  const auto up = upper_bound_theorem1(f, p, q);
  if (up.is_finite()) b.upper = up.value();
  f.require_nonnegative("bracket");

  const bool p_one = p == 1.0;
  const bool diag = p == q && p > 1.0 && !std::isinf(q);
  const bool q_inf = std::isinf(q) && p > 1.0;
  const bool interior = p > 1.0 && !std::isinf(q);
  const auto S = opt.strategy;
  const bool all = S == WitnessStrategy::all;
  const bool automatic = S == WitnessStrategy::automatic;

  std::vector<detail::Candidate> cands;
  const auto primorial = primorial_power(opt.T, opt.k);

  auto add_delta = [&](const Factorization& c) {
    if (!c.fits_u64()) return;
    const std::uint64_t M = f.supported_on_naturals() ? std::max<std::uint64_t>(opt.M, c.value_u64()) : opt.M;
    const auto w = witness_delta(f, q, c, M);
    cands.push_back({w.lower, WitnessKind::delta_at_c, {w.modulus, 0, 0, 0, w.output_length}});
  };
  auto add_uniform = [&](const Factorization& c, std::uint64_t T, std::uint32_t k) {
    const auto w = witness_divisor_uniform(f, q, c);
    cands.push_back({w.lower, WitnessKind::divisor_uniform, {w.modulus, T, k, 0, 0}});
  };
  auto add_dual = [&](const Factorization& c, std::uint64_t T, std::uint32_t k) {
    const auto w = witness_dual_exponent(f, p, c, f.supported_on_naturals() ? 0 : opt.M);
    cands.push_back({w.lower, WitnessKind::dual_exponent, {w.modulus, T, k, 0, w.output_length}});
  };

  if (S == WitnessStrategy::delta || all || (automatic && (p_one || (!diag && !q_inf)))) {
    add_delta(Factorization{});
    add_delta(primorial.factors);
  }
  if (diag && (S == WitnessStrategy::diagonal || all || automatic)) {
    for (std::uint64_t t : sieve_primes(opt.T)) add_uniform(diagonal_witness_modulus(t), t, 0);
  }
  if (S == WitnessStrategy::primorial || all || automatic) {
    if (p_one) add_delta(primorial.factors);
    if (diag) add_uniform(primorial.factors, opt.T, opt.k);
    if (q_inf) add_dual(primorial.factors, opt.T, opt.k);
  }
  if (q_inf && (S == WitnessStrategy::delta || all || automatic)) add_dual(Factorization{}, 0, 0);
  if (interior && (S == WitnessStrategy::ascent || all || (automatic && !diag))) {
    const auto a = lower_bound_ascent(f, opt.N, p, q, opt.ascent);
    WitnessParams params;
    params.c = a.modulus;
    params.iterations = a.iterations;
    cands.push_back({a.value, WitnessKind::ascent, params});
    b.N = a.indices.size();
    b.iterations = a.iterations;
  }
  if (cands.empty()) {
    throw PreconditionFailed("witness strategy does not apply to the edge case (p, q) given");
  }
  const detail::Candidate* best = &cands.front();
  for (const auto& c : cands) {
    if (c.lower > best->lower) best = &c;
  }
  b.lower = best->lower;
  b.witness_kind = best->kind;
  b.witness_params = best->params;
  b.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

}  // namespace mtoeplitz

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/random.hpp"
#include "mtoeplitz/sequence.hpp"
#include "mtoeplitz/summation.hpp"
#include "mtoeplitz/symbol.hpp"

namespace mtoeplitz {

struct RandomMultiplicativeSample {
  SymbolSpec symbol;        // CompletelyMultiplicative with the drawn prime values
  TruncatedSequence values; // x_1..x_N
};

/// Draws x in M_c^p: x_t = u_t t^{-sigma} for primes t <= prime_bound with
/// u_t uniform in [0, 1), and zero at larger primes. sigma > 1/p makes
/// sum_t x_t^p converge. Deterministic in (seed, t).
inline RandomMultiplicativeSample random_completely_multiplicative(
    double p, double sigma, std::uint64_t seed, std::uint64_t N, std::uint64_t prime_bound = 0) {
  if (!(p > 1.0 && p < 2.0)) throw PreconditionFailed("random M_c^p sample needs 1 < p < 2");
  if (!(sigma > 1.0 / p)) throw PreconditionFailed("random M_c^p sample needs sigma > 1/p");
  if (N == 0) throw PreconditionFailed("random M_c^p sample needs N >= 1");
  if (prime_bound == 0) prime_bound = N;
  constexpr std::uint64_t kStream = 0x636d;  // "cm"
  std::map<std::uint64_t, double> prime_values;
  for (std::uint64_t t : sieve_primes(prime_bound)) {
    prime_values[t] = uniform01(seed, kStream, t) * std::pow(static_cast<double>(t), -sigma);
  }
  auto symbol = SymbolSpec::completely_multiplicative(std::move(prime_values));
  TruncatedSequence x(values_on_naturals(symbol, N), p);
  return {std::move(symbol), std::move(x)};
}

struct TransformScanResult {
  double t_star = 0.0;
  double magnitude = 0.0;        // |F(t_star)|
  std::size_t grid_points = 0;
  std::size_t support_points = 0;
  bool heuristic = true;         // grid maximum: a lower estimate of sup_t |F(t)|
};

/// Grid scan of |F(t)| = |sum_q f(q) q^{it}| over the support with
/// components <= T. Ties keep the first grid point.
inline TransformScanResult symbol_transform_scan(const SymbolSpec& f, double t_min, double t_max,
                                                 double step, std::uint64_t T) {
  if (!(step > 0.0) || !(t_max >= t_min)) throw PreconditionFailed("transform scan: bad grid");
  std::vector<double> log_q, weight;
  for_each_support_point(f, T, [&](const PositiveRational& q, double v) {
    log_q.push_back(std::log(static_cast<double>(q.num())) - std::log(static_cast<double>(q.den())));
    weight.push_back(v);
  });
  if (weight.empty()) throw PreconditionFailed("transform scan: symbol has empty support");

  TransformScanResult best;
  best.support_points = weight.size();
  best.magnitude = -1.0;
  const auto steps = static_cast<std::size_t>(std::llround((t_max - t_min) / step));
  for (std::size_t k = 0; k <= steps; ++k) {
    double t = t_min + static_cast<double>(k) * step;
    if (std::abs(t) < step * 1e-9) t = 0.0;
    CompensatedComplexSum F;
    for (std::size_t i = 0; i < weight.size(); ++i) {
      const double phase = t * log_q[i];
      F.add(weight[i] * std::complex<double>(std::cos(phase), std::sin(phase)));
    }
    const double m = std::abs(F.value());
    if (m > best.magnitude) {
      best.magnitude = m;
      best.t_star = t;
    }
  }
  best.grid_points = steps + 1;
  return best;
}

}  // namespace mtoeplitz

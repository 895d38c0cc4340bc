#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/summation.hpp"
#include "mtoeplitz/symbol.hpp"
#include "mtoeplitz/zeta.hpp"

namespace mtoeplitz {

/// A norm value that is either finite (with an error bar) or divergent.
class NormEstimate {
 public:
  static NormEstimate finite(double value, double error_bar = 0.0) {
    NormEstimate e;
    e.value_ = value;
    e.error_bar_ = error_bar;
    e.diverges_ = false;
    return e;
  }
  static NormEstimate divergent() {
    NormEstimate e;
    e.diverges_ = true;
    return e;
  }

  bool diverges() const noexcept { return diverges_; }
  bool is_finite() const noexcept { return !diverges_; }

  /// Throws NormDiverges for a divergent estimate.
  double value() const {
    if (diverges_) throw NormDiverges("norm diverges");
    return value_;
  }
  double error_bar() const noexcept { return error_bar_; }

 private:
  double value_ = kInfinity;
  double error_bar_ = 0.0;
  bool diverges_ = true;
};

namespace detail {

inline void require_exponent(double r) {
  if (!(r >= 1.0)) throw PreconditionFailed("norm exponent must satisfy r >= 1");
}

inline double root(double power_sum, double r) { return std::pow(power_sum, 1.0 / r); }

}  // namespace detail

/// ||f||_r over the naturals, using closed forms (zeta values, Euler products,
/// finite sums) so no truncation error is incurred.
inline NormEstimate lr_norm_naturals(const SymbolSpec& f, double r,
                                     double tol = kDefaultZetaTolerance) {
  detail::require_exponent(r);
  if (!f.supported_on_naturals()) {
    throw PreconditionFailed("lr_norm_naturals requires a symbol supported on the naturals");
  }
  const bool sup_norm = std::isinf(r);
  switch (f.kind()) {
    case SymbolKind::power_on_naturals: {
      const double alpha = f.get_if<PowerOnNaturals>()->alpha;
      if (sup_norm) return alpha >= 0.0 ? NormEstimate::finite(1.0) : NormEstimate::divergent();
      if (!(alpha * r > 1.0)) return NormEstimate::divergent();
      const double z = zeta(alpha * r, tol);
      return NormEstimate::finite(detail::root(z, r), tol * z);
    }
    case SymbolKind::tabulated_naturals:
    case SymbolKind::tabulated_rationals: {
      double sup = 0.0;
      CompensatedSum acc;
      auto take = [&](double v) {
        sup = std::max(sup, std::abs(v));
        if (!sup_norm) acc.add(std::pow(std::abs(v), r));
      };
      if (const auto* t = f.get_if<TabulatedNaturals>()) {
        for (const auto& [n, v] : t->values) take(v);
      } else {
        for (const auto& [q, v] : f.get_if<TabulatedRationals>()->values) take(v);
      }
      return NormEstimate::finite(sup_norm ? sup : detail::root(acc.value(), r));
    }
    case SymbolKind::completely_multiplicative: {
      if (sup_norm) return NormEstimate::finite(1.0);
      CompensatedSum log_sum;
      for (const auto& [t, g] : f.get_if<CompletelyMultiplicative>()->prime_values) {
        log_sum.add(-std::log1p(-std::pow(std::abs(g), r)));
      }
      return NormEstimate::finite(std::exp(log_sum.value() / r));
    }
    case SymbolKind::multiplicative: {
      const auto& m = *f.get_if<Multiplicative>();
      if (!m.zero_beyond_table) {
        throw MissingPrimePowerValue(
            "norm of a multiplicative symbol needs every prime power; the table is open-ended");
      }
      std::map<std::uint64_t, std::pair<double, double>> per_prime;  // (sum |h|^r, max |h|)
      for (const auto& [key, h] : m.prime_power_values) {
        auto& slot = per_prime[key.first];
        slot.first += std::pow(std::abs(h), r);
        slot.second = std::max(slot.second, std::abs(h));
      }
      if (sup_norm) {
        double sup = 1.0;
        for (const auto& [t, s] : per_prime) sup *= std::max(1.0, s.second);
        return NormEstimate::finite(sup);
      }
      CompensatedSum log_sum;
      for (const auto& [t, s] : per_prime) log_sum.add(std::log1p(s.first));
      return NormEstimate::finite(std::exp(log_sum.value() / r));
    }
    default:
      break;
  }
  throw PreconditionFailed("lr_norm_naturals: unsupported symbol");
}

/// Result of a Q+ norm computed by enumerating reduced fractions u/v with
/// u, v <= T and adding an analytic tail.
struct RationalNormEstimate {
  NormEstimate norm;          // (partial + tail estimate)^{1/r}
  double partial_power = 0;   // sum over enumerated fractions of |f|^r
  double tail_estimate = 0;   // estimated remaining power sum
  double tail_bound = 0;      // rigorous upper bound on the remaining power sum
  double lower = 0;           // partial^{1/r}
  double upper = 0;           // (partial + tail_bound)^{1/r}
  std::uint64_t enumeration_bound = 0;
};

/// Closed form sum_{(u,v)=1} u^{-a} v^{-b} = zeta(a) zeta(b) / zeta(a + b).
inline double coprime_power_sum(double a, double b, double tol = kDefaultZetaTolerance) {
  return zeta(a, tol) * zeta(b, tol) / zeta(a + b, tol);
}

/// ||f||_{r,Q+} for ProductPower in closed form.
inline NormEstimate product_power_norm(const ProductPower& pp, double r,
                                       double tol = kDefaultZetaTolerance) {
  detail::require_exponent(r);
  if (std::isinf(r)) {
    return (pp.alpha >= 0 && pp.beta >= 0) ? NormEstimate::finite(1.0) : NormEstimate::divergent();
  }
  const double a = pp.alpha * r;
  const double b = pp.beta * r;
  if (!(std::min(a, b) > 1.0)) return NormEstimate::divergent();
  return NormEstimate::finite(detail::root(coprime_power_sum(a, b, tol), r));
}

inline RationalNormEstimate lr_norm_rationals(const SymbolSpec& f, double r, std::uint64_t T,
                                              double tol = kDefaultZetaTolerance) {
  detail::require_exponent(r);
  if (T == 0) throw PreconditionFailed("lr_norm_rationals: enumeration bound must be >= 1");
  RationalNormEstimate out;
  out.enumeration_bound = T;

  if (const auto* pp = f.get_if<ProductPower>()) {
    if (std::isinf(r)) {
      out.norm = product_power_norm(*pp, r, tol);
      if (out.norm.is_finite()) out.lower = out.upper = out.norm.value();
      return out;
    }
    const double a = pp->alpha * r;
    const double b = pp->beta * r;
    if (!(std::min(a, b) > 1.0)) {
      out.norm = NormEstimate::divergent();
      return out;
    }
    std::vector<double> num_pow(T + 1), den_pow(T + 1);
    for (std::uint64_t n = 1; n <= T; ++n) {
      num_pow[n] = std::pow(static_cast<double>(n), -a);
      den_pow[n] = std::pow(static_cast<double>(n), -b);
    }
    SmallestFactorSieve sieve(T);
    std::vector<char> shares_factor(T + 1);
    CompensatedSum acc;
    acc.add(1.0);  // 1/1
    for (std::uint64_t m = 2; m <= T; ++m) {
      std::fill(shares_factor.begin(), shares_factor.begin() + static_cast<std::ptrdiff_t>(m), 0);
      sieve.for_each_prime_power(m, [&](std::uint64_t t, std::uint32_t) {
        for (std::uint64_t j = t; j < m; j += t) shares_factor[j] = 1;
      });
      for (std::uint64_t u = 1; u < m; ++u) {
        if (!shares_factor[u]) acc.add(num_pow[u] * den_pow[m]);
      }
      for (std::uint64_t v = 1; v < m; ++v) {
        if (!shares_factor[v]) acc.add(num_pow[m] * den_pow[v]);
      }
    }
    out.partial_power = acc.value();
    const double tail_a = power_tail(a, T, tol);
    const double tail_b = power_tail(b, T, tol);
    const double za = zeta(a, tol);
    const double zb = zeta(b, tol);
    // A fraction is missed iff u > T or v > T. Summing v over all integers
    // coprime to u averages prod_{t | u}(1 - t^{-b}) to 1/zeta(b + 1).
    out.tail_estimate = zb / zeta(b + 1.0, tol) * tail_a + za / zeta(a + 1.0, tol) * tail_b;
    out.tail_bound = zb * tail_a + za * tail_b;
    out.lower = detail::root(out.partial_power, r);
    out.upper = detail::root(out.partial_power + out.tail_bound, r);
    out.norm = NormEstimate::finite(detail::root(out.partial_power + out.tail_estimate, r),
                                    out.upper - out.lower);
    return out;
  }

  if (const auto* tab = f.get_if<TabulatedRationals>()) {
    double sup = 0.0;
    CompensatedSum inside, outside;
    for (const auto& [q, v] : tab->values) {
      sup = std::max(sup, std::abs(v));
      if (std::isinf(r)) continue;
      const double w = std::pow(std::abs(v), r);
      if (q.num() <= T && q.den() <= T) {
        inside.add(w);
      } else {
        outside.add(w);
      }
    }
    if (std::isinf(r)) {
      out.norm = NormEstimate::finite(sup);
      out.lower = out.upper = sup;
      return out;
    }
    out.partial_power = inside.value();
    out.tail_estimate = out.tail_bound = outside.value();
    out.lower = detail::root(out.partial_power, r);
    out.upper = detail::root(out.partial_power + out.tail_bound, r);
    out.norm = NormEstimate::finite(out.upper);
    return out;
  }

  // Supported on the naturals: the Q+ sum collapses to the N sum.
  out.norm = lr_norm_naturals(f, r, tol);
  if (out.norm.is_finite()) {
    out.lower = out.upper = out.norm.value();
    if (!std::isinf(r)) out.partial_power = std::pow(out.norm.value(), r);
  }
  return out;
}

/// ||f||_{r,Q+} using the best available exact route (closed forms for every
/// family; finite sums for tables).
inline NormEstimate lr_norm(const SymbolSpec& f, double r, double tol = kDefaultZetaTolerance) {
  if (const auto* pp = f.get_if<ProductPower>()) return product_power_norm(*pp, r, tol);
  if (const auto* tab = f.get_if<TabulatedRationals>()) {
    detail::require_exponent(r);
    double sup = 0.0;
    CompensatedSum acc;
    for (const auto& [q, v] : tab->values) {
      sup = std::max(sup, std::abs(v));
      if (!std::isinf(r)) acc.add(std::pow(std::abs(v), r));
    }
    return NormEstimate::finite(std::isinf(r) ? sup : detail::root(acc.value(), r));
  }
  return lr_norm_naturals(f, r, tol);
}

}  // namespace mtoeplitz

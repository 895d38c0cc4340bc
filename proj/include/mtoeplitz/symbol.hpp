#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/rational.hpp"

namespace mtoeplitz {

// ---------------------------------------------------------------------------
// Symbol families
// ---------------------------------------------------------------------------

/// f(n) = n^{-alpha} on the naturals, zero at non-integers.
struct PowerOnNaturals {
  double alpha = 1.0;
  bool operator==(const PowerOnNaturals&) const = default;
};

/// f(u/v) = u^{-alpha} v^{-beta} on reduced fractions.
struct ProductPower {
  double alpha = 1.0;
  double beta = 1.0;
  bool operator==(const ProductPower&) const = default;
};

struct TabulatedNaturals {
  std::map<std::uint64_t, double> values;
  bool operator==(const TabulatedNaturals&) const = default;
};

struct TabulatedRationals {
  std::map<PositiveRational, double> values;
  bool operator==(const TabulatedRationals&) const = default;
};

/// f(t) given at listed primes, zero at unlisted primes, f(1) = 1.
struct CompletelyMultiplicative {
  std::map<std::uint64_t, double> prime_values;
  bool operator==(const CompletelyMultiplicative&) const = default;
};

/// f(t^e) given per prime power, f(1) = 1. Lookups outside the table are an
/// error unless `zero_beyond_table` is set.
struct Multiplicative {
  std::map<std::pair<std::uint64_t, std::uint32_t>, double> prime_power_values;
  bool zero_beyond_table = false;
  bool operator==(const Multiplicative&) const = default;
};

enum class SymbolKind {
  power_on_naturals,
  product_power,
  tabulated_naturals,
  tabulated_rationals,
  completely_multiplicative,
  multiplicative,
};

/// Immutable description of a symbol f : Q+ -> R.
class SymbolSpec {
 public:
  using Variant = std::variant<PowerOnNaturals, ProductPower, TabulatedNaturals,
                               TabulatedRationals, CompletelyMultiplicative, Multiplicative>;

  static SymbolSpec power(double alpha) {
    require_finite(alpha, "alpha");
    return SymbolSpec(PowerOnNaturals{alpha});
  }

  static SymbolSpec product_power(double alpha, double beta) {
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    return SymbolSpec(ProductPower{alpha, beta});
  }

  static SymbolSpec tabulated(std::map<std::uint64_t, double> values) {
    for (const auto& [n, v] : values) {
      if (n == 0) throw PreconditionFailed("tabulated symbol index must be >= 1");
      require_finite(v, "tabulated value");
    }
    return SymbolSpec(TabulatedNaturals{std::move(values)});
  }

  static SymbolSpec tabulated(std::map<PositiveRational, double> values) {
    for (const auto& [q, v] : values) require_finite(v, "tabulated value");
    return SymbolSpec(TabulatedRationals{std::move(values)});
  }

  /// Point mass of weight `value` at the integer n.
  static SymbolSpec atom(std::uint64_t n, double value = 1.0) {
    return tabulated(std::map<std::uint64_t, double>{{n, value}});
  }

  static SymbolSpec completely_multiplicative(std::map<std::uint64_t, double> prime_values) {
    for (const auto& [t, v] : prime_values) {
      if (!is_prime(t)) throw PreconditionFailed("completely multiplicative key " + std::to_string(t) + " is not prime");
      require_finite(v, "prime value");
      if (!(std::abs(v) < 1.0)) {
        throw PreconditionFailed("completely multiplicative prime values need modulus < 1");
      }
    }
    return SymbolSpec(CompletelyMultiplicative{std::move(prime_values)});
  }

  static SymbolSpec multiplicative(
      std::map<std::pair<std::uint64_t, std::uint32_t>, double> prime_power_values,
      bool zero_beyond_table = false) {
    for (const auto& [key, v] : prime_power_values) {
      if (!is_prime(key.first)) throw PreconditionFailed("multiplicative key base is not prime");
      if (key.second == 0) throw PreconditionFailed("multiplicative key exponent must be >= 1");
      require_finite(v, "prime-power value");
    }
    return SymbolSpec(Multiplicative{std::move(prime_power_values), zero_beyond_table});
  }

  const Variant& variant() const noexcept { return v_; }
  SymbolKind kind() const noexcept { return static_cast<SymbolKind>(v_.index()); }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  /// True when f vanishes at every non-integer rational.
  bool supported_on_naturals() const {
    switch (kind()) {
      case SymbolKind::product_power:
        return false;
      case SymbolKind::tabulated_rationals:
        for (const auto& [q, v] : std::get<TabulatedRationals>(v_).values) {
          if (!q.is_integer() && v != 0.0) return false;
        }
        return true;
      default:
        return true;
    }
  }

  bool is_nonnegative() const {
    return std::visit(
        [](const auto& s) -> bool {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, PowerOnNaturals> || std::is_same_v<S, ProductPower>) {
            return true;
          } else if constexpr (std::is_same_v<S, CompletelyMultiplicative>) {
            for (const auto& [k, v] : s.prime_values) if (v < 0) return false;
            return true;
          } else if constexpr (std::is_same_v<S, Multiplicative>) {
            for (const auto& [k, v] : s.prime_power_values) if (v < 0) return false;
            return true;
          } else {
            for (const auto& [k, v] : s.values) if (v < 0) return false;
            return true;
          }
        },
        v_);
  }

  /// Throws NegativeSymbol unless f >= 0 everywhere.
  void require_nonnegative(const char* who) const {
    if (!is_nonnegative()) {
      throw NegativeSymbol(std::string(who) + " requires a nonnegative symbol");
    }
  }

  bool operator==(const SymbolSpec&) const = default;

 private:
  explicit SymbolSpec(Variant v) : v_(std::move(v)) {}

  static void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw PreconditionFailed(std::string(what) + " must be finite");
  }

  Variant v_;
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace detail {

inline double multiplicative_lookup(const Multiplicative& m, std::uint64_t t, std::uint32_t e) {
  const auto it = m.prime_power_values.find({t, e});
  if (it != m.prime_power_values.end()) return it->second;
  if (m.zero_beyond_table) return 0.0;
  throw MissingPrimePowerValue("multiplicative symbol has no value at " + std::to_string(t) +
                               "^" + std::to_string(e));
}

inline double cm_prime_value(const CompletelyMultiplicative& c, std::uint64_t t) {
  const auto it = c.prime_values.find(t);
  return it == c.prime_values.end() ? 0.0 : it->second;
}

}  // namespace detail

/// f(q) for a reduced positive rational q.
inline double evaluate(const SymbolSpec& f, const PositiveRational& q) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PowerOnNaturals>) {
          if (!q.is_integer()) return 0.0;
          return std::pow(static_cast<double>(q.num()), -s.alpha);
        } else if constexpr (std::is_same_v<S, ProductPower>) {
          return std::pow(static_cast<double>(q.num()), -s.alpha) *
                 std::pow(static_cast<double>(q.den()), -s.beta);
        } else if constexpr (std::is_same_v<S, TabulatedNaturals>) {
          if (!q.is_integer()) return 0.0;
          const auto it = s.values.find(q.num());
          return it == s.values.end() ? 0.0 : it->second;
        } else if constexpr (std::is_same_v<S, TabulatedRationals>) {
          const auto it = s.values.find(q);
          return it == s.values.end() ? 0.0 : it->second;
        } else if constexpr (std::is_same_v<S, CompletelyMultiplicative>) {
          if (!q.is_integer()) return 0.0;
          double v = 1.0;
          const auto fac = factorize(q.num());
          for (const auto& pp : fac.parts()) {
            const double g = detail::cm_prime_value(s, pp.prime);
            for (std::uint32_t e = 0; e < pp.exponent; ++e) v *= g;
          }
          return v;
        } else {
          if (!q.is_integer()) return 0.0;
          double v = 1.0;
          const auto fac = factorize(q.num());
          for (const auto& pp : fac.parts()) {
            v *= detail::multiplicative_lookup(s, pp.prime, pp.exponent);
          }
          return v;
        }
      },
      f.variant());
}

inline double evaluate(const SymbolSpec& f, std::uint64_t num, std::uint64_t den) {
  return evaluate(f, PositiveRational(num, den));
}

/// f(1), f(2), ..., f(L) as a vector indexed from 0.
inline std::vector<double> values_on_naturals(const SymbolSpec& f, std::uint64_t L) {
  std::vector<double> out(L, 0.0);
  if (L == 0) return out;
  switch (f.kind()) {
    case SymbolKind::power_on_naturals: {
      const double alpha = f.get_if<PowerOnNaturals>()->alpha;
      for (std::uint64_t n = 1; n <= L; ++n) out[n - 1] = std::pow(static_cast<double>(n), -alpha);
      break;
    }
    case SymbolKind::completely_multiplicative: {
      const auto& cm = *f.get_if<CompletelyMultiplicative>();
      SmallestFactorSieve sieve(L);
      out[0] = 1.0;
      for (std::uint64_t n = 2; n <= L; ++n) {
        const std::uint64_t t = sieve.smallest_factor(n);
        out[n - 1] = out[n / t - 1] * detail::cm_prime_value(cm, t);
      }
      break;
    }
    case SymbolKind::multiplicative: {
      const auto& m = *f.get_if<Multiplicative>();
      SmallestFactorSieve sieve(L);
      out[0] = 1.0;
      for (std::uint64_t n = 2; n <= L; ++n) {
        const std::uint64_t t = sieve.smallest_factor(n);
        std::uint64_t rest = n;
        std::uint32_t e = 0;
        while (rest % t == 0) {
          rest /= t;
          ++e;
        }
        out[n - 1] = out[rest - 1] * detail::multiplicative_lookup(m, t, e);
      }
      break;
    }
    default:
      for (std::uint64_t n = 1; n <= L; ++n) out[n - 1] = evaluate(f, PositiveRational(n, 1));
  }
  return out;
}

/// f at a prime t (used by Euler-product formulas for multiplicative symbols).
inline double value_at_prime(const SymbolSpec& f, std::uint64_t t) {
  return evaluate(f, PositiveRational(t, 1));
}

// ---------------------------------------------------------------------------
// Support enumeration
// ---------------------------------------------------------------------------

/// Calls fn(q, f(q)) for every reduced q = u/v with u, v <= bound and
/// f(q) != 0, in support order (max(u, v), then u, then v).
template <class Fn>
void for_each_support_point(const SymbolSpec& f, std::uint64_t bound, Fn&& fn) {
  if (bound == 0) return;
  switch (f.kind()) {
    case SymbolKind::product_power: {
      const auto& pp = *f.get_if<ProductPower>();
      std::vector<double> num_pow(bound + 1), den_pow(bound + 1);
      for (std::uint64_t n = 1; n <= bound; ++n) {
        num_pow[n] = std::pow(static_cast<double>(n), -pp.alpha);
        den_pow[n] = std::pow(static_cast<double>(n), -pp.beta);
      }
      for (std::uint64_t m = 1; m <= bound; ++m) {
        if (m == 1) {
          fn(PositiveRational(1, 1), 1.0);
          continue;
        }
        for (std::uint64_t u = 1; u < m; ++u) {
          if (std::gcd(u, m) == 1) fn(PositiveRational(u, m), num_pow[u] * den_pow[m]);
        }
        for (std::uint64_t v = 1; v < m; ++v) {
          if (std::gcd(v, m) == 1) fn(PositiveRational(m, v), num_pow[m] * den_pow[v]);
        }
      }
      return;
    }
    case SymbolKind::tabulated_rationals: {
      std::vector<std::pair<PositiveRational, double>> pts;
      for (const auto& [q, v] : f.get_if<TabulatedRationals>()->values) {
        if (v != 0.0 && q.num() <= bound && q.den() <= bound) pts.emplace_back(q, v);
      }
      std::sort(pts.begin(), pts.end(),
                [](const auto& a, const auto& b) { return support_order(a.first, b.first); });
      for (const auto& [q, v] : pts) fn(q, v);
      return;
    }
    case SymbolKind::tabulated_naturals: {
      for (const auto& [n, v] : f.get_if<TabulatedNaturals>()->values) {
        if (n > bound) break;
        if (v != 0.0) fn(PositiveRational(n, 1), v);
      }
      return;
    }
    default: {
      const auto vals = values_on_naturals(f, bound);
      for (std::uint64_t n = 1; n <= bound; ++n) {
        if (vals[n - 1] != 0.0) fn(PositiveRational(n, 1), vals[n - 1]);
      }
    }
  }
}

}  // namespace mtoeplitz

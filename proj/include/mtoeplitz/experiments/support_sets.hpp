#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/numtheory.hpp"

namespace mtoeplitz {

/// {2^k : k >= 1}.
struct DyadicPowers {
  bool operator==(const DyadicPowers&) const = default;
};
/// Products of primorials other than 1: n = 2^{a_1} 3^{a_2} ... p_j^{a_j}
/// over consecutive primes with a_1 >= a_2 >= ... >= a_j >= 1.
struct PrimorialMultiples {
  bool operator==(const PrimorialMultiples&) const = default;
};
/// n >= 1 whose prime factors are all <= bound.
struct SmoothNumbers {
  std::uint64_t bound = 5;
  bool operator==(const SmoothNumbers&) const = default;
};
/// n with d(n) >= threshold.
struct DivisorRich {
  std::uint64_t threshold = 16;
  bool operator==(const DivisorRich&) const = default;
};
struct ExplicitList {
  std::vector<std::uint64_t> values;
  bool operator==(const ExplicitList&) const = default;
};
struct AllNaturals {
  bool operator==(const AllNaturals&) const = default;
};
struct Primes {
  bool operator==(const Primes&) const = default;
};

using SupportSetSpec = std::variant<DyadicPowers, PrimorialMultiples, SmoothNumbers, DivisorRich,
                                    ExplicitList, AllNaturals, Primes>;

inline std::string describe(const SupportSetSpec& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, DyadicPowers>) return "dyadic";
        if constexpr (std::is_same_v<V, PrimorialMultiples>) return "primorial";
        if constexpr (std::is_same_v<V, SmoothNumbers>) return "smooth:" + std::to_string(v.bound);
        if constexpr (std::is_same_v<V, DivisorRich>) return "rich:" + std::to_string(v.threshold);
        if constexpr (std::is_same_v<V, ExplicitList>) {
          std::string out = "list:";
          for (std::size_t i = 0; i < v.values.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(v.values[i]);
          }
          return out;
        }
        if constexpr (std::is_same_v<V, AllNaturals>) return "all";
        if constexpr (std::is_same_v<V, Primes>) return "primes";
      },
      s);
}

/// Inverse of describe().
inline SupportSetSpec parse_support_set(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw PreconditionFailed("bad number '" + s + "' in support set");
    return static_cast<std::uint64_t>(v);
  };
  if (head == "dyadic") return DyadicPowers{};
  if (head == "primorial") return PrimorialMultiples{};
  if (head == "smooth") return SmoothNumbers{arg.empty() ? 5 : number(arg)};
  if (head == "rich") return DivisorRich{arg.empty() ? 16 : number(arg)};
  if (head == "all") return AllNaturals{};
  if (head == "primes") return Primes{};
  if (head == "list") {
    ExplicitList l;
    std::size_t start = 0;
    while (start <= arg.size()) {
      const auto comma = arg.find(',', start);
      l.values.push_back(number(arg.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    std::sort(l.values.begin(), l.values.end());
    l.values.erase(std::unique(l.values.begin(), l.values.end()), l.values.end());
    if (l.values.front() == 0) throw PreconditionFailed("support list entries must be >= 1");
    return l;
  }
  throw PreconditionFailed("unknown support set '" + text + "'");
}

inline bool contains(const SupportSetSpec& s, std::uint64_t n) {
  if (n == 0) return false;
  return std::visit(
      [n](const auto& v) -> bool {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, DyadicPowers>) return n >= 2 && (n & (n - 1)) == 0;
        if constexpr (std::is_same_v<V, PrimorialMultiples>) {
          if (n < 2) return false;
          const auto f = factorize(n);
          const auto primes = sieve_primes(f.parts().back().prime);
          if (primes.size() != f.size()) return false;
          for (std::size_t i = 1; i < f.size(); ++i) {
            if (f[i].exponent > f[i - 1].exponent) return false;
          }
          return true;
        }
        if constexpr (std::is_same_v<V, SmoothNumbers>) {
          const auto f = factorize(n);
          return f.empty() || f.parts().back().prime <= v.bound;
        }
        if constexpr (std::is_same_v<V, DivisorRich>) return divisor_count(n) >= v.threshold;
        if constexpr (std::is_same_v<V, ExplicitList>) {
          return std::binary_search(v.values.begin(), v.values.end(), n);
        }
        if constexpr (std::is_same_v<V, AllNaturals>) return true;
        if constexpr (std::is_same_v<V, Primes>) return is_prime(n);
      },
      s);
}

struct SupportPoint {
  std::uint64_t n;
  std::uint32_t divisors;  // d(n)
  bool operator==(const SupportPoint&) const = default;
};

/// Largest X accepted by the sieve-based enumerations.
inline constexpr std::uint64_t kSupportSieveLimit = 200'000'000;

/// d(n) for n = 0..X (entry 0 unused), by the multiples sieve.
inline std::vector<std::uint16_t> divisor_count_table(std::uint64_t X) {
  if (X > kSupportSieveLimit) throw ResourceLimit("divisor-count sieve beyond " + std::to_string(kSupportSieveLimit));
  std::vector<std::uint16_t> d(X + 1, 0);
  for (std::uint64_t k = 1; k <= X; ++k) {
    for (std::uint64_t n = k; n <= X; n += k) ++d[n];
  }
  return d;
}

namespace detail {

// Numbers <= X with exponent vectors over `primes` (recursively), recording d(n).
template <class Admit>
void generate_by_exponents(const std::vector<std::uint64_t>& primes, std::uint64_t X, Admit&& admit,
                           std::vector<SupportPoint>& out) {
  std::vector<std::uint32_t> exps;
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t n, std::uint64_t d) -> void {
    if (i == primes.size()) {
      if (admit(exps)) out.push_back({n, static_cast<std::uint32_t>(d)});
      return;
    }
    std::uint64_t m = n;
    for (std::uint32_t e = 0;; ++e) {
      exps.push_back(e);
      self(self, i + 1, m, d * (e + 1));
      exps.pop_back();
      if (m > X / primes[i]) break;
      m *= primes[i];
    }
  };
  rec(rec, 0, 1, 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
}

}  // namespace detail

/// Members n <= X in ascending order, with d(n).
inline std::vector<SupportPoint> enumerate_support(const SupportSetSpec& s, std::uint64_t X) {
  std::vector<SupportPoint> out;
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, DyadicPowers>) {
          std::uint32_t k = 1;
          for (std::uint64_t n = 2; n <= X; n *= 2, ++k) {
            out.push_back({n, k + 1});
            if (n > X / 2) break;
          }
        } else if constexpr (std::is_same_v<V, PrimorialMultiples>) {
          std::vector<std::uint64_t> primes;
          std::uint64_t primorial = 1;
          for (std::uint64_t t : sieve_primes(64)) {
            if (primorial > X / t) break;
            primorial *= t;
            primes.push_back(t);
          }
          detail::generate_by_exponents(
              primes, X,
              [](const std::vector<std::uint32_t>& e) {
                if (e.empty() || e[0] == 0) return false;
                for (std::size_t i = 1; i < e.size(); ++i) {
                  if (e[i] > e[i - 1]) return false;
                }
                return true;
              },
              out);
        } else if constexpr (std::is_same_v<V, SmoothNumbers>) {
          detail::generate_by_exponents(sieve_primes(v.bound), X,
                                        [](const std::vector<std::uint32_t>&) { return true; }, out);
        } else if constexpr (std::is_same_v<V, ExplicitList>) {
          for (std::uint64_t n : v.values) {
            if (n <= X) out.push_back({n, static_cast<std::uint32_t>(divisor_count(n))});
          }
        } else {
          const auto d = divisor_count_table(X);
          for (std::uint64_t n = 1; n <= X; ++n) {
            bool member = false;
            if constexpr (std::is_same_v<V, AllNaturals>) member = true;
            if constexpr (std::is_same_v<V, Primes>) member = d[n] == 2;
            if constexpr (std::is_same_v<V, DivisorRich>) member = d[n] >= v.threshold;
            if (member) out.push_back({n, d[n]});
          }
        }
      },
      s);
  return out;
}

}  // namespace mtoeplitz

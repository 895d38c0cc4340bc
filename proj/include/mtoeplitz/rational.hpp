#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "mtoeplitz/error.hpp"

namespace mtoeplitz {

/// Reduced fraction u/v with u, v >= 1 and gcd(u, v) = 1.
class PositiveRational {
 public:
  PositiveRational() = default;

  PositiveRational(std::uint64_t num, std::uint64_t den) {
    if (num == 0 || den == 0) {
      throw PreconditionFailed("positive rational needs numerator and denominator >= 1");
    }
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static PositiveRational integer(std::uint64_t n) { return {n, 1}; }

  /// Parses "u/v" or "u".
  static PositiveRational parse(std::string_view text) {
    auto read = [&](std::string_view part) {
      std::uint64_t v = 0;
      const auto* first = part.data();
      const auto* last = part.data() + part.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{} || ptr != last || part.empty()) {
        throw PreconditionFailed("malformed rational '" + std::string(text) + "'");
      }
      return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return {read(text), 1};
    return {read(text.substr(0, slash)), read(text.substr(slash + 1))};
  }

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  bool operator==(const PositiveRational&) const = default;

  /// Map-key ordering (lexicographic on (u, v)); not numeric order.
  bool operator<(const PositiveRational& o) const noexcept {
    return num_ != o.num_ ? num_ < o.num_ : den_ < o.den_;
  }

 private:
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
};

/// Enumeration order of Q+ support: max(u, v) ascending, then u, then v.
inline bool support_order(const PositiveRational& a, const PositiveRational& b) noexcept {
  const auto ma = std::max(a.num(), a.den());
  const auto mb = std::max(b.num(), b.den());
  if (ma != mb) return ma < mb;
  if (a.num() != b.num()) return a.num() < b.num();
  return a.den() < b.den();
}

}  // namespace mtoeplitz

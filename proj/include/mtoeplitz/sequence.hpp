#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "mtoeplitz/error.hpp"

namespace mtoeplitz {

/// Finite section x_1..x_N of a sequence. Indexing is 1-based to match the
/// arithmetic (divisibility) structure of the operators acting on it.
///
/// `space()` records which l^p space the sequence is regarded as living in;
/// it is a tag only and does not influence any computation.
template <class Scalar>
class Sequence {
 public:
  using value_type = Scalar;

  Sequence() = default;
  explicit Sequence(std::size_t length, Scalar fill = Scalar{}) : entries_(length, fill) {}
  explicit Sequence(std::vector<Scalar> entries, double space = 2.0)
      : entries_(std::move(entries)), space_(space) {}

  static Sequence unit(std::size_t length, std::uint64_t index) {
    if (index < 1 || index > length) {
      throw PreconditionFailed("unit vector index outside 1..N");
    }
    Sequence e(length);
    e(index) = Scalar{1};
    return e;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Scalar& operator()(std::uint64_t n) { return entries_[n - 1]; }
  const Scalar& operator()(std::uint64_t n) const { return entries_[n - 1]; }

  /// Value at n, with the implicit zero beyond the truncation.
  Scalar at_or_zero(std::uint64_t n) const noexcept {
    return (n >= 1 && n <= entries_.size()) ? entries_[n - 1] : Scalar{};
  }

  std::span<const Scalar> values() const noexcept { return entries_; }
  std::span<Scalar> values() noexcept { return entries_; }
  const std::vector<Scalar>& vector() const noexcept { return entries_; }

  double space() const noexcept { return space_; }
  void set_space(double p) noexcept { space_ = p; }

  /// First `length` entries (zero padded if the sequence is shorter).
  Sequence prefix(std::size_t length) const {
    Sequence out(length);
    std::copy_n(entries_.begin(), std::min(length, entries_.size()), out.entries_.begin());
    out.space_ = space_;
    return out;
  }

  bool operator==(const Sequence&) const = default;

 private:
  std::vector<Scalar> entries_;
  double space_ = 2.0;
};

using TruncatedSequence = Sequence<double>;
using ComplexSequence = Sequence<std::complex<double>>;

/// Finitely supported sequence stored as (index, value) pairs, ascending.
struct SparseEntry {
  std::uint64_t index;
  double value;
  bool operator==(const SparseEntry&) const = default;
};
using SparseSequence = std::vector<SparseEntry>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace mtoeplitz

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtoeplitz/error.hpp"
#include "mtoeplitz/numtheory.hpp"
#include "mtoeplitz/rational.hpp"
#include "mtoeplitz/sequence.hpp"
#include "mtoeplitz/summation.hpp"
#include "mtoeplitz/symbol.hpp"

namespace mtoeplitz {

/// Largest number of entries build_matrix will materialize (4096 x 4096).
inline constexpr std::uint64_t kDenseEntryBudget = std::uint64_t{1} << 24;

/// N x N section of A_f, a_{ij} = f(i/j), stored row-major.
class TruncatedMatrix {
 public:
  TruncatedMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {
    nonnegative_ = std::all_of(entries_.begin(), entries_.end(), [](double v) { return v >= 0; });
    lower_triangular_ = true;
    for (std::size_t i = 0; i < n_ && lower_triangular_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (entries_[i * n_ + j] != 0.0) {
          lower_triangular_ = false;
          break;
        }
      }
    }
  }

  std::size_t dimension() const noexcept { return n_; }
  bool nonnegative() const noexcept { return nonnegative_; }
  bool lower_triangular() const noexcept { return lower_triangular_; }

  /// 1-based entry a_{ij}.
  double operator()(std::size_t i, std::size_t j) const { return entries_[(i - 1) * n_ + (j - 1)]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(entries_).subspan((i - 1) * n_, n_);
  }

  const std::vector<double>& entries() const noexcept { return entries_; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
  bool nonnegative_ = true;
  bool lower_triangular_ = true;
};

namespace detail {

// Power tables u^{-alpha}, v^{-beta} for ProductPower evaluation by gcd.
struct ProductPowerTables {
  std::vector<double> num_pow, den_pow;
  ProductPowerTables(const ProductPower& pp, std::uint64_t L) : num_pow(L + 1), den_pow(L + 1) {
    for (std::uint64_t n = 1; n <= L; ++n) {
      num_pow[n] = std::pow(static_cast<double>(n), -pp.alpha);
      den_pow[n] = std::pow(static_cast<double>(n), -pp.beta);
    }
  }
  double operator()(std::uint64_t n, std::uint64_t k) const {
    const std::uint64_t g = std::gcd(n, k);
    return num_pow[n / g] * den_pow[k / g];
  }
};

inline void check_dense_budget(std::uint64_t rows, std::uint64_t cols, std::uint64_t budget) {
  if (rows != 0 && cols > budget / rows) {
    throw MatrixBudgetExceeded("dense " + std::to_string(rows) + "x" + std::to_string(cols) +
                               " section exceeds the memory budget; use the matrix-free apply");
  }
}

}  // namespace detail

inline TruncatedMatrix build_matrix(const SymbolSpec& f, std::size_t N,
                                    std::uint64_t budget = kDenseEntryBudget) {
  if (N == 0) throw PreconditionFailed("build_matrix: N must be >= 1");
  detail::check_dense_budget(N, N, budget);
  std::vector<double> a(N * N, 0.0);
  if (f.supported_on_naturals()) {
    const auto vals = values_on_naturals(f, N);
    for (std::size_t j = 1; j <= N; ++j) {
      for (std::size_t i = j; i <= N; i += j) a[(i - 1) * N + (j - 1)] = vals[i / j - 1];
    }
  } else if (const auto* pp = f.get_if<ProductPower>()) {
    detail::ProductPowerTables tab(*pp, N);
    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t j = 1; j <= N; ++j) a[(i - 1) * N + (j - 1)] = tab(i, j);
    }
  } else {
    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t j = 1; j <= N; ++j) a[(i - 1) * N + (j - 1)] = evaluate(f, i, j);
    }
  }
  TruncatedMatrix m(N, std::move(a));
  if (f.supported_on_naturals() && !m.lower_triangular()) {
    throw std::logic_error("naturals-supported symbol produced a non-triangular section");
  }
  return m;
}

enum class ApplyPath { automatic, dense, fast };

namespace detail {

template <class Acc>
TruncatedSequence collect(const std::vector<Acc>& acc, double space) {
  TruncatedSequence y(acc.size());
  for (std::size_t n = 1; n <= acc.size(); ++n) y(n) = acc[n - 1].value();
  y.set_space(space);
  return y;
}

// Dense route shared by apply and apply_adjoint: rows n <= M, columns k <= N,
// entry f(n/k) (or f(k/n) when transposed), summed with k ascending.
inline TruncatedSequence dense_apply(const SymbolSpec& f, const TruncatedSequence& x,
                                     std::size_t M, bool transpose) {
  const std::size_t N = x.size();
  const std::size_t D = std::max(N, M);
  const auto A = build_matrix(f, D);
  std::vector<CompensatedSum> acc(M);
  for (std::size_t n = 1; n <= M; ++n) {
    for (std::size_t k = 1; k <= N; ++k) acc[n - 1].add((transpose ? A(k, n) : A(n, k)) * x(k));
  }
  return collect(acc, x.space());
}

}  // namespace detail

/// y_n = sum_{k <= N} f(n/k) x_k for n = 1..M.
///
/// The fast path exploits divisibility for symbols supported on the naturals:
/// for each k and each multiple n = mk <= M it accumulates f(m) x_k, so each
/// y_n receives its terms in the same k-ascending order as the dense product.
/// Q+ symbols with a finite table iterate over their atoms; ProductPower is
/// evaluated entrywise without materializing the matrix.
inline TruncatedSequence apply(const SymbolSpec& f, const TruncatedSequence& x, std::size_t M = 0,
                               ApplyPath path = ApplyPath::automatic) {
  const std::size_t N = x.size();
  if (N == 0) throw PreconditionFailed("apply: input sequence is empty");
  if (M == 0) M = N;
  if (path == ApplyPath::dense) return detail::dense_apply(f, x, M, false);

  std::vector<CompensatedSum> acc(M);
  if (f.supported_on_naturals()) {
    const auto vals = values_on_naturals(f, M);
    for (std::uint64_t k = 1; k <= N && k <= M; ++k) {
      const double xk = x(k);
      for (std::uint64_t m = 1; m * k <= M; ++m) acc[m * k - 1].add(vals[m - 1] * xk);
    }
  } else if (const auto* pp = f.get_if<ProductPower>()) {
    detail::ProductPowerTables tab(*pp, std::max(N, M));
    for (std::uint64_t n = 1; n <= M; ++n) {
      for (std::uint64_t k = 1; k <= N; ++k) acc[n - 1].add(tab(n, k) * x(k));
    }
  } else {
    // f(n/k) = f(u/v) iff n = u j, k = v j.
    for (const auto& [q, w] : f.get_if<TabulatedRationals>()->values) {
      if (w == 0.0) continue;
      for (std::uint64_t j = 1; j * q.num() <= M && j * q.den() <= N; ++j) {
        acc[j * q.num() - 1].add(w * x(j * q.den()));
      }
    }
  }
  return detail::collect(acc, x.space());
}

/// y_n = sum_{k <= N} f(k/n) x_k for n = 1..M (the transpose of apply).
inline TruncatedSequence apply_adjoint(const SymbolSpec& f, const TruncatedSequence& x,
                                       std::size_t M = 0, ApplyPath path = ApplyPath::automatic) {
  const std::size_t N = x.size();
  if (N == 0) throw PreconditionFailed("apply_adjoint: input sequence is empty");
  if (M == 0) M = N;
  if (path == ApplyPath::dense) return detail::dense_apply(f, x, M, true);

  std::vector<CompensatedSum> acc(M);
  if (f.supported_on_naturals()) {
    const auto vals = values_on_naturals(f, N);
    for (std::uint64_t n = 1; n <= M; ++n) {
      for (std::uint64_t m = 1; m * n <= N; ++m) acc[n - 1].add(vals[m - 1] * x(m * n));
    }
  } else if (const auto* pp = f.get_if<ProductPower>()) {
    detail::ProductPowerTables tab(*pp, std::max(N, M));
    for (std::uint64_t n = 1; n <= M; ++n) {
      for (std::uint64_t k = 1; k <= N; ++k) acc[n - 1].add(tab(k, n) * x(k));
    }
  } else {
    for (const auto& [q, w] : f.get_if<TabulatedRationals>()->values) {
      if (w == 0.0) continue;
      for (std::uint64_t j = 1; j * q.den() <= M && j * q.num() <= N; ++j) {
        acc[j * q.den() - 1].add(w * x(j * q.num()));
      }
    }
  }
  return detail::collect(acc, x.space());
}

/// Image of the unit vector e_c truncated to n <= M, i.e. y_n = f(n/c),
/// without allocating x (c may exceed M).
inline TruncatedSequence column(const SymbolSpec& f, std::uint64_t c, std::size_t M) {
  if (c == 0 || M == 0) throw PreconditionFailed("column: c and M must be >= 1");
  TruncatedSequence y(M);
  if (f.supported_on_naturals()) {
    if (c <= M) {
      const auto vals = values_on_naturals(f, M / c);
      for (std::uint64_t m = 1; m * c <= M; ++m) y(m * c) = vals[m - 1];
    }
    return y;
  }
  for (std::uint64_t n = 1; n <= M; ++n) y(n) = evaluate(f, n, c);
  return y;
}

// ---------------------------------------------------------------------------
// Compression onto an index set
// ---------------------------------------------------------------------------

/// P_I A_f P_I for a finite index set I, stored in compressed-row form.
/// Row r / column s refer to positions in the sorted index list.
class CompressedOperator {
 public:
  CompressedOperator(const SymbolSpec& f, std::vector<std::uint64_t> indices,
                     std::uint64_t budget = kDenseEntryBudget)
      : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (indices_.empty() || indices_.front() == 0) {
      throw PreconditionFailed("compressed operator needs a nonempty index set of naturals");
    }
    const std::size_t n = indices_.size();
    row_start_.assign(n + 1, 0);
    if (f.supported_on_naturals()) {
      std::unordered_map<std::uint64_t, std::uint32_t> position;
      position.reserve(n * 2);
      for (std::size_t i = 0; i < n; ++i) position.emplace(indices_[i], static_cast<std::uint32_t>(i));
      const bool prefix = indices_.back() == n;
      std::vector<double> prefix_vals;
      if (prefix) prefix_vals = values_on_naturals(f, n);
      for (std::size_t r = 0; r < n; ++r) {
        const std::uint64_t row = indices_[r];
        std::vector<std::uint64_t> divs =
            prefix ? divisors(row) : divisors(factorize(row));
        for (std::uint64_t k : divs) {
          const auto it = position.find(k);
          if (it == position.end()) continue;
          const double v = prefix ? prefix_vals[row / k - 1] : evaluate(f, row / k, 1);
          if (v == 0.0) continue;
          cols_.push_back(it->second);
          vals_.push_back(v);
        }
        row_start_[r + 1] = cols_.size();
      }
    } else {
      detail::check_dense_budget(n, n, budget);
      std::optional<detail::ProductPowerTables> tab;
      if (const auto* pp = f.get_if<ProductPower>(); pp && indices_.back() <= budget) {
        tab.emplace(*pp, indices_.back());
      }
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
          const double v = tab ? (*tab)(indices_[r], indices_[s]) : evaluate(f, indices_[r], indices_[s]);
          if (v == 0.0) continue;
          cols_.push_back(static_cast<std::uint32_t>(s));
          vals_.push_back(v);
        }
        row_start_[r + 1] = cols_.size();
      }
    }
  }

  std::size_t dimension() const noexcept { return indices_.size(); }
  std::size_t nonzeros() const noexcept { return vals_.size(); }
  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(dimension());
    for (std::size_t r = 0; r < dimension(); ++r) {
      CompensatedSum acc;
      for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) acc.add(vals_[e] * x[cols_[e]]);
      y[r] = acc.value();
    }
    return y;
  }

  std::vector<double> apply_transpose(std::span<const double> y) const {
    std::vector<CompensatedSum> acc(dimension());
    for (std::size_t r = 0; r < dimension(); ++r) {
      for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) acc[cols_[e]].add(vals_[e] * y[r]);
    }
    std::vector<double> x(dimension());
    for (std::size_t s = 0; s < dimension(); ++s) x[s] = acc[s].value();
    return x;
  }

 private:
  std::vector<std::uint64_t> indices_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
};

}  // namespace mtoeplitz

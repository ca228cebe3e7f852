#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "int128.hpp"

namespace eqmat {

using IntVector = std::vector<i128>;

/*
  Dense, row-major, immutable integer matrix. The weight bound
  max |a_ij| is computed once at construction.
*/
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<i128> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be >= 1");
    if (entries_.size() != rows_ * cols_)
      throw DimensionError("expected " + std::to_string(rows_ * cols_) + " entries, got " +
                           std::to_string(entries_.size()));
    for (i128 a : entries_) {
      i128 mag = abs128(a);
      if (mag > weight_bound_) weight_bound_ = mag;
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<i128>>& rows) {
    if (rows.empty()) throw DimensionError("matrix needs at least one row");
    std::vector<i128> flat;
    flat.reserve(rows.size() * rows.front().size());
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw DimensionError("ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return IntMatrix(rows.size(), rows.front().size(), std::move(flat));
  }

  static IntMatrix identity(std::size_t n) {
    std::vector<i128> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return IntMatrix(n, n, std::move(e));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  i128 weight_bound() const noexcept { return weight_bound_; }

  i128 operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const i128> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::span<const i128> entries() const noexcept { return entries_; }

  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  /* Submatrix on the given rows (in the given order). */
  IntMatrix select_rows(std::span<const std::size_t> which) const {
    std::vector<i128> e;
    e.reserve(which.size() * cols_);
    for (std::size_t i : which) {
      if (i >= rows_) throw DimensionError("row index out of range");
      auto r = row(i);
      e.insert(e.end(), r.begin(), r.end());
    }
    return IntMatrix(which.size(), cols_, std::move(e));
  }

  IntMatrix select_columns(std::span<const std::size_t> which) const {
    std::vector<i128> e;
    e.reserve(rows_ * which.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j : which) {
        if (j >= cols_) throw DimensionError("column index out of range");
        e.push_back((*this)(i, j));
      }
    return IntMatrix(rows_, which.size(), std::move(e));
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<i128> entries_;
  i128 weight_bound_ = 0;
};

/* Arity q: kernel alphabet {-(q-1),...,q-1}, encoding alphabet {0,...,q-1}. */
struct Alphabet {
  int q = 2;

  explicit Alphabet(int arity) : q(arity) {
    if (q < 2) throw PreconditionError("arity q must be >= 2");
  }
  int kernel_min() const noexcept { return -(q - 1); }
  int kernel_max() const noexcept { return q - 1; }
  int kernel_size() const noexcept { return 2 * q - 1; }
};

/* A nonzero kernel vector over the kernel alphabet. */
struct Counterexample {
  IntVector x;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/* Recursion metadata of a Sylvester-type construction. */
struct ConstructionTrace {
  std::int64_t m0 = 1;
  std::int64_t n0 = 1;
  std::int64_t k = 0;
  std::int64_t q = 2;

  // m_k = q^k m0
  i128 rows() const { return checked_mul(checked_pow(q, static_cast<unsigned>(k)), m0); }

  // n_k = q^k n0 (k m0 / (q n0) + 1) = q^k n0 + k q^(k-1) m0
  i128 cols() const {
    i128 qk = checked_pow(q, static_cast<unsigned>(k));
    if (k == 0) return n0;
    i128 qk1 = checked_pow(q, static_cast<unsigned>(k - 1));
    return checked_add(checked_mul(qk, n0), checked_mul(checked_mul(k, qk1), m0));
  }

  friend bool operator==(const ConstructionTrace&, const ConstructionTrace&) = default;
};

/* Exact A*x with checked accumulation. */
inline IntVector matvec(const IntMatrix& a, std::span<const i128> x) {
  if (x.size() != a.cols())
    throw DimensionError("matvec: vector length " + std::to_string(x.size()) + " != columns " +
                         std::to_string(a.cols()));
  IntVector z(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    i128 acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0 && r[j] != 0) acc = checked_add(acc, checked_mul(r[j], x[j]));
    z[i] = acc;
  }
  return z;
}

inline IntVector to_int_vector(std::span<const std::int64_t> v) { return IntVector(v.begin(), v.end()); }

}  // namespace eqmat

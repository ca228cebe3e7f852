#pragma once

// Test-only reference implementations. They deliberately avoid the
// library's odometer enumeration, Bareiss elimination and circuit
// evaluator so the suites compare two independent routes.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include <eqmat/eqmat.hpp>

namespace oracle {

using eqmat::i128;
using eqmat::IntMatrix;
using eqmat::IntVector;

inline std::vector<long long> narrow(const IntVector& v) { return {v.begin(), v.end()}; }

/* Recursive brute force in lexicographic order, first coordinate outermost. */
inline std::optional<IntVector> first_kernel_vector(const IntMatrix& a, int q) {
  const std::size_t n = a.cols();
  IntVector x(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
    if (j == n) {
      bool nonzero = false;
      for (auto v : x) nonzero = nonzero || v != 0;
      if (!nonzero) return false;
      for (auto v : eqmat::matvec(a, x))
        if (v != 0) return false;
      return true;
    }
    for (int d = -(q - 1); d <= q - 1; ++d) {
      x[j] = d;
      if (rec(j + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  for (auto v : x)
    if (v != 0) {
      if (v < 0)
        for (auto& u : x) u = -u;
      break;
    }
  return x;
}

inline bool has_kernel_vector(const IntMatrix& a, int q) { return first_kernel_vector(a, q).has_value(); }

/* Injectivity on {0..q-1}^n by a map of images. */
inline bool injective(const IntMatrix& a, int q) {
  const std::size_t n = a.cols();
  std::map<std::vector<long long>, int> seen;
  IntVector x(n, 0);
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= q;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t u = t;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = static_cast<i128>(u % q);
      u /= q;
    }
    if (seen[narrow(eqmat::matvec(a, x))]++) return false;
  }
  return true;
}

/* Cofactor expansion along the first row. */
inline i128 cofactor_det(const std::vector<std::vector<i128>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  i128 det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<i128>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<i128> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    i128 term = m[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

inline i128 cofactor_det(const IntMatrix& a) {
  std::vector<std::vector<i128>> m(a.rows(), std::vector<i128>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return cofactor_det(m);
}

/* Every m-row subset checked with the brute-force kernel search. */
inline bool rmds_naive(const IntMatrix& a, std::size_t m, int q) {
  const std::size_t rows = a.rows();
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (pick.size() == m) return !has_kernel_vector(a.select_rows(pick), q);
    for (std::size_t i = start; i < rows; ++i) {
      pick.push_back(i);
      bool ok = rec(i + 1);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

/* Memoised recursive evaluation straight from the gate definitions. */
inline i128 eval_recursive(const eqmat::ThresholdCircuit& c, const std::vector<int>& bits) {
  std::map<eqmat::GateId, i128> memo;
  for (std::size_t i = 0; i < c.inputs().size(); ++i) memo[c.inputs()[i]] = bits[i];
  std::function<i128(eqmat::GateId)> value = [&](eqmat::GateId id) -> i128 {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const auto& g = c.gate(id);
    i128 s = 0;
    for (const auto& e : g.fan_in) s += e.weight * value(e.source);
    i128 v = g.kind == eqmat::GateKind::LT      ? (s >= g.bias)
             : g.kind == eqmat::GateKind::Exact ? (s == g.bias)
                                                : s + g.bias;
    return memo[id] = v;
  };
  return value(c.output());
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<i128> e(rows * cols);
  for (auto& v : e) v = d(rng);
  return IntMatrix(rows, cols, std::move(e));
}

inline IntVector random_bits(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  IntVector x(n);
  for (auto& v : x) v = coin(rng) ? 1 : 0;
  return x;
}

}  // namespace oracle

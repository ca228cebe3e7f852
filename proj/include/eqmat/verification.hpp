#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "enumeration.hpp"
#include "matrix.hpp"

namespace eqmat {

enum class EqMode { Kernel, Injectivity };

struct EqVerdict {
  std::optional<Counterexample> counterexample;
  bool passed() const noexcept { return !counterexample.has_value(); }
};

struct MdsVerdict {
  std::optional<std::vector<std::size_t>> singular_columns;  // 0-based, lexicographically first
  bool passed() const noexcept { return !singular_columns.has_value(); }
};

struct RmdsVerdict {
  std::optional<std::vector<std::size_t>> failing_rows;  // 0-based
  std::optional<Counterexample> counterexample;
  bool passed() const noexcept { return !failing_rows.has_value(); }
};

namespace detail {

// Witnesses are reported with their first nonzero entry positive.
inline Counterexample normalized(IntVector x) {
  auto it = std::find_if(x.begin(), x.end(), [](i128 v) { return v != 0; });
  if (it != x.end() && *it < 0)
    for (auto& v : x) v = -v;
  return Counterexample{std::move(x)};
}

inline void check_cap(std::uint64_t required, const Limits& limits) {
  if (required > limits.cap) throw CapExceeded(required, limits.cap);
}

template <typename T>
std::uint64_t hash_image(const std::vector<T>& z) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 31;
  };
  for (T v : z) {
    if constexpr (sizeof(T) > 8) {
      mix(static_cast<std::uint64_t>(static_cast<unsigned __int128>(v)));
      mix(static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) >> 64));
    } else {
      mix(static_cast<std::uint64_t>(v));
    }
  }
  return h;
}

inline std::optional<Counterexample> first_kernel_vector(const IntMatrix& a, int q, const Limits& limits) {
  const Alphabet alpha(q);
  return with_accumulator(a, alpha.kernel_max(), [&]<typename T>() -> std::optional<Counterexample> {
    OdometerSpace<T> space(a, alpha.kernel_min(), alpha.kernel_max());
    const std::size_t prefix = prefix_for_threads(space.radix(), space.n, limits.threads);
    const std::uint64_t chunks = sat_pow(space.radix(), static_cast<unsigned>(prefix));
    std::vector<std::optional<IntVector>> hits(chunks);
    run_chunks(chunks, limits.threads, [&](std::uint64_t c) {
      return odometer_chunk(space, prefix, c, [&](const std::vector<int>& x, const std::vector<T>& z) {
        if (!std::all_of(z.begin(), z.end(), [](T v) { return v == 0; })) return false;
        if (std::all_of(x.begin(), x.end(), [](int v) { return v == 0; })) return false;
        hits[c] = IntVector(x.begin(), x.end());
        return true;
      });
    });
    for (auto& h : hits)
      if (h) return normalized(std::move(*h));
    return std::nullopt;
  });
}

inline std::optional<Counterexample> first_collision(const IntMatrix& a, int q, const Limits& limits) {
  return with_accumulator(a, q - 1, [&]<typename T>() -> std::optional<Counterexample> {
    OdometerSpace<T> space(a, 0, q - 1);
    const std::uint64_t total = sat_pow(space.radix(), static_cast<unsigned>(space.n));
    const std::size_t prefix = prefix_for_threads(space.radix(), space.n, limits.threads);
    const std::uint64_t chunks = sat_pow(space.radix(), static_cast<unsigned>(prefix));
    const std::uint64_t per_chunk = total / chunks;

    // (hash, lexicographic rank); rank doubles as the base-q index of x.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed(total);
    run_chunks(chunks, limits.threads, [&](std::uint64_t c) {
      std::uint64_t rank = c * per_chunk;
      odometer_chunk(space, prefix, c, [&](const std::vector<int>&, const std::vector<T>& z) {
        keyed[rank] = {hash_image(z), rank};
        ++rank;
        return false;
      });
      return false;
    });
    std::sort(keyed.begin(), keyed.end());

    auto digits_of = [&](std::uint64_t rank) {
      IntVector x(space.n);
      for (std::size_t j = space.n; j-- > 0;) {
        x[j] = static_cast<i128>(rank % space.radix());
        rank /= space.radix();
      }
      return x;
    };

    std::optional<std::pair<std::uint64_t, std::uint64_t>> best;  // (later, earlier)
    for (std::size_t i = 0; i < keyed.size();) {
      std::size_t j = i + 1;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
      if (j - i > 1) {
        // Same hash: group by exact image, ranks already ascending.
        std::vector<std::pair<IntVector, std::uint64_t>> images;
        for (std::size_t t = i; t < j; ++t) images.emplace_back(matvec(a, digits_of(keyed[t].second)), keyed[t].second);
        for (std::size_t u = 0; u < images.size(); ++u)
          for (std::size_t v = u + 1; v < images.size(); ++v)
            if (images[u].first == images[v].first) {
              // earliest pair for image u is (u, first v after it)
              if (!best || images[v].second < best->first) best = {images[v].second, images[u].second};
              break;
            }
      }
      i = j;
    }
    if (!best) return std::nullopt;
    IntVector later = digits_of(best->first), earlier = digits_of(best->second);
    for (std::size_t t = 0; t < later.size(); ++t) later[t] -= earlier[t];
    return normalized(std::move(later));
  });
}

// Injectivity mode stores one 16-byte record per vector.
inline constexpr std::uint64_t kInjectivityMemoryLimit = std::uint64_t{1} << 27;

inline std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

/* Advances a k-subset of {0..n-1} to its lexicographic successor. */
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0 && c[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace detail

/*
  Exhaustive EQ_q oracle.

  Kernel mode walks {-(q-1),...,q-1}^n \ {0} lexicographically (coordinate 1
  most significant, -(q-1) smallest) and reports the first kernel vector.
  Injectivity mode walks {0,...,q-1}^n and reports x - x' for the first x
  whose image repeats that of an earlier x'. The two modes agree on
  Pass/Fail: differences of encoding vectors cover the kernel alphabet.
*/
inline EqVerdict is_eq_q(const IntMatrix& a, int q, EqMode mode = EqMode::Kernel, const Limits& limits = {}) {
  const Alphabet alpha(q);
  const auto n = static_cast<unsigned>(a.cols());
  if (mode == EqMode::Kernel) {
    detail::check_cap(sat_pow(static_cast<std::uint64_t>(alpha.kernel_size()), n), limits);
    return EqVerdict{detail::first_kernel_vector(a, q, limits)};
  }
  const std::uint64_t required = sat_pow(static_cast<std::uint64_t>(q), n);
  detail::check_cap(required, limits);
  if (required > detail::kInjectivityMemoryLimit) throw CapExceeded(required, detail::kInjectivityMemoryLimit);
  return EqVerdict{detail::first_collision(a, q, limits)};
}

/* Bareiss fraction-free determinant with row pivoting; checked arithmetic. */
inline i128 determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<i128> m(a.entries().begin(), a.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> i128& { return m[i * n + j]; };
  i128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = checked_sub(checked_mul(at(i, j), at(k, k)), checked_mul(at(i, k), at(k, j))) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

/* Every m x m column submatrix must be nonsingular. */
inline MdsVerdict is_mds(const IntMatrix& a, const Limits& limits = {}) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m > n) throw DimensionError("is_mds needs rows <= columns");
  detail::check_cap(detail::binomial_sat(n, m), limits);
  std::vector<std::size_t> cols(m);
  for (std::size_t i = 0; i < m; ++i) cols[i] = i;
  do {
    if (determinant(a.select_columns(cols)) == 0) return MdsVerdict{cols};
  } while (detail::next_combination(cols, n));
  return MdsVerdict{};
}

/*
  RMDS_q check: every m-row submatrix must be EQ_q. The MDS rate
  rows/m may be fractional (a 5x8 matrix with m=4 has rate 5/4). Kernel vectors are
  enumerated once; each records which rows it annihilates, and a row set
  fails exactly when some kernel vector annihilates all of its rows. The
  witness for the lexicographically first failing row set is the first
  such kernel vector, i.e. the same one is_eq_q reports on that submatrix.
*/
inline RmdsVerdict is_rmds(const IntMatrix& a, std::size_t m, int q, const Limits& limits = {}) {
  if (m == 0 || a.rows() < m)
    throw DimensionError("row count " + std::to_string(a.rows()) + " is smaller than m=" + std::to_string(m));
  const Alphabet alpha(q);
  const std::size_t rows = a.rows();
  const std::size_t words = (rows + 63) / 64;
  detail::check_cap(sat_mul(sat_pow(static_cast<std::uint64_t>(alpha.kernel_size()), static_cast<unsigned>(a.cols())),
                            static_cast<std::uint64_t>(rows)),
                    limits);

  struct Hit {
    IntVector x;
    std::vector<std::uint64_t> mask;
  };
  auto hits = detail::with_accumulator(a, alpha.kernel_max(), [&]<typename T>() {
    detail::OdometerSpace<T> space(a, alpha.kernel_min(), alpha.kernel_max());
    const std::size_t prefix = detail::prefix_for_threads(space.radix(), space.n, limits.threads);
    const std::uint64_t chunks = sat_pow(space.radix(), static_cast<unsigned>(prefix));
    std::vector<std::vector<Hit>> per_chunk(chunks);
    detail::run_chunks(chunks, limits.threads, [&](std::uint64_t c) {
      detail::odometer_chunk(space, prefix, c, [&](const std::vector<int>& x, const std::vector<T>& z) {
        std::size_t zeros = 0;
        for (T v : z) zeros += v == 0;
        if (zeros < m || std::all_of(x.begin(), x.end(), [](int v) { return v == 0; })) return false;
        Hit h{IntVector(x.begin(), x.end()), std::vector<std::uint64_t>(words, 0)};
        for (std::size_t i = 0; i < rows; ++i)
          if (z[i] == 0) h.mask[i / 64] |= std::uint64_t{1} << (i % 64);
        per_chunk[c].push_back(std::move(h));
        return false;
      });
      return false;
    });
    std::vector<Hit> all;
    for (auto& v : per_chunk)
      for (auto& h : v) all.push_back(std::move(h));
    return all;
  });
  if (hits.empty()) return RmdsVerdict{};

  std::vector<std::size_t> subset(m);
  for (std::size_t i = 0; i < m; ++i) subset[i] = i;
  do {
    for (const auto& h : hits) {
      bool covers = std::all_of(subset.begin(), subset.end(),
                                [&](std::size_t r) { return (h.mask[r / 64] >> (r % 64)) & 1u; });
      if (covers) return RmdsVerdict{subset, detail::normalized(h.x)};
    }
  } while (detail::next_combination(subset, rows));
  return RmdsVerdict{};  // unreachable: any hit covers some m-subset
}

struct CrtResidueReport {
  IntVector image;                        // A x
  std::optional<std::size_t> failing_row;  // 0-based row whose prime does not divide (A x)_i
  bool passed() const noexcept { return !failing_row.has_value(); }
};

/*
  For x with sum 2^(i-1) x_i = 0, each (A x)_i must be divisible by p_i,
  because row i is congruent to the powers of two modulo p_i.
*/
inline CrtResidueReport crt_residue_check(const std::vector<std::int64_t>& primes, const IntMatrix& a,
                                          std::span<const i128> x) {
  if (x.size() != a.cols()) throw DimensionError("vector length does not match matrix columns");
  if (a.cols() > 126) throw PreconditionError("bit width too large");
  if (!(a == build_crt(static_cast<int>(a.cols()), primes)))
    throw PreconditionError("matrix is not the CRT matrix of the given primes");
  i128 weighted = 0;
  for (std::size_t j = 0; j < x.size(); ++j) weighted = checked_add(weighted, checked_mul(i128{1} << j, x[j]));
  if (weighted != 0) throw PreconditionError("x is not a solution of sum 2^(i-1) x_i = 0");
  CrtResidueReport report{matvec(a, x), std::nullopt};
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (report.image[i] % primes[i] != 0) {
      report.failing_row = i;
      break;
    }
  return report;
}

}  // namespace eqmat

#pragma once

// Lexicographic odometer enumeration of integer vectors over a digit
// range, maintaining z = A*x incrementally. Coordinate 0 is the most
// significant digit. The space is split into chunks by a fixed-length
// prefix; chunk order equals lexicographic order, which is what lets
// parallel callers reduce to a deterministic first hit.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "matrix.hpp"

namespace eqmat {

/* Work cap and parallelism for every exhaustive check. */
struct Limits {
  std::uint64_t cap = 100'000'000;
  unsigned threads = 1;
};

namespace detail {

/* Column-major copy of A narrowed to T, plus the digit range. */
template <typename T>
struct OdometerSpace {
  std::size_t m = 0;
  std::size_t n = 0;
  int lo = 0;  // smallest digit
  int hi = 0;  // largest digit
  std::vector<T> cols;  // cols[j * m + i] = a_ij

  OdometerSpace(const IntMatrix& a, int digit_lo, int digit_hi)
      : m(a.rows()), n(a.cols()), lo(digit_lo), hi(digit_hi), cols(a.rows() * a.cols()) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) cols[j * m + i] = static_cast<T>(a(i, j));
  }

  std::uint64_t radix() const { return static_cast<std::uint64_t>(hi - lo + 1); }
};

/*
  Visits every vector of the chunk identified by `chunk` (prefix of length
  `prefix_len`, digits base `radix`) in lexicographic order. The visitor
  gets (digits, z) and returns true to stop. Returns true if stopped.
*/
template <typename T, typename Visitor>
bool odometer_chunk(const OdometerSpace<T>& s, std::size_t prefix_len, std::uint64_t chunk, Visitor&& visit) {
  const std::size_t m = s.m, n = s.n;
  const std::uint64_t radix = s.radix();
  std::vector<int> x(n, s.lo);
  for (std::size_t p = prefix_len; p-- > 0;) {
    x[p] = s.lo + static_cast<int>(chunk % radix);
    chunk /= radix;
  }
  std::vector<T> z(m, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (x[j] != 0)
      for (std::size_t i = 0; i < m; ++i) z[i] += static_cast<T>(x[j]) * s.cols[j * m + i];

  const T span = static_cast<T>(s.hi - s.lo);
  for (;;) {
    if (visit(x, z)) return true;
    std::size_t j = n;
    while (j > prefix_len && x[j - 1] == s.hi) --j;
    if (j == prefix_len) return false;
    for (std::size_t t = j; t < n; ++t) {
      x[t] = s.lo;
      const T* c = &s.cols[t * m];
      for (std::size_t i = 0; i < m; ++i) z[i] -= span * c[i];
    }
    ++x[j - 1];
    const T* c = &s.cols[(j - 1) * m];
    for (std::size_t i = 0; i < m; ++i) z[i] += c[i];
  }
}

/* Prefix length giving enough chunks for the thread count (0 when single-threaded). */
inline std::size_t prefix_for_threads(std::uint64_t radix, std::size_t n, unsigned threads) {
  if (threads <= 1) return 0;
  std::size_t p = 0;
  std::uint64_t chunks = 1;
  while (p < n && chunks < 8ull * threads) {
    chunks *= radix;
    ++p;
  }
  return p;
}

/*
  Runs `work(chunk)` for every chunk index in [0, chunks) across `threads`
  workers. `work` returns true when its chunk produced a hit; chunks after
  the lowest hit index are skipped but never below it.
*/
template <typename Work>
void run_chunks(std::uint64_t chunks, unsigned threads, Work&& work) {
  if (threads <= 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c)
      if (work(c)) return;
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> lowest_hit{UINT64_MAX};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks || c > lowest_hit.load()) return;
      if (work(c)) {
        std::uint64_t cur = lowest_hit.load();
        while (c < cur && !lowest_hit.compare_exchange_weak(cur, c)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

/* Largest |A x| over the digit range, as a conservative overflow budget. */
inline i128 image_bound(const IntMatrix& a, int max_abs_digit) {
  i128 total = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    i128 s = 0;
    for (i128 v : a.row(i)) s = checked_add(s, abs128(v));
    total = std::max(total, s);
  }
  return checked_mul(total, checked_mul(max_abs_digit, 2));
}

/*
  Calls body.template operator()<T>() with T = int64_t when every value
  reachable during enumeration fits, else with i128; throws when even the
  128-bit budget is too small.
*/
template <typename Body>
decltype(auto) with_accumulator(const IntMatrix& a, int max_abs_digit, Body&& body) {
  i128 bound;
  try {
    bound = image_bound(a, max_abs_digit);
  } catch (const OverflowError&) {
    throw OverflowError("enumeration values exceed the 128-bit budget");
  }
  if (bound < (i128{1} << 62)) return body.template operator()<std::int64_t>();
  if (bound < (i128{1} << 125)) return body.template operator()<i128>();
  throw OverflowError("enumeration values exceed the 128-bit budget");
}

}  // namespace detail
}  // namespace eqmat

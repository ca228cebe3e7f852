#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>

#include "int128.hpp"

namespace eqmat {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw PreconditionError("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/*
  Rate and weight bounds for an m x n matrix with |a_ij| <= W:
    siegel_norm_bound  (sqrt(n) W)^(m/(n-m)), absent when n <= m
    ternary_rate_bound (1/2) log2(n) + 1, the best rate of a {-1,0,1} EQ matrix
    mds_alphabet_bound k^(k+1), the largest MDS rate over an alphabet of size k
  and, for the base-[1] construction at iteration k_iter,
    r_constr = k_iter/2 + 1, r_upper = (k_iter + 1 + log2(k_iter + 2)) / 2.
*/
struct BoundsReport {
  std::optional<double> siegel_norm_bound;
  double ternary_rate_bound = 0;
  i128 mds_alphabet_bound = 0;
  Rational r_constr;
  double r_upper = 0;
  double ratio = 0;
};

/* k^(k+1); throws OverflowError past the 128-bit budget. */
inline i128 mds_rate_bound(std::int64_t alphabet_size) {
  if (alphabet_size < 1) throw PreconditionError("alphabet size must be >= 1");
  return checked_pow(alphabet_size, static_cast<unsigned>(alphabet_size + 1));
}

/* True when r exceeds k^(k+1); saturates instead of overflowing. */
inline bool exceeds_mds_rate_bound(i128 r, std::int64_t alphabet_size) {
  try {
    return r > mds_rate_bound(alphabet_size);
  } catch (const OverflowError&) {
    return false;
  }
}

inline double siegel_norm_bound(std::int64_t n, std::int64_t m, double w) {
  return std::pow(std::sqrt(static_cast<double>(n)) * w, static_cast<double>(m) / static_cast<double>(n - m));
}

inline double ternary_rate_bound(std::int64_t n) { return 0.5 * std::log2(static_cast<double>(n)) + 1.0; }

inline Rational construction_rate(std::int64_t k_iter) { return Rational(k_iter + 2, 2); }

inline double construction_rate_upper(std::int64_t k_iter) {
  const double k = static_cast<double>(k_iter);
  return (k + 1.0 + std::log2(k + 2.0)) / 2.0;
}

inline BoundsReport bounds_report(std::int64_t n, std::int64_t m, double w, std::int64_t alphabet_size,
                                  std::int64_t k_iter) {
  if (n < 1 || m < 1) throw PreconditionError("n and m must be >= 1");
  if (k_iter < 0) throw PreconditionError("k_iter must be >= 0");
  BoundsReport r;
  if (n > m) r.siegel_norm_bound = siegel_norm_bound(n, m, w);
  r.ternary_rate_bound = ternary_rate_bound(n);
  r.mds_alphabet_bound = mds_rate_bound(alphabet_size);
  r.r_constr = construction_rate(k_iter);
  r.r_upper = construction_rate_upper(k_iter);
  r.ratio = r.r_upper / r.r_constr.value();
  return r;
}

}  // namespace eqmat

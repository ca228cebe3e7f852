#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "enumeration.hpp"

namespace eqmat {

enum class ReferenceKind { Equality, Comparison, Parity, ValueSet };

/*
  Boolean reference function. EQ and COMP take inputs x_1..x_n, y_1..y_n
  with X = sum 2^(i-1) x_i; PARITY and VALUE_SET take x_1..x_n.
*/
struct Reference {
  ReferenceKind kind = ReferenceKind::Equality;
  std::size_t n = 0;
  std::vector<i128> weights;  // VALUE_SET only
  std::set<i128> accepted;    // VALUE_SET only

  static Reference equality(std::size_t n) { return {ReferenceKind::Equality, n, {}, {}}; }
  static Reference comparison(std::size_t n) { return {ReferenceKind::Comparison, n, {}, {}}; }
  static Reference parity(std::size_t n) { return {ReferenceKind::Parity, n, {}, {}}; }
  static Reference value_set(std::vector<i128> w, const std::vector<i128>& s) {
    const std::size_t n = w.size();
    return {ReferenceKind::ValueSet, n, std::move(w), std::set<i128>(s.begin(), s.end())};
  }

  std::size_t input_count() const {
    return kind == ReferenceKind::Equality || kind == ReferenceKind::Comparison ? 2 * n : n;
  }

  int operator()(std::span<const int> bits) const {
    switch (kind) {
      case ReferenceKind::Equality:
      case ReferenceKind::Comparison: {
        i128 xv = 0, yv = 0;
        for (std::size_t i = n; i-- > 0;) {
          xv = xv * 2 + bits[i];
          yv = yv * 2 + bits[n + i];
        }
        return kind == ReferenceKind::Equality ? xv == yv : xv >= yv;
      }
      case ReferenceKind::Parity: {
        int p = 0;
        for (int b : bits) p ^= b;
        return p;
      }
      case ReferenceKind::ValueSet: {
        i128 s = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (bits[i]) s = checked_add(s, weights[i]);
        return accepted.count(s) ? 1 : 0;
      }
    }
    return 0;
  }
};

struct Mismatch {
  std::vector<int> assignment;
  i128 circuit_output = 0;
  int expected = 0;
};

struct CheckResult {
  std::optional<Mismatch> mismatch;
  std::uint64_t evaluations = 0;
  bool passed() const noexcept { return !mismatch.has_value(); }
};

/*
  Compares the circuit with the reference on every assignment, in
  lexicographic order with input 1 most significant; reports the first
  mismatch.
*/
inline CheckResult exhaustive_check(const ThresholdCircuit& c, const Reference& ref, const Limits& limits = {}) {
  const std::size_t inputs = c.inputs().size();
  if (inputs != ref.input_count())
    throw DimensionError("circuit has " + std::to_string(inputs) + " inputs, reference expects " +
                         std::to_string(ref.input_count()));
  if (inputs >= 63) throw CapExceeded(UINT64_MAX, limits.cap);
  const std::uint64_t total = std::uint64_t{1} << inputs;
  if (total > limits.cap) throw CapExceeded(total, limits.cap);

  CircuitEvaluator ev(c);
  std::vector<int> bits(inputs);
  for (std::uint64_t t = 0; t < total; ++t) {
    for (std::size_t i = 0; i < inputs; ++i) bits[i] = static_cast<int>((t >> (inputs - 1 - i)) & 1u);
    const i128 got = ev.run(bits);
    const int want = ref(bits);
    if (got != want) return CheckResult{Mismatch{bits, got, want}, t + 1};
  }
  return CheckResult{std::nullopt, total};
}

}  // namespace eqmat

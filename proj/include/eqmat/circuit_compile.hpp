#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "matrix.hpp"
#include "verification.hpp"

namespace eqmat {

struct CompileOptions {
  bool verify = true;  // refuse matrices that fail their defining property
  Limits limits{};
};

/*
  Depth-2 EQUALITY circuit over inputs x_1..x_n, y_1..y_n. Layer 1 holds one
  EXACT gate per row, 1{a_i.x - a_i.y = 0}; the top gate is the m-input AND
  1{z_1 + ... + z_m = m}. Correct exactly when A is an EQ matrix.
*/
inline ThresholdCircuit compile_eq_circuit(const IntMatrix& a, const CompileOptions& opt = {}) {
  if (opt.verify && !is_eq_q(a, 2, EqMode::Injectivity, opt.limits).passed())
    throw PreconditionError("matrix is not an EQ matrix");
  const std::size_t n = a.cols();
  CircuitBuilder b;
  std::vector<GateId> x(n), y(n);
  for (auto& id : x) id = b.add_input();
  for (auto& id : y) id = b.add_input();
  std::vector<Edge> top;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Edge> fan;
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) != 0) {
        fan.push_back({x[j], a(i, j)});
        fan.push_back({y[j], -a(i, j)});
      }
    top.push_back({b.add_gate(GateKind::Exact, std::move(fan), 0), 1});
  }
  GateId out = b.add_gate(GateKind::Exact, std::move(top), static_cast<i128>(a.rows()));
  return std::move(b).build(out);
}

/*
  1{w.x in S}: one EXACT gate per accepted value feeding an OR. An empty S
  yields the constant-0 circuit (inputs wired with weight 0).
*/
inline ThresholdCircuit compile_value_set(const std::vector<i128>& w, const std::vector<i128>& values) {
  if (w.empty()) throw PreconditionError("weight vector is empty");
  i128 lo = 0, hi = 0;
  for (i128 v : w) {
    if (v < 0)
      lo = checked_add(lo, v);
    else
      hi = checked_add(hi, v);
  }
  std::set<i128> accepted(values.begin(), values.end());
  for (i128 s : accepted)
    if (s < lo || s > hi) throw PreconditionError("value " + to_string(s) + " is outside the reachable range");

  CircuitBuilder b;
  std::vector<GateId> x(w.size());
  for (auto& id : x) id = b.add_input();
  std::vector<Edge> top;
  for (i128 s : accepted) {
    std::vector<Edge> fan;
    // zero weights are kept so every gate stays wired to the inputs
    for (std::size_t j = 0; j < w.size(); ++j) fan.push_back({x[j], w[j]});
    top.push_back({b.add_gate(GateKind::Exact, std::move(fan), s), 1});
  }
  if (top.empty())
    for (GateId id : x) top.push_back({id, 0});
  GateId out = b.add_gate(GateKind::LT, std::move(top), 1);
  return std::move(b).build(out);
}

/*
  Depth-2 COMPARISON circuit 1{X >= Y} from an rm x n RMDS_3 matrix.
  Coordinate j carries weight 2^(j-1). For every level l = 0..n-1 and row i
  there is an EXACT gate

      z_{l,i} = 1{ sum_{j>l} a_ij (x_j - y_j) = -a_{i,l+1} }

  i.e. row i annihilates (X-Y) + e_{l+1} restricted to coordinates l+1..n.
  If X < Y, the level just below the top differing bit fires all rm gates.
  If X >= Y, that restricted vector is a nonzero element of {-2..2}^(n-l), so
  at most m-1 rows vanish per level and at most n(m-1) gates fire overall.
  The top gate outputs 1{sum z <= n(m-1)}, separating the cases when
  rm > n(m-1).
*/
inline ThresholdCircuit compile_comp_circuit(const IntMatrix& a, std::size_t n, std::size_t m, std::size_t r,
                                             const CompileOptions& opt = {}) {
  if (a.cols() != n) throw DimensionError("matrix has " + std::to_string(a.cols()) + " columns, n=" + std::to_string(n));
  if (m == 0 || a.rows() != r * m) throw DimensionError("matrix must have r*m rows");
  if (!(r * m > n * (m - 1)))
    throw PreconditionError("separation violated: need r*m > n*(m-1)");
  if (opt.verify && !is_rmds(a, m, 3, opt.limits).passed()) throw PreconditionError("matrix is not RMDS_3");

  CircuitBuilder b;
  std::vector<GateId> x(n), y(n);
  for (auto& id : x) id = b.add_input();
  for (auto& id : y) id = b.add_input();
  std::vector<Edge> top;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::vector<Edge> fan;
      for (std::size_t j = l; j < n; ++j)
        if (a(i, j) != 0) {
          fan.push_back({x[j], a(i, j)});
          fan.push_back({y[j], -a(i, j)});
        }
      top.push_back({b.add_gate(GateKind::Exact, std::move(fan), -a(i, l)), -1});
    }
  const i128 ceiling = static_cast<i128>(n * (m - 1));
  GateId out = b.add_gate(GateKind::LT, std::move(top), -ceiling);
  return std::move(b).build(out);
}

/*
  Replaces every EXACT gate 1{s = b} by LT gates 1{s >= b} and 1{-s >= -b};
  their sum minus one equals the exact gate, and the -1 folds into each
  consumer's bias. An EXACT output gains a SUM gate g+ + g- - 1.
*/
inline ThresholdCircuit exactify_to_lt(const ThresholdCircuit& c) {
  if (c.count(GateKind::Exact) == 0) return c;
  struct Image {
    GateId plus = 0;
    GateId minus = 0;
    bool split = false;
  };
  std::vector<Image> image(c.gates().size());
  CircuitBuilder b;
  for (GateId id : c.inputs()) image[id].plus = b.add_input();

  for (GateId id : c.topological_order()) {
    const Gate& g = c.gate(id);
    if (g.kind == GateKind::Input) continue;
    std::vector<Edge> fan;
    i128 folded = 0;  // sum of weights from split sources
    for (const Edge& e : g.fan_in) {
      const Image& src = image[e.source];
      fan.push_back({src.plus, e.weight});
      if (src.split) {
        fan.push_back({src.minus, e.weight});
        folded = checked_add(folded, e.weight);
      }
    }
    // s_new = s_old + folded; compare-style gates shift their threshold, SUM its offset.
    const i128 bias = g.kind == GateKind::Sum ? checked_sub(g.bias, folded) : checked_add(g.bias, folded);
    if (g.kind != GateKind::Exact) {
      image[id].plus = b.add_gate(g.kind, std::move(fan), bias);
      continue;
    }
    std::vector<Edge> negated = fan;
    for (auto& e : negated) e.weight = checked_neg(e.weight);
    image[id] = Image{b.add_gate(GateKind::LT, std::move(fan), bias),
                      b.add_gate(GateKind::LT, std::move(negated), checked_neg(bias)), true};
  }

  const Image& out = image[c.output()];
  if (!out.split) return std::move(b).build(out.plus);
  GateId sum = b.add_gate(GateKind::Sum, {{out.plus, 1}, {out.minus, 1}}, -1);
  return std::move(b).build(sum);
}

/* F^(l)(X,Y) = sum_{i=l+1}^{n} 2^(i-l-1) (x_i - y_i); bits are coordinate-ordered, x_1 first. */
inline i128 suffix_difference(std::span<const int> x, std::span<const int> y, std::size_t l) {
  i128 f = 0;
  for (std::size_t i = x.size(); i-- > l;) f = checked_add(checked_mul(f, 2), x[i] - y[i]);
  return f;
}

/* Number of layer-1 COMP gates that fire on (X,Y), computed from the matrix directly. */
inline std::size_t comp_layer_count(const IntMatrix& a, std::span<const int> x, std::span<const int> y) {
  const std::size_t n = a.cols();
  std::size_t count = 0;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      i128 s = 0;
      for (std::size_t j = l; j < n; ++j) s = checked_add(s, checked_mul(a(i, j), x[j] - y[j]));
      count += s == -a(i, l);
    }
  return count;
}

struct CompSeparation {
  std::size_t min_when_less = SIZE_MAX;  // over pairs with X < Y
  std::size_t max_when_geq = 0;          // over pairs with X >= Y
};

/* Exhaustive layer-1 count extremes over all 4^n operand pairs. */
inline CompSeparation comp_separation(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (n > 12) throw PreconditionError("comp_separation is exhaustive; n too large");
  CompSeparation out;
  std::vector<int> x(n), y(n);
  for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << n); ++xv)
    for (std::uint64_t yv = 0; yv < (std::uint64_t{1} << n); ++yv) {
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = static_cast<int>((xv >> j) & 1u);
        y[j] = static_cast<int>((yv >> j) & 1u);
      }
      std::size_t c = comp_layer_count(a, x, y);
      if (xv < yv)
        out.min_when_less = std::min(out.min_when_less, c);
      else
        out.max_when_geq = std::max(out.max_when_geq, c);
    }
  return out;
}

}  // namespace eqmat

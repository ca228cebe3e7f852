#pragma once

// Threshold-circuit IR. Gate semantics, with s = sum_i w_i v_i:
//   LT     1{s >= bias}
//   EXACT  1{s == bias}
//   SUM    s + bias (integer valued)
//   INPUT  the assigned bit
//
// Text format (one gate per line, ids dense from 0):
//   inputs <id> <id> ...
//   output <id>
//   <id> <KIND> <bias> [<src>:<w> ...]

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "int128.hpp"
#include "matrix_io.hpp"

namespace eqmat {

enum class GateKind { Input, LT, Exact, Sum };

using GateId = std::uint32_t;

struct Edge {
  GateId source = 0;
  i128 weight = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Gate {
  GateId id = 0;
  GateKind kind = GateKind::Input;
  std::vector<Edge> fan_in;
  i128 bias = 0;
  friend bool operator==(const Gate&, const Gate&) = default;
};

inline std::string_view kind_name(GateKind k) {
  switch (k) {
    case GateKind::Input: return "INPUT";
    case GateKind::LT: return "LT";
    case GateKind::Exact: return "EXACT";
    case GateKind::Sum: return "SUM";
  }
  return "?";
}

inline GateKind parse_kind(std::string_view s) {
  if (s == "INPUT") return GateKind::Input;
  if (s == "LT") return GateKind::LT;
  if (s == "EXACT") return GateKind::Exact;
  if (s == "SUM") return GateKind::Sum;
  throw ParseError("unknown gate kind '" + std::string(s) + "'");
}

/* Immutable, validated DAG of gates. */
class ThresholdCircuit {
 public:
  ThresholdCircuit(std::vector<Gate> gates, std::vector<GateId> inputs, GateId output)
      : gates_(std::move(gates)), inputs_(std::move(inputs)), output_(output) {
    std::sort(gates_.begin(), gates_.end(), [](const Gate& a, const Gate& b) { return a.id < b.id; });
    const std::size_t n = gates_.size();
    for (std::size_t i = 0; i < n; ++i)
      if (gates_[i].id != i) throw Error("gate ids must be dense and unique (missing or duplicate id " + std::to_string(i) + ")");
    if (output_ >= n) throw Error("output gate " + std::to_string(output_) + " does not exist");

    std::vector<int> listed(n, 0);
    for (GateId id : inputs_) {
      if (id >= n || gates_[id].kind != GateKind::Input) throw Error("input list names a non-INPUT gate");
      if (listed[id]++) throw Error("input listed twice");
    }
    for (const Gate& g : gates_) {
      if (g.kind == GateKind::Input) {
        if (!listed[g.id]) throw Error("INPUT gate " + std::to_string(g.id) + " missing from input list");
        if (!g.fan_in.empty()) throw Error("INPUT gate with fan-in");
      }
      for (const Edge& e : g.fan_in)
        if (e.source >= n) throw Error("fan-in source " + std::to_string(e.source) + " does not exist");
    }

    // Kahn's algorithm; leftover gates lie on a cycle.
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<GateId>> consumers(n);
    for (const Gate& g : gates_)
      for (const Edge& e : g.fan_in) {
        ++indegree[g.id];
        consumers[e.source].push_back(g.id);
      }
    std::vector<GateId> ready;
    for (std::size_t i = n; i-- > 0;)
      if (indegree[i] == 0) ready.push_back(static_cast<GateId>(i));
    while (!ready.empty()) {
      GateId g = ready.back();
      ready.pop_back();
      order_.push_back(g);
      for (GateId c : consumers[g])
        if (--indegree[c] == 0) ready.push_back(c);
    }
    if (order_.size() != n) throw Error("cycle detected in circuit");

    depth_.assign(n, 0);
    std::vector<bool> from_input(n, false);
    for (GateId id : order_) {
      const Gate& g = gates_[id];
      if (g.kind == GateKind::Input) {
        from_input[id] = true;
        continue;
      }
      int d = 0;
      for (const Edge& e : g.fan_in) {
        d = std::max(d, depth_[e.source]);
        from_input[id] = from_input[id] || from_input[e.source];
      }
      // SUM nodes are absorbed into their consumers and add no layer.
      depth_[id] = g.kind == GateKind::Sum ? d : d + 1;
    }
    if (!from_input[output_]) throw Error("output is not reachable from the inputs");
  }

  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const Gate& gate(GateId id) const { return gates_.at(id); }
  const std::vector<GateId>& inputs() const noexcept { return inputs_; }
  GateId output() const noexcept { return output_; }
  const std::vector<GateId>& topological_order() const noexcept { return order_; }
  int depth() const noexcept { return depth_[output_]; }

  /* Number of non-input gates. */
  std::size_t gate_count() const noexcept { return gates_.size() - inputs_.size(); }

  std::size_t count(GateKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
  }

 private:
  std::vector<Gate> gates_;
  std::vector<GateId> inputs_;
  GateId output_;
  std::vector<GateId> order_;
  std::vector<int> depth_;
};

/* Assigns dense ids in creation order. */
class CircuitBuilder {
 public:
  GateId add_input() {
    GateId id = next_id();
    gates_.push_back(Gate{id, GateKind::Input, {}, 0});
    inputs_.push_back(id);
    return id;
  }

  GateId add_gate(GateKind kind, std::vector<Edge> fan_in, i128 bias) {
    if (kind == GateKind::Input) throw Error("use add_input for INPUT gates");
    GateId id = next_id();
    gates_.push_back(Gate{id, kind, std::move(fan_in), bias});
    return id;
  }

  ThresholdCircuit build(GateId output) && { return ThresholdCircuit(std::move(gates_), std::move(inputs_), output); }

 private:
  GateId next_id() const { return static_cast<GateId>(gates_.size()); }

  std::vector<Gate> gates_;
  std::vector<GateId> inputs_;
};

/* Reusable evaluation buffer; one per thread. */
class CircuitEvaluator {
 public:
  explicit CircuitEvaluator(const ThresholdCircuit& c) : circuit_(&c), values_(c.gates().size(), 0) {}

  /* Evaluates on a bit assignment to the ordered inputs; returns the output value. */
  i128 run(std::span<const int> assignment) {
    const ThresholdCircuit& c = *circuit_;
    if (assignment.size() != c.inputs().size())
      throw DimensionError("assignment has " + std::to_string(assignment.size()) + " bits, circuit has " +
                           std::to_string(c.inputs().size()) + " inputs");
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (assignment[i] != 0 && assignment[i] != 1) throw PreconditionError("assignment must be binary");
      values_[c.inputs()[i]] = assignment[i];
    }
    for (GateId id : c.topological_order()) {
      const Gate& g = c.gates()[id];
      if (g.kind == GateKind::Input) continue;
      i128 s = 0;
      for (const Edge& e : g.fan_in) {
        const i128 v = values_[e.source];
        if (v != 0) s = checked_add(s, checked_mul(e.weight, v));
      }
      switch (g.kind) {
        case GateKind::LT: values_[id] = s >= g.bias ? 1 : 0; break;
        case GateKind::Exact: values_[id] = s == g.bias ? 1 : 0; break;
        case GateKind::Sum: values_[id] = checked_add(s, g.bias); break;
        case GateKind::Input: break;
      }
    }
    return values_[c.output()];
  }

  /* Values of every gate from the last run, indexed by id. */
  const std::vector<i128>& values() const noexcept { return values_; }

 private:
  const ThresholdCircuit* circuit_;
  std::vector<i128> values_;
};

struct EvalResult {
  i128 output = 0;
  std::vector<i128> gate_values;  // indexed by gate id
};

inline EvalResult eval_circuit(const ThresholdCircuit& c, std::span<const int> assignment) {
  CircuitEvaluator ev(c);
  i128 out = ev.run(assignment);
  return EvalResult{out, ev.values()};
}

/* "gate <id> = <value>" per gate, id order. */
inline std::string format_trace(const EvalResult& r) {
  std::string s;
  for (std::size_t i = 0; i < r.gate_values.size(); ++i)
    s += "gate " + std::to_string(i) + " = " + to_string(r.gate_values[i]) + "\n";
  return s;
}

inline std::string write_circuit(const ThresholdCircuit& c) {
  std::string s = "inputs";
  for (GateId id : c.inputs()) s += " " + std::to_string(id);
  s += "\noutput " + std::to_string(c.output()) + "\n";
  for (const Gate& g : c.gates()) {
    s += std::to_string(g.id) + " " + std::string(kind_name(g.kind)) + " " + to_string(g.bias);
    for (const Edge& e : g.fan_in) s += " " + std::to_string(e.source) + ":" + to_string(e.weight);
    s += "\n";
  }
  return s;
}

inline ThresholdCircuit read_circuit(std::string_view text) {
  std::optional<std::vector<GateId>> inputs;
  std::optional<GateId> output;
  std::vector<Gate> gates;
  auto parse_id = [](std::string_view tok) {
    i128 v = parse_i128(tok);
    if (v < 0 || v > UINT32_MAX) throw ParseError("gate id out of range: " + std::string(tok));
    return static_cast<GateId>(v);
  };
  for (auto line : detail::split_lines(text)) {
    auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens[0] == "inputs") {
      if (inputs) throw ParseError("duplicate inputs line");
      inputs.emplace();
      for (std::size_t i = 1; i < tokens.size(); ++i) inputs->push_back(parse_id(tokens[i]));
    } else if (tokens[0] == "output") {
      if (output || tokens.size() != 2) throw ParseError("malformed output line");
      output = parse_id(tokens[1]);
    } else {
      if (tokens.size() < 3) throw ParseError("malformed gate line: '" + std::string(line) + "'");
      Gate g{parse_id(tokens[0]), parse_kind(tokens[1]), {}, parse_i128(tokens[2])};
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        auto colon = tokens[i].find(':');
        if (colon == std::string_view::npos) throw ParseError("malformed edge '" + std::string(tokens[i]) + "'");
        g.fan_in.push_back(Edge{parse_id(tokens[i].substr(0, colon)), parse_i128(tokens[i].substr(colon + 1))});
      }
      gates.push_back(std::move(g));
    }
  }
  if (!inputs) throw ParseError("missing inputs line");
  if (!output) throw ParseError("missing output line");
  try {
    return ThresholdCircuit(std::move(gates), std::move(*inputs), *output);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace eqmat

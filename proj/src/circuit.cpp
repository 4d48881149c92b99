// Copyright 2026 The QBA Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qba/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "qba/errors.hpp"

namespace qba {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Not: return "NOT";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Toffoli: return "CCX";
    case GateKind::Swap: return "SWAP";
    case GateKind::CPhase: return "CPHASE";
    case GateKind::Hadamard: return "H";
    case GateKind::Phase: return "PHASE";
    case GateKind::WireSwap: return "WIRESWAP";
  }
  return "?";
}

namespace {

std::size_t arity(GateKind kind) {
  switch (kind) {
    case GateKind::Not:
    case GateKind::Hadamard:
    case GateKind::Phase:
      return 1;
    case GateKind::Toffoli:
      return 3;
    default:
      return 2;
  }
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::Hadamard || kind == GateKind::Phase;
}

}  // namespace

std::vector<std::string> QubitCircuit::classical_controls() const {
  std::set<std::string> names;
  for (const auto& g : gates_) {
    if (!g.condition.empty()) names.insert(g.condition);
  }
  return {names.begin(), names.end()};
}

void QubitCircuit::add(GateRecord gate) {
  if (gate.operands.size() != arity(gate.kind)) {
    throw UsageError(std::string(gate_kind_name(gate.kind)) + " has the wrong operand count");
  }
  for (std::size_t i = 0; i < gate.operands.size(); ++i) {
    if (gate.operands[i] >= num_qubits_) throw UsageError("gate operand out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.operands[i] == gate.operands[j]) throw UsageError("gate operands must be distinct");
    }
  }
  gates_.push_back(std::move(gate));
}

void QubitCircuit::x(unsigned q, std::string cond) {
  add({GateKind::Not, {q}, 0.0, std::move(cond)});
}
void QubitCircuit::cnot(unsigned c, unsigned t, std::string cond) {
  add({GateKind::Cnot, {c, t}, 0.0, std::move(cond)});
}
void QubitCircuit::toffoli(unsigned c0, unsigned c1, unsigned t, std::string cond) {
  add({GateKind::Toffoli, {c0, c1, t}, 0.0, std::move(cond)});
}
void QubitCircuit::swap(unsigned a, unsigned b, std::string cond) {
  add({GateKind::Swap, {a, b}, 0.0, std::move(cond)});
}
void QubitCircuit::cphase(unsigned c, unsigned t, double angle, std::string cond) {
  add({GateKind::CPhase, {c, t}, angle, std::move(cond)});
}
void QubitCircuit::h(unsigned q, std::string cond) {
  add({GateKind::Hadamard, {q}, 0.0, std::move(cond)});
}
void QubitCircuit::phase(unsigned q, double angle, std::string cond) {
  add({GateKind::Phase, {q}, angle, std::move(cond)});
}
void QubitCircuit::wire_swap(unsigned a, unsigned b) {
  add({GateKind::WireSwap, {a, b}, 0.0, {}});
}

void QubitCircuit::append(const QubitCircuit& sub, std::span<const unsigned> wires,
                          const std::string& cond) {
  if (wires.size() != sub.num_qubits()) throw UsageError("wire map size mismatch");
  for (GateRecord g : sub.gates()) {
    for (auto& q : g.operands) q = wires[q];
    if (g.condition.empty()) g.condition = cond;
    add(std::move(g));
  }
  for (const auto& [name, value] : sub.bound_signals()) bound_[name] = value;
}

QubitCircuit QubitCircuit::inverse() const {
  QubitCircuit inv(num_qubits_);
  inv.bound_ = bound_;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    GateRecord g = *it;
    g.angle = -g.angle;
    inv.add(std::move(g));
  }
  return inv;
}

bool QubitCircuit::is_permutation() const {
  return std::none_of(gates_.begin(), gates_.end(), [](const GateRecord& g) {
    return g.kind == GateKind::CPhase || g.kind == GateKind::Hadamard || g.kind == GateKind::Phase;
  });
}

CostMetrics metrics(const QubitCircuit& c, const GateCostTable& table) {
  CostMetrics m;
  m.width = c.num_qubits();
  std::vector<unsigned> level(c.num_qubits(), 0);
  std::map<unsigned, unsigned> rotations_by_layer;
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::WireSwap) {
      std::swap(level[g.operands[0]], level[g.operands[1]]);
      continue;
    }
    ++m.gate_count;
    unsigned start = 0;
    for (unsigned q : g.operands) start = std::max(start, level[q]);
    const unsigned layers = g.kind == GateKind::Toffoli ? table.toffoli_layers
                            : g.kind == GateKind::Swap  ? table.swap_layers
                                                        : 1;
    for (unsigned q : g.operands) level[q] = start + layers;
    switch (g.kind) {
      case GateKind::Not: m.cnot_cost += table.not_cost; break;
      case GateKind::Cnot: m.cnot_cost += table.cnot_cost; break;
      case GateKind::Toffoli: m.cnot_cost += table.toffoli_cost; break;
      case GateKind::Swap: m.cnot_cost += table.swap_cost; break;
      case GateKind::CPhase: m.cnot_cost += table.cphase_cost; break;
      default: ++rotations_by_layer[start]; break;
    }
  }
  for (const auto& [layer, count] : rotations_by_layer) {
    m.cnot_cost += std::ceil(table.rotation_cost * count);
  }
  for (unsigned l : level) m.depth = std::max(m.depth, l);
  return m;
}

namespace {

bool fires(const GateRecord& g, const QubitCircuit& c, const SignalMap& overrides) {
  if (g.condition.empty()) return true;
  if (auto it = overrides.find(g.condition); it != overrides.end()) return it->second;
  if (auto it = c.bound_signals().find(g.condition); it != c.bound_signals().end()) {
    return it->second;
  }
  throw UsageError("classical signal '" + g.condition + "' is unbound");
}

inline bool bit(std::uint64_t v, unsigned q) { return (v >> q) & 1U; }

}  // namespace

std::uint64_t simulate_basis(const QubitCircuit& c, std::uint64_t input,
                             const SignalMap& signals) {
  if (c.num_qubits() > 24) throw UsageError("basis simulation limited to 24 qubits");
  if (!c.is_permutation()) throw UsageError("circuit contains non-permutation gates");
  if (input >> c.num_qubits()) throw DomainError("input index out of range");
  std::uint64_t v = input;
  for (const auto& g : c.gates()) {
    if (!fires(g, c, signals)) continue;
    const auto& o = g.operands;
    switch (g.kind) {
      case GateKind::Not: v ^= 1ULL << o[0]; break;
      case GateKind::Cnot:
        if (bit(v, o[0])) v ^= 1ULL << o[1];
        break;
      case GateKind::Toffoli:
        if (bit(v, o[0]) && bit(v, o[1])) v ^= 1ULL << o[2];
        break;
      case GateKind::Swap:
      case GateKind::WireSwap:
        if (bit(v, o[0]) != bit(v, o[1])) v ^= (1ULL << o[0]) | (1ULL << o[1]);
        break;
      default: break;
    }
  }
  return v;
}

std::vector<std::complex<double>> simulate_dense(const QubitCircuit& c, std::uint64_t input,
                                                 const SignalMap& signals) {
  if (c.num_qubits() > 12) throw UsageError("dense simulation limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  if (input >= dim) throw DomainError("input index out of range");
  std::vector<std::complex<double>> psi(dim, 0.0);
  psi[input] = 1.0;
  const double s = 1.0 / std::numbers::sqrt2;
  for (const auto& g : c.gates()) {
    if (!fires(g, c, signals)) continue;
    const auto& o = g.operands;
    switch (g.kind) {
      case GateKind::Hadamard: {
        const std::size_t m = std::size_t{1} << o[0];
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & m) continue;
          const auto a = psi[i];
          const auto b = psi[i | m];
          psi[i] = s * (a + b);
          psi[i | m] = s * (a - b);
        }
        break;
      }
      case GateKind::Phase:
      case GateKind::CPhase: {
        const auto ph = std::polar(1.0, g.angle);
        for (std::size_t i = 0; i < dim; ++i) {
          bool on = true;
          for (unsigned q : o) on = on && bit(i, q);
          if (on) psi[i] *= ph;
        }
        break;
      }
      default: {
        std::vector<std::complex<double>> next(dim, 0.0);
        QubitCircuit one(c.num_qubits());
        one.add(g);
        for (std::size_t i = 0; i < dim; ++i) {
          if (psi[i] != 0.0) next[simulate_basis(one, i, {{g.condition, true}})] += psi[i];
        }
        psi = std::move(next);
        break;
      }
    }
  }
  return psi;
}

void write_netlist(const QubitCircuit& c, std::ostream& out) {
  for (const auto& g : c.gates()) {
    out << gate_kind_name(g.kind);
    if (g.kind == GateKind::CPhase || g.kind == GateKind::Phase) {
      std::ostringstream a;
      a.precision(10);
      a << g.angle;
      out << '(' << a.str() << ')';
    }
    out << ' ';
    for (std::size_t i = 0; i < g.operands.size(); ++i) {
      if (i) out << ',';
      out << g.operands[i];
    }
    if (!g.condition.empty()) out << " @" << g.condition;
    out << '\n';
  }
}

std::string netlist_string(const QubitCircuit& c) {
  std::ostringstream os;
  write_netlist(c, os);
  return os.str();
}

}  // namespace qba

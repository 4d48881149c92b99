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

#pragma once

// Gate-list representation of small qubit-level reversible circuits, plus
// depth/width/cost metering and exact simulation. Qubit q is bit q of a basis
// index.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qba {

enum class GateKind {
  Not,
  Cnot,
  Toffoli,
  Swap,
  CPhase,
  Hadamard,
  Phase,
  // Output bit-order fix-up realized by relabeling wires; no hardware cost.
  WireSwap,
};

const char* gate_kind_name(GateKind kind);

struct GateRecord {
  GateKind kind = GateKind::Not;
  // Controls first, target last.
  std::vector<unsigned> operands;
  // Rotation angle in radians for CPhase / Phase.
  double angle = 0.0;
  // Gate fires only when this classical signal is true; empty means always.
  std::string condition;
};

using SignalMap = std::map<std::string, bool>;

class QubitCircuit {
 public:
  explicit QubitCircuit(unsigned num_qubits = 0) : num_qubits_(num_qubits) {}

  unsigned num_qubits() const { return num_qubits_; }
  const std::vector<GateRecord>& gates() const { return gates_; }
  // Names of every classical signal referenced by a gate, sorted.
  std::vector<std::string> classical_controls() const;
  // Values the builder bound for the signals (e.g. from a challenge b).
  const SignalMap& bound_signals() const { return bound_; }
  void bind_signal(const std::string& name, bool value) { bound_[name] = value; }

  void add(GateRecord gate);
  void x(unsigned q, std::string cond = {});
  void cnot(unsigned c, unsigned t, std::string cond = {});
  void toffoli(unsigned c0, unsigned c1, unsigned t, std::string cond = {});
  void swap(unsigned a, unsigned b, std::string cond = {});
  void cphase(unsigned c, unsigned t, double angle, std::string cond = {});
  void h(unsigned q, std::string cond = {});
  void phase(unsigned q, double angle, std::string cond = {});
  void wire_swap(unsigned a, unsigned b);

  // Appends sub with its qubit i mapped to wires[i]. A non-empty cond is
  // attached to every appended gate that has no condition of its own.
  void append(const QubitCircuit& sub, std::span<const unsigned> wires,
              const std::string& cond = {});
  QubitCircuit inverse() const;

  bool is_permutation() const;

 private:
  unsigned num_qubits_;
  std::vector<GateRecord> gates_;
  SignalMap bound_;
};

// CNOT-equivalent weights and per-gate layer counts used by metrics().
struct GateCostTable {
  double not_cost = 1.0;
  double cnot_cost = 1.0;
  double swap_cost = 3.0;
  double cphase_cost = 1.0;
  double rotation_cost = 0.5;  // summed per layer, then rounded up
  double toffoli_cost = 6.0;
  // Layers a gate occupies. One- and two-qubit gates take unit time.
  unsigned toffoli_layers = 1;
  unsigned swap_layers = 1;

  static GateCostTable defaults() { return {}; }
};

struct CostMetrics {
  unsigned depth = 0;   // K
  unsigned width = 0;   // Q
  double cnot_cost = 0;
  std::size_t gate_count = 0;
};

CostMetrics metrics(const QubitCircuit& c, const GateCostTable& table = GateCostTable::defaults());

// Basis-state simulation of permutation circuits (up to 24 qubits). Signals
// default to the circuit's bound values; entries in `signals` override them.
std::uint64_t simulate_basis(const QubitCircuit& c, std::uint64_t input,
                             const SignalMap& signals = {});
// Dense statevector simulation (up to 12 qubits).
std::vector<std::complex<double>> simulate_dense(const QubitCircuit& c, std::uint64_t input,
                                                 const SignalMap& signals = {});

// Text netlist: one gate per line, `KIND q1[,q2...][ @signal]`.
void write_netlist(const QubitCircuit& c, std::ostream& out);
std::string netlist_string(const QubitCircuit& c);

}  // namespace qba

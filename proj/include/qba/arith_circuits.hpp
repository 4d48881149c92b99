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

// Reversible mod-7 arithmetic at qubit level: the classically-controlled
// multiplier, a ripple-carry modular adder, the composed CX^b block, a generic
// shift-add baseline multiplier and the 3-qubit Fourier circuit.

#include <functional>

#include "qba/circuit.hpp"

namespace qba::arith {

inline constexpr unsigned kModulus = 7;

struct EnableSignals {
  bool swap1 = false;
  bool swap2 = false;
  bool swap3 = false;
  bool negate = false;

  bool operator==(const EnableSignals&) const = default;
};

using EnableTable = std::function<EnableSignals(unsigned b)>;

// The four sum-of-products enables in their originally stated form,
// evaluated on bits (b2, b1, b0). Kept to show that its NOT enable is wrong.
EnableSignals enable_signals(unsigned b);
// Enables that make the multiplier network compute b*x mod 7. The swap
// enables coincide with the original ones; the NOT enable fires for the
// negative residues b in {3, 5, 6}.
EnableSignals corrected_enable_signals(unsigned b);

// Signal names used by the multiplier netlist.
inline constexpr const char* kEnSwap1 = "en_swap1";
inline constexpr const char* kEnSwap2 = "en_swap2";
inline constexpr const char* kEnSwap3 = "en_swap3";
inline constexpr const char* kEnNot = "en_not";

// 3-qubit in-place multiplier |x> -> |b x mod 7> for x in 0..6; |7> is a
// fixed point. Swap network: SWAP(0,1)@en_swap3, SWAP(1,2)@en_swap1,
// SWAP(0,1)@en_swap2 realizes the rotations x*2 and x*4; the negation block
// @en_not maps x -> 7 - x on 1..6 and fixes 0 and 7.
QubitCircuit build_mult7(unsigned b, const EnableTable& table = corrected_enable_signals);

// |v>|w> -> |v>|v + w mod 7> on qubits v = 0..2, w = 3..5; three ancillae
// (high bit, carry, flag) on 6..8 start and end at zero.
QubitCircuit build_modadd7();
inline constexpr unsigned kModAddQubits = 9;

// |V>|W> -> |V>|V + b W mod 7> with V = 0..2, W = 3..5 and the adder's
// ancillae: multiplier in place on W, then the modular adder.
QubitCircuit build_cx_b(unsigned b, const EnableTable& table = corrected_enable_signals);

// Generic modular multiplier |x> -> |b x mod 7> on qubits 0..2: shift-add of
// controlled constants b 2^i mod 7 into a workspace through the modular
// adder, swap, then uncompute with b^-1. Ancillae 3..11 return to zero.
QubitCircuit build_baseline_modmul(unsigned b);
inline constexpr unsigned kBaselineQubits = 12;

// Generic CX^b: baseline multiplier in place on W then the modular adder.
QubitCircuit build_baseline_cx_b(unsigned b);

// Textbook 3-qubit binary Fourier transform (qubit 2 most significant); the
// closing bit reversal is a wire relabeling.
QubitCircuit build_qft3();

}  // namespace qba::arith

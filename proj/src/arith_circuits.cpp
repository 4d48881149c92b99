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

#include "qba/arith_circuits.hpp"

#include <array>
#include <numbers>
#include <numeric>
#include <string>

#include "qba/errors.hpp"

namespace qba::arith {

namespace {

void require_multiplier(unsigned b) {
  if (b == 0 || b >= kModulus) {
    throw DomainError("multiplier b must lie in 1..6, got " + std::to_string(b));
  }
}

struct Bits {
  bool b2, b1, b0;
};

Bits bits_of(unsigned b) { return {((b >> 2) & 1U) != 0, ((b >> 1) & 1U) != 0, (b & 1U) != 0}; }

// Ripple-carry adder on 3-bit registers: b <- a + b mod 8, a unchanged,
// carry-out XORed into `high`, carry ancilla clean on exit.
void add3(QubitCircuit& c, const std::array<unsigned, 3>& a, const std::array<unsigned, 3>& b,
          unsigned carry, unsigned high) {
  auto maj = [&](unsigned x, unsigned y, unsigned z) {
    c.cnot(z, y);
    c.cnot(z, x);
    c.toffoli(x, y, z);
  };
  auto uma = [&](unsigned x, unsigned y, unsigned z) {
    c.toffoli(x, y, z);
    c.cnot(z, x);
    c.cnot(x, y);
  };
  maj(carry, b[0], a[0]);
  maj(a[0], b[1], a[1]);
  maj(a[1], b[2], a[2]);
  c.cnot(a[2], high);
  uma(a[1], b[2], a[2]);
  uma(a[0], b[1], a[1]);
  uma(carry, b[0], a[0]);
}

QubitCircuit add3_circuit() {
  // Local layout: a = 0..2, b = 3..5, carry = 6, high = 7.
  QubitCircuit c(8);
  add3(c, {0, 1, 2}, {3, 4, 5}, 6, 7);
  return c;
}

// r <- r + 1 mod 16 on r = (r0, r1, r2, r3), using one clean ancilla.
void increment4(QubitCircuit& c, const std::array<unsigned, 4>& r, unsigned anc) {
  c.toffoli(r[0], r[1], anc);
  c.toffoli(anc, r[2], r[3]);
  c.toffoli(r[0], r[1], anc);
  c.toffoli(r[0], r[1], r[2]);
  c.cnot(r[0], r[1]);
  c.x(r[0]);
}

// r <- r - 1 mod 8 on a 3-bit register when `control` is set; one clean
// ancilla. Implemented as complement, controlled increment, complement.
void controlled_decrement3(QubitCircuit& c, unsigned control, const std::array<unsigned, 3>& r,
                           unsigned anc) {
  for (unsigned q : r) c.x(q);
  c.toffoli(control, r[0], anc);
  c.toffoli(anc, r[1], r[2]);
  c.toffoli(control, r[0], anc);
  c.toffoli(control, r[0], r[1]);
  c.cnot(control, r[0]);
  for (unsigned q : r) c.x(q);
}

}  // namespace

EnableSignals enable_signals(unsigned b) {
  require_multiplier(b);
  const auto [b2, b1, b0] = bits_of(b);
  EnableSignals s;
  s.swap1 = (!b2 && b1 && !b0) || (!b2 && b1 && b0) || (b2 && !b1 && !b0) || (b2 && !b1 && b0);
  s.swap2 = (!b2 && b1 && !b0) || (b2 && !b1 && b0);
  s.swap3 = (!b2 && b1 && b0) || (b2 && !b1 && !b0);
  s.negate = (!b2 && b1 && !b0) || (b2 && !b1 && !b0) || (b2 && b1 && !b0);
  return s;
}

EnableSignals corrected_enable_signals(unsigned b) {
  EnableSignals s = enable_signals(b);
  const auto [b2, b1, b0] = bits_of(b);
  s.negate = (!b2 && b1 && b0) || (b2 && !b1 && b0) || (b2 && b1 && !b0);
  return s;
}

QubitCircuit build_mult7(unsigned b, const EnableTable& table) {
  require_multiplier(b);
  QubitCircuit c(3);
  c.swap(0, 1, kEnSwap3);
  c.swap(1, 2, kEnSwap1);
  c.swap(0, 1, kEnSwap2);
  // Negation: complement all bits, then exchange |000> and |111>. The
  // complements on qubits 1 and 2 commute through the CNOT targets and cancel
  // against the exchange's own conjugation, leaving one X on each.
  c.x(0, kEnNot);
  c.cnot(0, 1, kEnNot);
  c.cnot(0, 2, kEnNot);
  c.toffoli(1, 2, 0, kEnNot);
  c.cnot(0, 2, kEnNot);
  c.cnot(0, 1, kEnNot);
  c.x(1, kEnNot);
  c.x(2, kEnNot);

  const EnableSignals s = table(b);
  c.bind_signal(kEnSwap1, s.swap1);
  c.bind_signal(kEnSwap2, s.swap2);
  c.bind_signal(kEnSwap3, s.swap3);
  c.bind_signal(kEnNot, s.negate);
  return c;
}

QubitCircuit build_modadd7() {
  // v = 0..2, w = 3..5, high = 6, carry = 7, flag = 8.
  QubitCircuit c(kModAddQubits);
  const std::array<unsigned, 3> v{0, 1, 2};
  const std::array<unsigned, 3> w{3, 4, 5};
  const unsigned high = 6;
  const unsigned carry = 7;
  const unsigned flag = 8;
  const QubitCircuit adder = add3_circuit();
  const std::array<unsigned, 8> wires{v[0], v[1], v[2], w[0], w[1], w[2], carry, high};

  // (w, high) <- v + w as a 4-bit value S.
  c.append(adder, wires);
  // S - 7 = S + 9 mod 16: increment, then add 8 on the top bit. The top bit
  // is now set iff S < 7.
  increment4(c, {w[0], w[1], w[2], high}, carry);
  c.x(high);
  c.cnot(high, flag);
  // Undo the subtraction when it went negative: +7 = +8 then -1.
  c.cnot(flag, high);
  controlled_decrement3(c, flag, w, carry);
  // flag was set iff the sum did not wrap, i.e. iff (v + w mod 7) >= v.
  // Subtracting v leaves the borrow in `high`.
  c.append(adder.inverse(), wires);
  c.x(high);
  c.cnot(high, flag);
  c.x(high);
  c.append(adder, wires);
  return c;
}

QubitCircuit build_cx_b(unsigned b, const EnableTable& table) {
  require_multiplier(b);
  QubitCircuit c(kModAddQubits);
  const std::array<unsigned, 3> w{3, 4, 5};
  c.append(build_mult7(b, table), w);
  std::array<unsigned, kModAddQubits> ident{};
  std::iota(ident.begin(), ident.end(), 0U);
  c.append(build_modadd7(), ident);
  return c;
}

QubitCircuit build_baseline_modmul(unsigned b) {
  require_multiplier(b);
  // x = 0..2, acc = 3..5, adder ancillae 6..8, load register 9..11.
  QubitCircuit c(kBaselineQubits);
  const QubitCircuit adder = build_modadd7();
  const QubitCircuit subtractor = adder.inverse();
  const std::array<unsigned, 3> load{9, 10, 11};
  const std::array<unsigned, kModAddQubits> add_wires{9, 10, 11, 3, 4, 5, 6, 7, 8};

  auto controlled_load = [&](unsigned control, unsigned value) {
    for (unsigned i = 0; i < 3; ++i) {
      if ((value >> i) & 1U) c.cnot(control, load[i]);
    }
  };
  // acc <- acc +/- m * x mod 7 by shift-add over the bits of x.
  auto shift_add = [&](unsigned m, const QubitCircuit& op) {
    for (unsigned i = 0; i < 3; ++i) {
      const unsigned term = (m << i) % kModulus;
      controlled_load(i, term);
      c.append(op, add_wires);
      controlled_load(i, term);
    }
  };

  unsigned inv = 1;
  while ((inv * b) % kModulus != 1) ++inv;

  shift_add(b, adder);
  for (unsigned i = 0; i < 3; ++i) c.swap(i, 3 + i);
  // Data now holds b x and acc holds x; clear acc by subtracting b^-1 (b x).
  shift_add(inv, subtractor);
  return c;
}

QubitCircuit build_baseline_cx_b(unsigned b) {
  // V = 0..2, W = 3..5, shared ancillae 6..14.
  QubitCircuit c(kBaselineQubits + 3);
  std::array<unsigned, kBaselineQubits> mul_wires{};
  for (unsigned i = 0; i < kBaselineQubits; ++i) mul_wires[i] = i + 3;
  c.append(build_baseline_modmul(b), mul_wires);
  std::array<unsigned, kModAddQubits> ident{};
  std::iota(ident.begin(), ident.end(), 0U);
  c.append(build_modadd7(), ident);
  return c;
}

QubitCircuit build_qft3() {
  QubitCircuit c(3);
  const double pi = std::numbers::pi;
  c.h(2);
  c.cphase(1, 2, pi / 2);
  c.cphase(0, 2, pi / 4);
  c.h(1);
  c.cphase(0, 1, pi / 2);
  c.h(0);
  c.wire_swap(0, 2);
  return c;
}

}  // namespace qba::arith

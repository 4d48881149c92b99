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

// The per-verifier operator program of graded share-and-verify and its
// packing into pipeline stages.
//
// Grid addressing: Reg{row, col}. Row 0, column 0 holds the shared secret;
// row 0, columns >= 1 hold uniform sums; rows >= 1 hold encoded zero. The
// first check couples (n,0) into (n,m+1); the second (after the transform of
// column 0) couples (0,0) into (n+1,0).

#include <string>
#include <vector>

namespace qba {

struct Reg {
  unsigned row = 0;
  unsigned col = 0;
  bool operator==(const Reg&) const = default;
  auto operator<=>(const Reg&) const = default;
};

enum class OpKind { Cx, Qft, InvQft };

struct VerifierOp {
  OpKind kind = OpKind::Cx;
  Reg control;  // unused for transforms
  Reg target;
  // CX only: 1-based challenge index; `second_check` selects b' over b.
  unsigned challenge = 0;
  bool second_check = false;
  std::string label() const;
};

// Which range the second check uses: n in [0, k-1] (normalized) or the
// narrower, originally stated n in [0, k-2] ("printed").
enum class SecondCheckRange { Normalized, Printed };

// Program order: all first-check CX (row-major), the column-0 transforms,
// the second-check CX, the inverse transform on (0,0).
std::vector<VerifierOp> verifier_program(unsigned k,
                                         SecondCheckRange range = SecondCheckRange::Normalized);

// Registers measured during verification (targets of either check), in the
// order they become final. Targets of the second check are read in the
// Fourier basis.
struct MeasuredReg {
  Reg reg;
  bool fourier_domain = false;
};
std::vector<MeasuredReg> measured_registers(unsigned k,
                                            SecondCheckRange range = SecondCheckRange::Normalized);

struct StageCaps {
  unsigned max_cx = 2;
  unsigned max_qft = 1;  // QFT and inverse QFT together
};

struct Schedule {
  std::vector<VerifierOp> ops;
  std::vector<std::vector<std::size_t>> stages;  // indices into ops
  std::size_t num_stages() const { return stages.size(); }
  unsigned peak_cx() const;
  unsigned peak_qft() const;
  unsigned count(OpKind kind) const;
};

// Earliest-start layering, no concurrency caps. Ops sharing a register keep
// program order.
Schedule asap_schedule(const std::vector<VerifierOp>& ops);
// Fewest stages subject to the caps, then fewest stages holding a CX;
// exhaustive search over ready sets with a deterministic tie-break (larger
// stages first, then program order).
Schedule pipelined_schedule(const std::vector<VerifierOp>& ops, StageCaps caps = {});

// Direct predecessors in program order (share a register with an earlier op).
std::vector<std::vector<std::size_t>> dependencies(const std::vector<VerifierOp>& ops);

std::string describe(const Schedule& s);

}  // namespace qba

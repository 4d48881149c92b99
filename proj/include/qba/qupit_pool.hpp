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

// A collection of independent SparseStates addressed by stable qupit ids.
// Qupits start out in separate states; a two-qupit gate across states tensors
// them together first. Measured qupits are factored out immediately so the
// tuples stay short.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qba/qudit_sim.hpp"

namespace qba {

using QupitId = std::size_t;

// Position of a qupit within one SparseState of a pool.
struct QupitRef {
  std::size_t state = 0;
  std::size_t index = 0;
};

class QupitPool {
 public:
  explicit QupitPool(unsigned dim, std::size_t term_budget = kDefaultTermBudget);

  unsigned dim() const { return dim_; }
  std::size_t term_budget() const { return budget_; }

  // Takes ownership; returns one id per qupit of s, in order.
  std::vector<QupitId> add_state(SparseState s);

  bool alive(QupitId id) const;
  QupitRef locate(QupitId id) const;
  const SparseState& state_of(QupitId id) const;
  // Ids that share a SparseState with id, in tuple order.
  const std::vector<QupitId>& group_of(QupitId id) const;

  void add_const(QupitId target, unsigned c);
  void cx_b(QupitId control, QupitId target, unsigned b);
  void fourier(QupitId target, bool inverse);
  void pauli(QupitId target, unsigned x_power, unsigned z_power);
  // Measures and retires the qupit.
  unsigned measure(QupitId target, Rng& rng);
  // cx_b(controls[q], targets[q], b) for all q, then measures and retires
  // every target. Uses the fused kernel when the controls share one state and
  // the targets another; otherwise falls back to merge, apply, measure.
  std::vector<unsigned> cx_b_measure(const std::vector<QupitId>& controls,
                                     const std::vector<QupitId>& targets, unsigned b, Rng& rng);
  // Retires target and returns `width` fresh ids holding its codeword.
  std::vector<QupitId> encode(QupitId target,
                              const std::vector<std::vector<std::uint8_t>>& codebook,
                              std::size_t width);

  // Moves every qupit that holds a definite basis value out of its shared
  // state into a singleton state. Exact; only shrinks joint supports.
  void compact();

  std::size_t live_states() const;
  std::size_t live_qupits() const;
  std::size_t total_terms() const;
  std::size_t peak_terms() const { return peak_terms_; }

 private:
  struct Slot {
    std::optional<SparseState> state;
    std::vector<QupitId> owners;
  };

  void require_alive(QupitId id) const;
  void merge_into(std::size_t dst, std::size_t src);
  void reindex(std::size_t slot);
  void note_terms(std::size_t slot);

  unsigned dim_;
  std::size_t budget_;
  std::vector<Slot> slots_;
  std::vector<QupitRef> loc_;
  std::vector<bool> alive_;
  std::size_t peak_terms_ = 0;
};

}  // namespace qba

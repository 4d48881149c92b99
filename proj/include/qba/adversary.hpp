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

// Scripted Byzantine strategies, selected by string key:
//   honest, silent, equivocator, random, garbage_dealer, adaptive.
// Static strategies corrupt nodes 0..t-1 from the start. The adaptive one
// starts clean and picks its victims after seeing the current votes (never
// more than t nodes over the run).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qba/gradecast.hpp"
#include "qba/qudit_sim.hpp"
#include "qba/vqss.hpp"

namespace qba {

struct AdversaryView {
  unsigned iteration = 0;  // 1-based
  unsigned next_dealer = 0;
  std::vector<unsigned> bits;  // current b_i of every node
};

enum class VotePhase { Pr, P0, P1 };

class Adversary {
 public:
  Adversary(unsigned n, unsigned t);
  virtual ~Adversary() = default;

  virtual std::string name() const = 0;
  virtual void on_iteration(const AdversaryView& view, Rng& rng);

  bool corrupted(unsigned i) const { return corrupted_.at(i); }
  const std::vector<bool>& corrupted_set() const { return corrupted_; }
  unsigned num_corrupted() const;
  // Nodes corrupted at any point so far (they never recover).
  bool ever_corrupted(unsigned i) const { return corrupted(i); }

  // Bit faulty node `from` sends to `to`; nullopt = nothing.
  virtual std::optional<unsigned> vote(VotePhase phase, unsigned from, unsigned to,
                                       unsigned honest_bit, Rng& rng) = 0;
  // Tamper hook for the value gradecasts of faulty nodes.
  virtual GradecastTamper value_tamper(unsigned p, Rng& rng) = 0;
  // How a faulty dealer prepares its registers.
  virtual DealerKind dealer_kind() const { return DealerKind::Honest; }
  // Whether faulty players replace their level-2 sharings with junk.
  virtual bool garbage_shares() const { return false; }

 protected:
  void corrupt(unsigned i);
  unsigned n_, t_;
  std::vector<bool> corrupted_;
};

std::unique_ptr<Adversary> make_adversary(const std::string& key, unsigned n, unsigned t);
const std::vector<std::string>& adversary_keys();

}  // namespace qba

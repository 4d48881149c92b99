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

#include "qba/adversary.hpp"

#include <algorithm>

#include "qba/errors.hpp"

namespace qba {

Adversary::Adversary(unsigned n, unsigned t) : n_(n), t_(t), corrupted_(n, false) {}

void Adversary::on_iteration(const AdversaryView&, Rng&) {}

unsigned Adversary::num_corrupted() const {
  return static_cast<unsigned>(std::count(corrupted_.begin(), corrupted_.end(), true));
}

void Adversary::corrupt(unsigned i) {
  if (i >= n_) throw UsageError("corrupting a node outside the network");
  if (corrupted_[i]) return;
  if (num_corrupted() >= t_) throw UsageError("adversary exceeded its corruption bound");
  corrupted_[i] = true;
}

namespace {

class HonestAdversary : public Adversary {
 public:
  using Adversary::Adversary;
  std::string name() const override { return "honest"; }
  std::optional<unsigned> vote(VotePhase, unsigned, unsigned, unsigned b, Rng&) override {
    return b;
  }
  GradecastTamper value_tamper(unsigned, Rng&) override { return {}; }
};

class StaticAdversary : public Adversary {
 public:
  StaticAdversary(unsigned n, unsigned t) : Adversary(n, t) {
    for (unsigned i = 0; i < t; ++i) corrupt(i);
  }
};

class SilentAdversary : public StaticAdversary {
 public:
  using StaticAdversary::StaticAdversary;
  std::string name() const override { return "silent"; }
  std::optional<unsigned> vote(VotePhase, unsigned, unsigned, unsigned, Rng&) override {
    return std::nullopt;
  }
  GradecastTamper value_tamper(unsigned, Rng&) override {
    return [](unsigned, unsigned, unsigned, const std::optional<GcValue>&) {
      return std::optional<GcValue>{};
    };
  }
  // Sending nothing is indistinguishable from sending unverifiable states.
  DealerKind dealer_kind() const override { return DealerKind::Garbage; }
};

// Tells half the network 0 and the other half 1, and splits its gradecasts
// the same way.
class EquivocatorAdversary : public StaticAdversary {
 public:
  using StaticAdversary::StaticAdversary;
  std::string name() const override { return "equivocator"; }
  std::optional<unsigned> vote(VotePhase, unsigned, unsigned to, unsigned, Rng&) override {
    return to % 2;
  }
  GradecastTamper value_tamper(unsigned p, Rng&) override {
    return [p](unsigned round, unsigned, unsigned to,
               const std::optional<GcValue>& honest) -> std::optional<GcValue> {
      if (!honest) return std::nullopt;
      if (round == 2 && to % 2 == 0) return honest;
      GcValue v = *honest;
      for (auto& x : v) x = (x + 1 + to % 2) % p;
      return v;
    };
  }
};

class RandomAdversary : public StaticAdversary {
 public:
  using StaticAdversary::StaticAdversary;
  std::string name() const override { return "random"; }
  bool garbage_shares() const override { return true; }
  std::optional<unsigned> vote(VotePhase, unsigned, unsigned, unsigned, Rng& rng) override {
    return std::uniform_int_distribution<unsigned>(0, 1)(rng);
  }
  GradecastTamper value_tamper(unsigned p, Rng& rng) override {
    return [p, &rng](unsigned, unsigned, unsigned,
                     const std::optional<GcValue>& honest) -> std::optional<GcValue> {
      GcValue v = honest.value_or(GcValue(1, 0));
      std::uniform_int_distribution<std::int64_t> d(0, p - 1);
      for (auto& x : v) x = d(rng);
      return v;
    };
  }
};

// Follows the protocol except when dealing, where it shares unencoded junk.
class GarbageDealerAdversary : public StaticAdversary {
 public:
  using StaticAdversary::StaticAdversary;
  std::string name() const override { return "garbage_dealer"; }
  std::optional<unsigned> vote(VotePhase, unsigned, unsigned, unsigned b, Rng&) override {
    return b;
  }
  GradecastTamper value_tamper(unsigned, Rng&) override { return {}; }
  DealerKind dealer_kind() const override { return DealerKind::Garbage; }
};

class AdaptiveAdversary : public Adversary {
 public:
  using Adversary::Adversary;
  std::string name() const override { return "adaptive"; }
  // Each iteration, while budget remains, grabs a holder of the minority bit
  // (its vote is the swing), falling back to the upcoming dealer.
  void on_iteration(const AdversaryView& view, Rng&) override {
    if (num_corrupted() >= t_) return;
    unsigned ones = 0;
    for (unsigned b : view.bits) ones += b;
    const unsigned minority = 2 * ones < view.bits.size() ? 1 : 0;
    for (unsigned i = 0; i < n_; ++i) {
      if (!corrupted(i) && view.bits[i] == minority) {
        corrupt(i);
        return;
      }
    }
    if (!corrupted(view.next_dealer)) corrupt(view.next_dealer);
  }
  std::optional<unsigned> vote(VotePhase, unsigned, unsigned to, unsigned, Rng&) override {
    return to % 2;
  }
  GradecastTamper value_tamper(unsigned p, Rng& rng) override {
    return EquivocatorAdversary(n_, 0).value_tamper(p, rng);
  }
  DealerKind dealer_kind() const override { return DealerKind::Garbage; }
};

}  // namespace

const std::vector<std::string>& adversary_keys() {
  static const std::vector<std::string> keys{"honest", "silent", "equivocator",
                                             "random", "garbage_dealer", "adaptive"};
  return keys;
}

std::unique_ptr<Adversary> make_adversary(const std::string& key, unsigned n, unsigned t) {
  if (key == "honest") return std::make_unique<HonestAdversary>(n, t);
  if (key == "silent") return std::make_unique<SilentAdversary>(n, t);
  if (key == "equivocator") return std::make_unique<EquivocatorAdversary>(n, t);
  if (key == "random") return std::make_unique<RandomAdversary>(n, t);
  if (key == "garbage_dealer") return std::make_unique<GarbageDealerAdversary>(n, t);
  if (key == "adaptive") return std::make_unique<AdaptiveAdversary>(n, t);
  throw ConfigError("unknown adversary strategy '" + key + "'");
}

}  // namespace qba

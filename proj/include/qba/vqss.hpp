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

// Graded quantum share-and-verify with two-level polynomial encoding.
//
// Level 1: the dealer encodes each of its (k+1)^2 registers into N qupits and
// sends component j to player j. Level 2: player j re-encodes every received
// qupit into N qupits and sends component i to holder i. Holder i therefore
// keeps, per grid register, one qupit per origin j.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qba/netsim.hpp"
#include "qba/qudit_sim.hpp"
#include "qba/qupit_pool.hpp"
#include "qba/rs_code.hpp"
#include "qba/vqss_schedule.hpp"

namespace qba {

struct VqssParams {
  unsigned n = 5;
  unsigned p = 7;
  unsigned k = 2;
  unsigned t = 1;
  // Rows >= 1 hold the encoded zero; false gives the literal all-zero product.
  bool encoded_zero = true;
  SecondCheckRange range = SecondCheckRange::Normalized;
  std::size_t term_budget = kDefaultTermBudget;
  void validate() const;
  RSCode code() const { return RSCode(n, p, t); }
};

struct ChallengeSet {
  std::vector<unsigned> b;        // b[m-1], m = 1..k
  std::vector<unsigned> b_prime;  // b'[n-1], n = 1..k
  unsigned value(const VerifierOp& op) const;
};

// Every index is 1 + (sum of the nodes' contributions mod (P - 1)), so one
// uniformly random honest contribution makes the challenge uniform on 1..P-1.
ChallengeSet challenges_from_contributions(unsigned k, unsigned p,
                                           const std::vector<std::vector<unsigned>>& contributions);
ChallengeSet draw_challenges(unsigned k, unsigned p, unsigned n, Rng& rng);

// Dealer's level-1 registers, row-major over (row, col).
struct RegisterGrid {
  unsigned k = 0;
  std::vector<std::vector<QupitId>> registers;  // [(row)*(k+1)+col][component]
  const std::vector<QupitId>& at(Reg r) const { return registers[r.row * (k + 1) + r.col]; }
};

enum class DealerKind { Honest, Garbage };

// |phi> = N^-1/2 sum_{a<N} |a>, encoded; uniform sums; encoded zeros.
RegisterGrid prepare_dealer_grid(QupitPool& pool, const VqssParams& params, DealerKind kind,
                                 Rng& rng);

struct Transfer {
  Reg reg;
  unsigned origin = 0;  // level-1 component index (player j), for round 2
  unsigned from = 0;
  unsigned to = 0;
};
// Round 1: component i of every register from the dealer to node i.
std::vector<Transfer> distribution_plan_round1(const VqssParams& params, unsigned dealer);
// Round 2: for each origin j and register, component i from j to node i.
std::vector<Transfer> distribution_plan_round2(const VqssParams& params);

struct VqssFaults {
  DealerKind dealer = DealerKind::Honest;
  // Players that replace their level-2 encoding with random basis states.
  std::vector<bool> garbage_players;
};

struct VerificationOutcome {
  bool dealer_flagged = false;
  std::vector<bool> origin_flagged;  // per player j
  // value[j][i]: holder i's final reading of origin j's kept qupit.
  std::vector<std::vector<unsigned>> value;
  std::size_t peak_terms = 0;
  unsigned noise_events = 0;
};

struct VqssRunOptions {
  unsigned dealer = 0;
  double fidelity = 1.0;
  std::ostream* trace = nullptr;  // stage TAB node TAB op TAB operands TAB outcome
};

// Exact sparse-state execution of sharing, verification and the final
// measurement. Throws BudgetError when the state outgrows the budget.
VerificationOutcome run_exact(const VqssParams& params, const ChallengeSet& challenges,
                              const VqssFaults& faults, Network& net, Rng& rng,
                              const VqssRunOptions& options = {});

// Samples outcomes with the distribution of the noiseless process. A
// garbage dealer is caught with probability `catch_probability`.
VerificationOutcome run_stochastic(const VqssParams& params, const VqssFaults& faults,
                                   Network& net, Rng& rng, unsigned dealer,
                                   double catch_probability);
double default_catch_probability(unsigned k);  // 1 - 2^-k

// Charges the sharing transfers and the verification/measurement gradecasts
// exactly as run_exact does (used by the stochastic backend and estimators).
void account_sharing_traffic(const VqssParams& params, Network& net, unsigned dealer);
void account_verification_traffic(const VqssParams& params, Network& net);

// Level-2 acceptance of one measured register for one origin.
bool level2_check(const RSCode& code, const std::vector<std::uint8_t>& readings,
                  bool fourier_domain);
// Gradecast measurement vectors accepted iff the values at positions not in
// `excluded` interpolate to degree <= t with at most t discrepancies.
bool consistency_predicate(const RSCode& code, const std::vector<std::optional<unsigned>>& values,
                           unsigned t);

}  // namespace qba

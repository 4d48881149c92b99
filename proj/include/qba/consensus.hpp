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

// Classical agreement loop (P_r / P_0 / P_1 per iteration) around the
// oblivious common coin built on GradedQSV.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qba/adversary.hpp"
#include "qba/config.hpp"
#include "qba/netsim.hpp"
#include "qba/vqss.hpp"

namespace qba {

enum class QuantumBackend { Exact, Stochastic };

QuantumBackend parse_backend(const std::string& s);
std::string to_string(QuantumBackend b);

struct ProtocolConfig {
  unsigned n = 5;
  unsigned p = 7;
  unsigned k = 2;
  unsigned t = 1;
  unsigned max_rounds = 100;
  QuantumBackend backend = QuantumBackend::Stochastic;
  double fidelity = 1.0;
  double catch_probability = -1.0;  // < 0: 1 - 2^-k
  SecondCheckRange range = SecondCheckRange::Normalized;
  std::size_t term_budget = kDefaultTermBudget;
  GradecastCostModel cost_model{};

  void validate() const;
  VqssParams vqss() const;
  double effective_catch_probability() const;
  // Keys: n, p, k, t, max_rounds, backend, fidelity, catch_probability,
  // second_check_range (normalized|printed), term_budget.
  static ProtocolConfig from_config(const Config& cfg);
};

struct NodeState {
  unsigned id = 0;
  unsigned n = 0;  // network size, fixes the N/3 and 2N/3 thresholds
  unsigned b = 0;
  std::optional<unsigned> d;
  bool terminate_next = false;
  std::set<unsigned> fp;
  unsigned x = 0;
  std::map<unsigned, unsigned> last_seen;

  void decide(unsigned v);
  void flag(unsigned j);  // adds j to FP unless j is this node
};

// Records the votes in `inbox` into last_seen (plus the node's own b) and
// returns the number of ones among the most recent votes.
unsigned tally(NodeState& node, const std::vector<Message>& inbox);

// Sub-protocol steps on an already computed tally x.
void step_pr(NodeState& node, unsigned x, unsigned coin);
void step_p0(NodeState& node, unsigned x);
void step_p1(NodeState& node, unsigned x);

struct TranscriptRecord {
  unsigned round = 0;
  std::string phase;
  int from = -1;  // -1 = not a point-to-point message
  int to = -1;
  std::string kind;
  std::string payload;
};
void write_transcript(std::ostream& out, const std::vector<TranscriptRecord>& records);

struct QoccResult {
  unsigned dealer = 0;
  std::vector<unsigned> r;  // per node; meaningless for faulty ones
  VerificationOutcome verification;
  // sums[i][j]: SUM_ij evaluated by node i, nullopt = BAD.
  std::vector<std::vector<std::optional<unsigned>>> sums;
};

// One coin flip. `nodes` supplies and receives every node's FP set; entries
// of faulty nodes are left untouched.
QoccResult qocc(const ProtocolConfig& cfg, unsigned dealer, std::vector<NodeState>& nodes,
                Adversary& adversary, Network& net, Rng& rng,
                std::vector<TranscriptRecord>* transcript = nullptr, unsigned round = 0);

// Adds verification flags and gradecast evidence to FP_i. `received[j]` is
// holder j's value vector as node i received it.
void update_faulty(NodeState& node, const RSCode& code, const VerificationOutcome& verification,
                   unsigned dealer, const std::vector<GradecastResult>& received);

// SUM table row for node i and the resulting coin.
std::vector<std::optional<unsigned>> sum_row(const NodeState& node,
                                             const std::vector<GradecastResult>& received,
                                             unsigned n);
unsigned coin_from_sums(const std::vector<std::optional<unsigned>>& sums);

struct QbaResult {
  std::vector<std::optional<unsigned>> decisions;  // nullopt for faulty nodes
  std::vector<bool> faulty;                        // corrupted at any point
  unsigned rounds = 0;
  unsigned coin_flips = 0;
  std::vector<unsigned> coins;  // coin of the lowest-id honest node per flip
  std::vector<bool> coin_common;
  std::vector<std::set<unsigned>> final_fp;
  std::vector<TranscriptRecord> transcript;

  bool agreement() const;
  std::optional<unsigned> common_decision() const;
};

QbaResult run_qba(const ProtocolConfig& cfg, const std::vector<unsigned>& inputs,
                  Adversary& adversary, Network& net, Rng& rng, bool keep_transcript = true);

}  // namespace qba

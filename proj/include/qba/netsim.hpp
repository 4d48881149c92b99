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

// Synchronous network fabric over a complete graph: Bell-pair backed qupit
// teleportation with a per-pair depolarizing trajectory model, lock-step
// classical message exchange, and a traffic ledger with one row per
// (algorithm, phase, transport) combination.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qba/qudit_sim.hpp"
#include "qba/qupit_pool.hpp"

namespace qba {

unsigned qubits_per_qupit(unsigned p);  // ceil(log2 p)

struct RowKey {
  std::string id;  // unique; the display columns may repeat
  std::string algorithm;
  std::string phase;
  std::string comm_type;
  std::string source;
  std::string destination;
};

namespace rows {
RowKey dealer_sharing();
RowKey player_sharing();
RowKey verify_first_check();
RowKey verify_second_check();
RowKey coin_measurement();
RowKey agreement_votes();
}  // namespace rows

struct LedgerRow {
  RowKey key;
  std::uint64_t bell_pairs = 0;
  double classical_bits = 0.0;  // accounted under the gradecast cost model
  std::uint64_t wire_bits = 0;  // bits actually carried by round_exchange
  std::uint64_t gradecasts = 0;
  std::uint64_t reported_bits() const;  // classical_bits rounded to nearest
};

// bits = c1 * B * (N - 1) + c2 * B * (N - 1)^2 per gradecast of a B-bit value.
struct GradecastCostModel {
  double c1 = 1.0;
  double c2 = 2.0;
  double bits(unsigned value_bits, unsigned n) const;
  static GradecastCostModel load(const std::string& path);
  static GradecastCostModel shipped();  // data/gradecast_calibration.cfg
};

struct Message {
  unsigned from = 0;
  unsigned to = 0;
  std::string kind;
  std::vector<std::int64_t> payload;
  unsigned bits = 0;  // wire size
};

class Network {
 public:
  Network(unsigned n, unsigned p, double fidelity, GradecastCostModel model = {});

  unsigned size() const { return n_; }
  unsigned prime() const { return p_; }
  double fidelity() const { return fidelity_; }
  const GradecastCostModel& cost_model() const { return model_; }
  void set_noise_enabled(bool on) { noise_enabled_ = on; }

  // Consumes ceil(log2 P) Bell pairs on (src, dst) under `row`. No-op when
  // src == dst (a node keeps its own component).
  void account_teleport(unsigned src, unsigned dst, const RowKey& row);
  // account_teleport plus the noise trajectory on the transported qupit.
  // Returns the number of nontrivial Pauli errors applied.
  unsigned teleport(QupitPool& pool, QupitId q, unsigned src, unsigned dst, const RowKey& row,
                    Rng& rng);
  // Samples the noise for one qupit transfer without a state: returns the
  // accumulated (x, z) Pauli powers.
  std::pair<unsigned, unsigned> sample_transfer_noise(Rng& rng) const;

  // Delivers all messages at once; result[to] lists messages sorted by
  // (from, kind, payload). Wire bits go to `row`.
  std::vector<std::vector<Message>> round_exchange(std::vector<Message> messages,
                                                   const RowKey& row);
  // Charges one gradecast of a value_bits-bit value under the cost model.
  void account_gradecast(unsigned value_bits, const RowKey& row);

  const std::vector<LedgerRow>& ledger() const { return rows_; }
  const LedgerRow* find_row(const std::string& id) const;
  std::uint64_t bell_total() const;
  std::uint64_t classical_total() const;  // sum of reported_bits over rows
  std::uint64_t wire_total() const;
  std::uint64_t pair_bell(unsigned a, unsigned b) const;
  std::uint64_t pair_wire_bits(unsigned a, unsigned b) const;
  void write_csv(std::ostream& out) const;

 private:
  LedgerRow& row(const RowKey& key);
  void check_node(unsigned i) const;

  unsigned n_, p_;
  double fidelity_;
  GradecastCostModel model_;
  bool noise_enabled_ = true;
  std::vector<LedgerRow> rows_;
  std::vector<std::uint64_t> pair_bell_;
  std::vector<std::uint64_t> pair_wire_;
};

}  // namespace qba

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

#include "qba/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "qba/config.hpp"
#include "qba/errors.hpp"

namespace qba {

unsigned qubits_per_qupit(unsigned p) {
  if (p < 2) throw DomainError("dimension must be at least 2");
  unsigned bits = 0;
  while ((1U << bits) < p) ++bits;
  return bits;
}

namespace rows {
RowKey dealer_sharing() {
  return {"sharing-dealer", "GradedQSV", "Sharing", "Unicast", "Dealer", "All Nodes"};
}
RowKey player_sharing() {
  return {"sharing-players", "GradedQSV", "Sharing", "Unicast", "Node(i)", "Node (j)"};
}
RowKey verify_first_check() {
  return {"verify-first", "GradedQSV", "Verification", "Gradecast", "All Nodes", "All Nodes"};
}
RowKey verify_second_check() {
  return {"verify-second", "GradedQSV", "Verification", "Gradecast", "All Nodes", "All Nodes"};
}
RowKey coin_measurement() {
  return {"coin-measurement", "QOCC", "Measurement", "Gradecast", "All Nodes", "All Nodes"};
}
RowKey agreement_votes() {
  return {"votes", "QBA", "Vote", "Broadcast", "All Nodes", "All Nodes"};
}
}  // namespace rows

std::uint64_t LedgerRow::reported_bits() const {
  return static_cast<std::uint64_t>(std::llround(classical_bits));
}

double GradecastCostModel::bits(unsigned value_bits, unsigned n) const {
  const double b = value_bits;
  const double m = n > 0 ? n - 1.0 : 0.0;
  return c1 * b * m + c2 * b * m * m;
}

GradecastCostModel GradecastCostModel::load(const std::string& path) {
  const Config cfg = Config::load(path);
  GradecastCostModel m;
  m.c1 = cfg.require_double("c1");
  // c2 may be written as a fraction "num/den" to keep it exact.
  const std::string c2 = cfg.require_string("c2");
  const auto slash = c2.find('/');
  if (slash == std::string::npos) {
    m.c2 = cfg.require_double("c2");
  } else {
    Config frac;
    frac.set("num", c2.substr(0, slash));
    frac.set("den", c2.substr(slash + 1));
    const double den = frac.require_double("den");
    if (den == 0.0) throw ConfigError("c2 denominator is zero");
    m.c2 = frac.require_double("num") / den;
  }
  if (m.c1 < 0 || m.c2 < 0) throw ConfigError("gradecast cost constants must be non-negative");
  return m;
}

GradecastCostModel GradecastCostModel::shipped() {
  return load(std::string(QBA_DATA_DIR) + "/gradecast_calibration.cfg");
}

Network::Network(unsigned n, unsigned p, double fidelity, GradecastCostModel model)
    : n_(n), p_(p), fidelity_(fidelity), model_(model), pair_bell_(n * n, 0), pair_wire_(n * n, 0) {
  if (n == 0) throw ConfigError("network needs at least one node");
  if (!(fidelity > 0.0 && fidelity <= 1.0)) throw ConfigError("fidelity must lie in (0, 1]");
  for (const auto& key : {rows::dealer_sharing(), rows::player_sharing(),
                          rows::verify_first_check(), rows::verify_second_check(),
                          rows::coin_measurement()}) {
    rows_.push_back({key});
  }
}

void Network::check_node(unsigned i) const {
  if (i >= n_) throw UsageError("node id out of range");
}

LedgerRow& Network::row(const RowKey& key) {
  for (auto& r : rows_) {
    if (r.key.id == key.id) return r;
  }
  rows_.push_back({key});
  return rows_.back();
}

const LedgerRow* Network::find_row(const std::string& id) const {
  for (const auto& r : rows_) {
    if (r.key.id == id) return &r;
  }
  return nullptr;
}

void Network::account_teleport(unsigned src, unsigned dst, const RowKey& key) {
  check_node(src);
  check_node(dst);
  if (src == dst) return;
  const unsigned pairs = qubits_per_qupit(p_);
  row(key).bell_pairs += pairs;
  pair_bell_[std::min(src, dst) * n_ + std::max(src, dst)] += pairs;
}

std::pair<unsigned, unsigned> Network::sample_transfer_noise(Rng& rng) const {
  unsigned x = 0, z = 0;
  if (!noise_enabled_ || fidelity_ >= 1.0) return {0, 0};
  std::bernoulli_distribution hit(1.0 - fidelity_);
  std::uniform_int_distribution<unsigned> pick(1, p_ * p_ - 1);
  for (unsigned pair = 0; pair < qubits_per_qupit(p_); ++pair) {
    if (!hit(rng)) continue;
    const unsigned e = pick(rng);
    x = (x + e / p_) % p_;
    z = (z + e % p_) % p_;
  }
  return {x, z};
}

unsigned Network::teleport(QupitPool& pool, QupitId q, unsigned src, unsigned dst,
                           const RowKey& key, Rng& rng) {
  account_teleport(src, dst, key);
  if (src == dst || !noise_enabled_ || fidelity_ >= 1.0) return 0;
  unsigned errors = 0;
  std::bernoulli_distribution hit(1.0 - fidelity_);
  std::uniform_int_distribution<unsigned> pick(1, p_ * p_ - 1);
  for (unsigned pair = 0; pair < qubits_per_qupit(p_); ++pair) {
    if (!hit(rng)) continue;
    const unsigned e = pick(rng);
    pool.pauli(q, e / p_, e % p_);
    ++errors;
  }
  return errors;
}

std::vector<std::vector<Message>> Network::round_exchange(std::vector<Message> messages,
                                                          const RowKey& key) {
  std::vector<std::vector<Message>> inbox(n_);
  LedgerRow& r = row(key);
  for (auto& m : messages) {
    check_node(m.from);
    check_node(m.to);
    if (m.from != m.to) {
      r.wire_bits += m.bits;
      pair_wire_[std::min(m.from, m.to) * n_ + std::max(m.from, m.to)] += m.bits;
    }
    inbox[m.to].push_back(std::move(m));
  }
  for (auto& box : inbox) {
    std::sort(box.begin(), box.end(), [](const Message& a, const Message& b) {
      return std::tie(a.from, a.kind, a.payload) < std::tie(b.from, b.kind, b.payload);
    });
  }
  return inbox;
}

void Network::account_gradecast(unsigned value_bits, const RowKey& key) {
  LedgerRow& r = row(key);
  r.classical_bits += model_.bits(value_bits, n_);
  ++r.gradecasts;
}

std::uint64_t Network::bell_total() const {
  std::uint64_t s = 0;
  for (const auto& r : rows_) s += r.bell_pairs;
  return s;
}

std::uint64_t Network::classical_total() const {
  std::uint64_t s = 0;
  for (const auto& r : rows_) s += r.reported_bits();
  return s;
}

std::uint64_t Network::wire_total() const {
  std::uint64_t s = 0;
  for (const auto& r : rows_) s += r.wire_bits;
  return s;
}

std::uint64_t Network::pair_bell(unsigned a, unsigned b) const {
  check_node(a);
  check_node(b);
  return pair_bell_[std::min(a, b) * n_ + std::max(a, b)];
}

std::uint64_t Network::pair_wire_bits(unsigned a, unsigned b) const {
  check_node(a);
  check_node(b);
  return pair_wire_[std::min(a, b) * n_ + std::max(a, b)];
}

void Network::write_csv(std::ostream& out) const {
  out << "algorithm,phase,comm_type,source,destination,bell_pairs,classical_bits\n";
  for (const auto& r : rows_) {
    out << r.key.algorithm << ',' << r.key.phase << ',' << r.key.comm_type << ',' << r.key.source
        << ',' << r.key.destination << ',' << r.bell_pairs << ',' << r.reported_bits() << '\n';
  }
  out << "total,-,-,-,-," << bell_total() << ',' << classical_total() << '\n';
}

}  // namespace qba

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

#include "qba/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "qba/errors.hpp"

namespace qba {

QuantumBackend parse_backend(const std::string& s) {
  if (s == "exact") return QuantumBackend::Exact;
  if (s == "stochastic" || s == "stochastic-oracle") return QuantumBackend::Stochastic;
  throw ConfigError("unknown quantum backend '" + s + "'");
}

std::string to_string(QuantumBackend b) {
  return b == QuantumBackend::Exact ? "exact" : "stochastic";
}

void ProtocolConfig::validate() const {
  if (3 * t >= n) throw ConfigError("fault bound must satisfy t < N/3");
  if (n >= p) throw ConfigError("prime P must exceed N");
  if (max_rounds == 0) throw ConfigError("max_rounds must be positive");
  if (!(fidelity > 0.0 && fidelity <= 1.0)) throw ConfigError("fidelity must lie in (0, 1]");
  if (catch_probability > 1.0) throw ConfigError("catch probability above 1");
  vqss().validate();
}

VqssParams ProtocolConfig::vqss() const {
  VqssParams v;
  v.n = n;
  v.p = p;
  v.k = k;
  v.t = t;
  v.range = range;
  v.term_budget = term_budget;
  return v;
}

double ProtocolConfig::effective_catch_probability() const {
  return catch_probability < 0.0 ? default_catch_probability(k) : catch_probability;
}

ProtocolConfig ProtocolConfig::from_config(const Config& cfg) {
  ProtocolConfig c;
  auto count = [&](const char* key, unsigned fallback) {
    const auto v = cfg.get_int(key, fallback);
    if (v < 0) throw ConfigError(std::string(key) + " must be non-negative");
    return static_cast<unsigned>(v);
  };
  c.n = count("n", c.n);
  c.p = count("p", c.p);
  c.k = count("k", c.k);
  c.t = count("t", c.t);
  c.max_rounds = count("max_rounds", c.max_rounds);
  c.backend = parse_backend(cfg.get_string("backend", to_string(c.backend)));
  c.fidelity = cfg.get_double("fidelity", c.fidelity);
  c.catch_probability = cfg.get_double("catch_probability", c.catch_probability);
  const std::string range = cfg.get_string("second_check_range", "normalized");
  if (range == "normalized") {
    c.range = SecondCheckRange::Normalized;
  } else if (range == "printed") {
    c.range = SecondCheckRange::Printed;
  } else {
    throw ConfigError("second_check_range must be 'normalized' or 'printed'");
  }
  c.term_budget = static_cast<std::size_t>(cfg.get_int("term_budget", c.term_budget));
  const std::string cal = cfg.get_string("gradecast_calibration", "");
  c.cost_model = cal.empty() ? GradecastCostModel::shipped() : GradecastCostModel::load(cal);
  c.validate();
  return c;
}

void NodeState::decide(unsigned v) {
  if (d) throw UsageError("node " + std::to_string(id) + " decided twice");
  d = v;
}

void NodeState::flag(unsigned j) {
  if (j != id) fp.insert(j);
}

unsigned tally(NodeState& node, const std::vector<Message>& inbox) {
  for (const auto& m : inbox) {
    if (m.kind != "vote" || m.payload.size() != 1) continue;
    if (m.payload[0] != 0 && m.payload[0] != 1) continue;  // malformed: ignored
    node.last_seen[m.from] = static_cast<unsigned>(m.payload[0]);
  }
  node.last_seen[node.id] = node.b;
  unsigned x = 0;
  for (const auto& [from, bit] : node.last_seen) x += bit;
  node.x = x;
  return x;
}

namespace {

// Thresholds on exact rationals: x < N/3 and x > 2N/3.
bool low(unsigned x, unsigned n) { return 3 * x < n; }
bool high(unsigned x, unsigned n) { return 3 * x > 2 * n; }

unsigned network_size(const NodeState& node) {
  if (node.n == 0) throw UsageError("node state has no network size");
  return node.n;
}

}  // namespace

void step_pr(NodeState& node, unsigned x, unsigned coin) {
  const unsigned n = network_size(node);
  node.x = x;
  node.b = low(x, n) ? 0 : high(x, n) ? 1 : coin;
}

void step_p0(NodeState& node, unsigned x) {
  const unsigned n = network_size(node);
  node.x = x;
  if (low(x, n)) {
    node.b = 0;
    node.terminate_next = true;
  } else {
    node.b = high(x, n) ? 1 : 0;
  }
}

void step_p1(NodeState& node, unsigned x) {
  const unsigned n = network_size(node);
  node.x = x;
  if (high(x, n)) {
    node.b = 1;
    node.terminate_next = true;
  } else {
    node.b = low(x, n) ? 0 : 1;
  }
}

void write_transcript(std::ostream& out, const std::vector<TranscriptRecord>& records) {
  for (const auto& r : records) {
    out << r.round << '\t' << r.phase << '\t';
    if (r.from >= 0) out << r.from;
    out << '\t';
    if (r.to >= 0) out << r.to;
    out << '\t' << r.kind << '\t' << r.payload << '\n';
  }
}

namespace {

template <typename Range>
std::string join(const Range& values) {
  std::ostringstream s;
  bool first = true;
  for (const auto& v : values) {
    if (!first) s << ',';
    s << v;
    first = false;
  }
  return s.str();
}

bool valid_vector(const GradecastResult& r, unsigned n) {
  return r.grade == 2 && r.value && r.value->size() == n;
}

}  // namespace

void update_faulty(NodeState& node, const RSCode& code, const VerificationOutcome& verification,
                   unsigned dealer, const std::vector<GradecastResult>& received) {
  const unsigned n = code.length();
  const unsigned p = code.prime();
  if (verification.dealer_flagged) node.flag(dealer);
  for (unsigned j = 0; j < verification.origin_flagged.size(); ++j) {
    if (verification.origin_flagged[j]) node.flag(j);
  }
  // Anything short of a clean grade-2 vector is the sender's fault.
  for (unsigned j = 0; j < n; ++j) {
    if (!valid_vector(received[j], n)) {
      node.flag(j);
      continue;
    }
    for (auto v : *received[j].value) {
      if (v < 0 || v >= static_cast<std::int64_t>(p)) node.flag(j);
    }
  }
  // Every origin's column must decode; holders off the decoded word lied.
  for (unsigned k = 0; k < n; ++k) {
    if (node.fp.count(k)) continue;
    std::vector<std::optional<unsigned>> column(n);
    for (unsigned j = 0; j < n; ++j) {
      if (node.fp.count(j) || !valid_vector(received[j], n)) continue;
      column[j] = static_cast<unsigned>((*received[j].value)[k]);
    }
    const auto word = code.decode_word(column, code.degree());
    if (!word) {
      node.flag(k);
      continue;
    }
    for (unsigned j = 0; j < n; ++j) {
      if (column[j] && *column[j] != (*word)[j + 1]) node.flag(j);
    }
  }
}

std::vector<std::optional<unsigned>> sum_row(const NodeState& node,
                                             const std::vector<GradecastResult>& received,
                                             unsigned n) {
  std::vector<std::optional<unsigned>> sums(n);
  for (unsigned j = 0; j < n; ++j) {
    if (node.fp.count(j) || !valid_vector(received[j], n)) continue;
    std::int64_t s = 0;
    for (unsigned k = 0; k < n; ++k) {
      if (!node.fp.count(k)) s += (*received[j].value)[k];
    }
    sums[j] = static_cast<unsigned>(((s % n) + n) % n);
  }
  return sums;
}

unsigned coin_from_sums(const std::vector<std::optional<unsigned>>& sums) {
  for (const auto& s : sums) {
    if (s && *s == 0) return 0;
  }
  return 1;
}

QoccResult qocc(const ProtocolConfig& cfg, unsigned dealer, std::vector<NodeState>& nodes,
                Adversary& adversary, Network& net, Rng& rng,
                std::vector<TranscriptRecord>* transcript, unsigned round) {
  const unsigned n = cfg.n;
  const VqssParams params = cfg.vqss();
  const RSCode code = params.code();

  VqssFaults faults;
  faults.dealer = adversary.corrupted(dealer) ? adversary.dealer_kind() : DealerKind::Honest;
  if (adversary.garbage_shares()) faults.garbage_players = adversary.corrupted_set();

  QoccResult out;
  out.dealer = dealer;
  if (cfg.backend == QuantumBackend::Exact) {
    VqssRunOptions opts;
    opts.dealer = dealer;
    opts.fidelity = cfg.fidelity;
    out.verification =
        run_exact(params, draw_challenges(params.k, params.p, n, rng), faults, net, rng, opts);
  } else {
    out.verification =
        run_stochastic(params, faults, net, rng, dealer, cfg.effective_catch_probability());
  }
  if (transcript) {
    transcript->push_back({round, "qocc", static_cast<int>(dealer), -1, "dealer",
                           out.verification.dealer_flagged ? "flagged" : "ok"});
  }

  // Holder j gradecasts its readings (Value_{k,j})_k.
  const unsigned bits = qubits_per_qupit(params.p);
  GradecastFaults gc_faults;
  gc_faults.faulty = adversary.corrupted_set();
  gc_faults.tamper = adversary.value_tamper(params.p, rng);
  std::vector<std::vector<GradecastResult>> received(n, std::vector<GradecastResult>(n));
  for (unsigned j = 0; j < n; ++j) {
    GcValue v(n);
    for (unsigned k = 0; k < n; ++k) v[k] = out.verification.value[k][j];
    const auto res = gradecast(net, j, v, cfg.t, gc_faults, rows::coin_measurement(), bits);
    for (unsigned k = 0; k < n; ++k) net.account_gradecast(bits, rows::coin_measurement());
    for (unsigned i = 0; i < n; ++i) received[i][j] = res[i];
  }

  out.r.assign(n, 1);
  out.sums.assign(n, {});
  for (unsigned i = 0; i < n; ++i) {
    if (adversary.corrupted(i)) continue;
    NodeState& node = nodes[i];
    const std::size_t before = node.fp.size();
    update_faulty(node, code, out.verification, dealer, received[i]);
    out.sums[i] = sum_row(node, received[i], n);
    out.r[i] = coin_from_sums(out.sums[i]);
    if (transcript) {
      for (unsigned j = 0; j < n; ++j) {
        const auto& g = received[i][j];
        transcript->push_back({round, "qocc", static_cast<int>(j), static_cast<int>(i), "value",
                               (g.value ? join(*g.value) : std::string("-")) + "/grade" +
                                   std::to_string(g.grade)});
      }
      if (node.fp.size() != before) {
        transcript->push_back({round, "qocc", -1, static_cast<int>(i), "fp", join(node.fp)});
      }
      std::vector<std::string> sums;
      for (const auto& s : out.sums[i]) sums.push_back(s ? std::to_string(*s) : "BAD");
      transcript->push_back({round, "qocc", -1, static_cast<int>(i), "sum", join(sums)});
      transcript->push_back(
          {round, "qocc", -1, static_cast<int>(i), "coin", std::to_string(out.r[i])});
    }
  }
  return out;
}

bool QbaResult::agreement() const {
  std::optional<unsigned> seen;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (faulty[i]) continue;
    if (!decisions[i]) return false;
    if (seen && *seen != *decisions[i]) return false;
    seen = decisions[i];
  }
  return true;
}

std::optional<unsigned> QbaResult::common_decision() const {
  if (!agreement()) return std::nullopt;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (!faulty[i]) return decisions[i];
  }
  return std::nullopt;
}

QbaResult run_qba(const ProtocolConfig& cfg, const std::vector<unsigned>& inputs,
                  Adversary& adversary, Network& net, Rng& rng, bool keep_transcript) {
  cfg.validate();
  const unsigned n = cfg.n;
  if (inputs.size() != n) throw UsageError("run_qba needs one input bit per node");
  if (net.size() != n) throw UsageError("network size differs from N");

  std::vector<NodeState> nodes(n);
  for (unsigned i = 0; i < n; ++i) {
    if (inputs[i] > 1) throw DomainError("input bits must be 0 or 1");
    nodes[i].id = i;
    nodes[i].n = n;
    nodes[i].b = inputs[i];
  }

  QbaResult res;
  res.faulty.assign(n, false);
  auto* tr = keep_transcript ? &res.transcript : nullptr;
  static const char* kPhaseNames[] = {"Pr", "P0", "P1"};
  const VotePhase kPhases[] = {VotePhase::Pr, VotePhase::P0, VotePhase::P1};

  auto honest = [&](unsigned i) { return !adversary.corrupted(i); };
  auto all_decided = [&] {
    for (unsigned i = 0; i < n; ++i) {
      if (honest(i) && !nodes[i].d) return false;
    }
    return true;
  };

  for (unsigned round = 1; round <= cfg.max_rounds; ++round) {
    AdversaryView view;
    view.iteration = round;
    view.next_dealer = (round - 1) % n;
    for (const auto& nd : nodes) view.bits.push_back(nd.b);
    adversary.on_iteration(view, rng);
    for (unsigned i = 0; i < n; ++i) res.faulty[i] = res.faulty[i] || adversary.corrupted(i);

    for (unsigned ph = 0; ph < 3; ++ph) {
      const char* phase = kPhaseNames[ph];
      // Communication phase. Decided honest nodes keep replaying their value.
      std::vector<Message> msgs;
      for (unsigned from = 0; from < n; ++from) {
        for (unsigned to = 0; to < n; ++to) {
          if (to == from) continue;
          std::optional<unsigned> bit = nodes[from].b;
          if (!honest(from)) bit = adversary.vote(kPhases[ph], from, to, nodes[from].b, rng);
          if (!bit) continue;
          msgs.push_back({from, to, "vote", {static_cast<std::int64_t>(*bit)}, 1});
          if (tr) tr->push_back({round, phase, static_cast<int>(from), static_cast<int>(to),
                                 "vote", std::to_string(*bit)});
        }
      }
      const auto inbox = net.round_exchange(std::move(msgs), rows::agreement_votes());

      // Computation phase.
      std::vector<unsigned> x(n, 0);
      bool coin_needed = false;
      for (unsigned i = 0; i < n; ++i) {
        if (!honest(i) || nodes[i].d) continue;
        x[i] = tally(nodes[i], inbox[i]);
        if (nodes[i].terminate_next) {
          nodes[i].decide(nodes[i].b);
          if (tr) tr->push_back({round, phase, -1, static_cast<int>(i), "decide",
                                 std::to_string(nodes[i].b)});
        } else if (ph == 0) {
          coin_needed = true;
        }
      }
      std::vector<unsigned> coin(n, 1);
      if (coin_needed) {
        const QoccResult q = qocc(cfg, view.next_dealer, nodes, adversary, net, rng, tr, round);
        coin = q.r;
        std::optional<unsigned> first;
        bool common = true;
        for (unsigned i = 0; i < n; ++i) {
          if (!honest(i)) continue;
          if (!first) first = q.r[i];
          common = common && q.r[i] == *first;
        }
        res.coins.push_back(first.value_or(1));
        res.coin_common.push_back(common);
        ++res.coin_flips;
      }
      for (unsigned i = 0; i < n; ++i) {
        if (!honest(i) || nodes[i].d) continue;
        if (ph == 0) step_pr(nodes[i], x[i], coin[i]);
        if (ph == 1) step_p0(nodes[i], x[i]);
        if (ph == 2) step_p1(nodes[i], x[i]);
      }
    }
    if (all_decided()) {
      res.rounds = round;
      break;
    }
  }
  if (!all_decided()) {
    throw NonTerminationError("agreement did not terminate within " +
                              std::to_string(cfg.max_rounds) + " rounds");
  }
  res.decisions.assign(n, std::nullopt);
  res.final_fp.assign(n, {});
  for (unsigned i = 0; i < n; ++i) {
    res.final_fp[i] = nodes[i].fp;
    if (!res.faulty[i]) res.decisions[i] = nodes[i].d;
  }
  return res;
}

}  // namespace qba

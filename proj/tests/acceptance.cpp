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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Expected values come from the oracles in oracles.hpp or
// are computed inline, never from the code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qba/arith_circuits.hpp"
#include "qba/consensus.hpp"
#include "qba/errors.hpp"
#include "qba/resources.hpp"
#include "qba/vqss.hpp"

using namespace qba;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Rng seeded(std::initializer_list<unsigned> words) {
  std::seed_seq seq(words);
  return Rng(seq);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ProtocolConfig small(unsigned n, unsigned p, unsigned k, unsigned t, QuantumBackend backend) {
  ProtocolConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.k = k;
  cfg.t = t;
  cfg.backend = backend;
  cfg.cost_model = GradecastCostModel::shipped();
  return cfg;
}

std::vector<NodeState> fresh_nodes(unsigned n) {
  std::vector<NodeState> nodes(n);
  for (unsigned i = 0; i < n; ++i) {
    nodes[i].id = i;
    nodes[i].n = n;
  }
  return nodes;
}

Verdict multiplier() {
  const auto t0 = Clock::now();
  unsigned ok = 0;
  for (unsigned b = 1; b < 7; ++b) {
    const auto c = arith::build_mult7(b);
    for (unsigned x = 0; x < 7; ++x) ok += simulate_basis(c, x) == oracle::mul_mod(b, x, 7);
  }
  const double s = seconds_since(t0);
  return {ok == 42 && s < 1.0, fmt("%u/42 exact in %.3f s", ok, s)};
}

Verdict cx_gate() {
  const auto t0 = Clock::now();
  unsigned ok = 0;
  for (unsigned b = 1; b < 7; ++b) {
    const auto c = arith::build_cx_b(b);
    for (unsigned v = 0; v < 7; ++v) {
      for (unsigned w = 0; w < 7; ++w) {
        const unsigned target = (v + oracle::mul_mod(b, w, 7)) % 7;
        // Operands in bits 0-2 and 3-5; every ancilla above must return to 0.
        ok += simulate_basis(c, v | (w << 3)) == (v | (target << 3));
      }
    }
  }
  const double s = seconds_since(t0);
  return {ok == 294 && s < 10.0, fmt("%u/294 exact in %.3f s", ok, s)};
}

// Honest QOCC instance at (5,7,2) on the stochastic backend; traffic read back
// from the simulated ledger.
Network simulated_default_run(double& secs) {
  const auto t0 = Clock::now();
  const ProtocolConfig cfg = small(5, 7, 2, 1, QuantumBackend::Stochastic);
  Network net(cfg.n, cfg.p, 1.0, cfg.cost_model);
  Rng rng(7);
  auto honest = make_adversary("honest", cfg.n, cfg.t);
  auto nodes = fresh_nodes(cfg.n);
  qocc(cfg, 0, nodes, *honest, net, rng);
  secs = seconds_since(t0);
  return net;
}

std::uint64_t bell_of(const TrafficTotals& t, const std::string& phase, const std::string& src) {
  std::uint64_t s = 0;
  for (const auto& r : t.rows) {
    if (r.phase == phase && r.source == src) s += r.bell_pairs;
  }
  return s;
}

Verdict bell_pairs() {
  double secs = 0;
  const auto ledger = traffic_from_ledger(simulated_default_run(secs));
  const auto formula = bell_and_classical(small(5, 7, 2, 1, QuantumBackend::Stochastic),
                                          GradecastCostModel::shipped());
  // Independent count: each of (k+1)^2 registers per recipient, ceil(log2 7) = 3 qubits.
  const std::uint64_t dealer = 9ULL * 4 * 3, players = 5 * dealer;
  bool pass = secs < 60.0;
  for (const auto* t : {&ledger, &formula}) {
    pass = pass && bell_of(*t, "Sharing", "Dealer") == dealer &&
           bell_of(*t, "Sharing", "Node(i)") == players && t->bell_total == dealer + players;
  }
  return {pass && dealer == 108 && players == 540,
          fmt("ledger %llu+%llu=%llu, formula %llu+%llu=%llu (%.2f s)",
              (unsigned long long)bell_of(ledger, "Sharing", "Dealer"),
              (unsigned long long)bell_of(ledger, "Sharing", "Node(i)"),
              (unsigned long long)ledger.bell_total,
              (unsigned long long)bell_of(formula, "Sharing", "Dealer"),
              (unsigned long long)bell_of(formula, "Sharing", "Node(i)"),
              (unsigned long long)formula.bell_total, secs)};
}

Verdict classical_bits() {
  double secs = 0;
  const Network net = simulated_default_run(secs);
  auto bits = [&](const char* id) {
    const LedgerRow* r = net.find_row(id);
    return r ? r->reported_bits() : 0ULL;
  };
  const auto first = bits("verify-first"), second = bits("verify-second"),
             coin = bits("coin-measurement");
  const auto total = traffic_from_ledger(net).classical_total;
  return {first == 14160 && second == 4720 && coin == 2360 && total == 21240,
          fmt("%llu + %llu + %llu = %llu", (unsigned long long)first,
              (unsigned long long)second, (unsigned long long)coin, (unsigned long long)total)};
}

const DesignComparison& comparison() {
  static const DesignComparison c = compare_designs(small(5, 7, 2, 1, QuantumBackend::Stochastic),
                                                    CostTable::shipped(),
                                                    GradecastCostModel::shipped());
  return c;
}

Verdict module_goldens() {
  const auto& r = comparison().at(Design::Custom);
  struct Want {
    const char* module;
    unsigned depth, qubits;
  };
  bool pass = true;
  std::string got;
  for (const Want w : {Want{"Encoder", 59, 135}, Want{"CX^b", 157, 180}, Want{"QFT", 5, 15}}) {
    for (const auto& m : r.modules) {
      if (m.module != w.module) continue;
      pass = pass && m.depth == w.depth && m.qubits == w.qubits;
      got += fmt("%s %u/%u  ", w.module, m.depth, m.qubits);
    }
  }
  return {pass && r.modules.size() == 3, got};
}

Verdict volume() {
  const auto& r = comparison().at(Design::CustomPipelined);
  const bool kq = std::abs(r.KQ - 1.3e5) <= 0.15 * 1.3e5;
  const bool eps = r.epsilon_g >= 1.1e-6 / 2 && r.epsilon_g <= 1.1e-6 * 2;
  return {kq && eps, fmt("K=%u Q=%u KQ=%.0f eps_g=%.3g", r.K, r.Q, r.KQ, r.epsilon_g)};
}

Verdict improvement() {
  const auto& c = comparison();
  const double depth = double(c.at(Design::CustomPipelined).K) / c.at(Design::BaselineGeneric).K;
  const double qubits = double(c.at(Design::Custom).Q) / c.at(Design::BaselineGeneric).Q;
  return {depth <= 0.60 && qubits <= 0.85,
          fmt("depth ratio %.3f (<= 0.60), qubit ratio %.3f (<= 0.85)", depth, qubits)};
}

Verdict protocol_properties() {
  const auto t0 = Clock::now();
  ProtocolConfig cfg = small(5, 7, 2, 1, QuantumBackend::Stochastic);
  unsigned agreement_bad = 0, validity_bad = 0, unterminated = 0;
  double worst_mean = 0;
  std::string worst;
  for (const auto& key : adversary_keys()) {
    if (key == "honest") continue;
    double rounds = 0;
    for (unsigned trial = 0; trial < 1000; ++trial) {
      Rng rng = seeded({trial, 8U});
      auto adv = make_adversary(key, cfg.n, cfg.t);
      Network net(cfg.n, cfg.p, 1.0, cfg.cost_model);
      // Every third trial is unanimous, the rest are random splits.
      const bool unanimous = trial % 3 == 0;
      const unsigned v = (trial / 3) % 2;
      std::vector<unsigned> in(cfg.n);
      for (auto& b : in) b = unanimous ? v : static_cast<unsigned>(rng() % 2);
      try {
        const auto r = run_qba(cfg, in, *adv, net, rng, false);
        agreement_bad += !r.agreement();
        if (unanimous) validity_bad += r.common_decision() != std::optional<unsigned>(v);
        rounds += r.rounds;
      } catch (const NonTerminationError&) {
        ++unterminated;
        rounds += cfg.max_rounds;
      }
    }
    if (rounds / 1000 >= worst_mean) {
      worst_mean = rounds / 1000;
      worst = key;
    }
  }
  const double s = seconds_since(t0);
  return {agreement_bad == 0 && validity_bad == 0 && unterminated == 0 && worst_mean <= 10 &&
              s < 600,
          fmt("5x1000 trials: agreement %u, validity %u, unterminated %u, worst mean rounds %.2f "
              "(%s), %.1f s",
              agreement_bad, validity_bad, unterminated, worst_mean, worst.c_str(), s)};
}

Verdict exact_end_to_end() {
  const auto t0 = Clock::now();
  const ProtocolConfig cfg = small(4, 5, 1, 1, QuantumBackend::Exact);
  auto honest = make_adversary("honest", cfg.n, cfg.t);
  const unsigned trials = 50;
  unsigned flags = 0, zeros = 0, split = 0;
  for (unsigned trial = 0; trial < trials; ++trial) {
    Rng rng = seeded({trial, 9U});
    Network net(cfg.n, cfg.p, 1.0, cfg.cost_model);
    auto nodes = fresh_nodes(cfg.n);
    const auto q = qocc(cfg, trial % cfg.n, nodes, *honest, net, rng);
    flags += q.verification.dealer_flagged ||
             std::count(q.verification.origin_flagged.begin(),
                        q.verification.origin_flagged.end(), true) > 0;
    for (const auto& nd : nodes) flags += !nd.fp.empty();
    split += std::any_of(q.r.begin(), q.r.end(), [&](unsigned r) { return r != q.r[0]; });
    zeros += q.r[0] == 0;
  }
  const double p = oracle::coin_zero_probability(cfg.n, cfg.p, cfg.t);
  const double phat = double(zeros) / trials;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  const double s = seconds_since(t0);
  return {flags == 0 && split == 0 && std::abs(phat - p) <= 3 * sigma && s < 1800,
          fmt("flags %u, split coins %u, P(r=0) %.3f vs oracle %.3f +- %.3f (3 sigma), %.1f s",
              flags, split, phat, p, 3 * sigma, s)};
}

double garbage_flag_rate(unsigned k, unsigned trials) {
  const ProtocolConfig cfg = small(4, 5, k, 1, QuantumBackend::Exact);
  VqssFaults faults;
  faults.dealer = DealerKind::Garbage;
  unsigned flagged = 0;
  for (unsigned trial = 0; trial < trials; ++trial) {
    Rng rng = seeded({trial, k, 10U});
    Network net(cfg.n, cfg.p, 1.0, cfg.cost_model);
    VqssRunOptions opts;
    opts.dealer = trial % cfg.n;
    const auto v = run_exact(cfg.vqss(), draw_challenges(k, cfg.p, cfg.n, rng), faults, net, rng,
                             opts);
    flagged += v.dealer_flagged;
  }
  return double(flagged) / trials;
}

Verdict soundness() {
  const auto t0 = Clock::now();
  const double k1 = garbage_flag_rate(1, 200);
  const double k2 = garbage_flag_rate(2, 200);
  return {k1 >= 0.75 && k2 >= k1,
          fmt("garbage dealer flagged %.3f at k=1, %.3f at k=2 (%.1f s)", k1, k2,
              seconds_since(t0))};
}

Verdict noise() {
  const auto t0 = Clock::now();
  const ProtocolConfig base = small(2, 3, 1, 0, QuantumBackend::Exact);
  std::vector<double> rates;
  std::string got;
  for (double f : {1.0, 0.99, 0.95, 0.9}) {
    unsigned flagged = 0;
    for (unsigned trial = 0; trial < 1000; ++trial) {
      Rng rng = seeded({trial, 11U});
      Network net(base.n, base.p, f, base.cost_model);
      VqssRunOptions opts;
      opts.dealer = trial % base.n;
      opts.fidelity = f;
      const auto v = run_exact(base.vqss(), draw_challenges(base.k, base.p, base.n, rng), {}, net,
                               rng, opts);
      flagged += v.dealer_flagged || std::count(v.origin_flagged.begin(),
                                                v.origin_flagged.end(), true) > 0;
    }
    rates.push_back(flagged / 1000.0);
    got += fmt("F=%.2f:%.3f ", f, rates.back());
  }
  const bool monotone = std::is_sorted(rates.begin(), rates.end());
  return {monotone, got + fmt("(%.1f s)", seconds_since(t0))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"mod-7 multiplier exactness", multiplier},
      {"CX^b exactness", cx_gate},
      {"Bell-pair totals", bell_pairs},
      {"classical-bit totals", classical_bits},
      {"module depth/qubit goldens", module_goldens},
      {"KQ and gate-error threshold", volume},
      {"custom vs baseline improvement", improvement},
      {"agreement/validity/termination", protocol_properties},
      {"exact end-to-end coin", exact_end_to_end},
      {"garbage-dealer soundness", soundness},
      {"noise monotonicity", noise},
  };
  unsigned failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "qba/consensus.hpp"
#include "qba/errors.hpp"

using namespace qba;

namespace {

NodeState node5() {
  NodeState s;
  s.id = 0;
  s.n = 5;
  return s;
}

std::vector<GradecastResult> clean_vectors(const std::vector<std::vector<unsigned>>& value) {
  const std::size_t n = value.size();
  std::vector<GradecastResult> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    GcValue v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = value[k][j];
    out[j] = {v, 2};
  }
  return out;
}

std::vector<std::vector<unsigned>> honest_table(const RSCode& code, Rng& rng) {
  const unsigned n = code.length(), p = code.prime();
  std::uniform_int_distribution<unsigned> r(0, p - 1);
  const auto level1 = code.codeword(r(rng), std::vector<unsigned>{r(rng)});
  std::vector<std::vector<unsigned>> value(n);
  for (unsigned j = 0; j < n; ++j) {
    const auto g = code.codeword(level1[j], std::vector<unsigned>{r(rng)});
    value[j].assign(g.begin(), g.end());
  }
  return value;
}

QbaResult run(const ProtocolConfig& cfg, const std::string& strategy,
              const std::vector<unsigned>& inputs, std::uint64_t seed, bool transcript = false) {
  Rng rng(seed);
  auto adv = make_adversary(strategy, cfg.n, cfg.t);
  Network net(cfg.n, cfg.p, cfg.fidelity);
  return run_qba(cfg, inputs, *adv, net, rng, transcript);
}

}  // namespace

TEST_CASE("P_r thresholds") {
  NodeState s = node5();
  step_pr(s, 1, 1);
  CHECK(s.b == 0);
  step_pr(s, 4, 0);
  CHECK(s.b == 1);
  step_pr(s, 2, 1);
  CHECK(s.b == 1);
  step_pr(s, 3, 0);
  CHECK(s.b == 0);
  CHECK_FALSE(s.terminate_next);
}

TEST_CASE("P_0 and P_1 thresholds") {
  NodeState s = node5();
  step_p0(s, 0);
  CHECK(s.b == 0);
  CHECK(s.terminate_next);

  s = node5();
  step_p0(s, 3);
  CHECK(s.b == 0);
  CHECK_FALSE(s.terminate_next);
  step_p0(s, 4);
  CHECK(s.b == 1);
  CHECK_FALSE(s.terminate_next);

  s = node5();
  step_p1(s, 5);
  CHECK(s.b == 1);
  CHECK(s.terminate_next);
  s = node5();
  step_p1(s, 2);
  CHECK(s.b == 1);
  step_p1(s, 1);
  CHECK(s.b == 0);
  CHECK_FALSE(s.terminate_next);
}

TEST_CASE("tally keeps the most recent vote of every sender") {
  NodeState s = node5();
  s.b = 1;
  std::vector<Message> in{{1, 0, "vote", {1}, 1}, {2, 0, "vote", {1}, 1}, {3, 0, "vote", {0}, 1}};
  CHECK(tally(s, in) == 3);
  // Node 4 stays silent, node 1 switches; nodes 2 and 3 are replayed.
  std::vector<Message> later{{1, 0, "vote", {0}, 1}, {4, 0, "vote", {7}, 1}};
  CHECK(tally(s, later) == 2);
  CHECK(s.x <= 5);
}

TEST_CASE("decisions are set exactly once") {
  NodeState s = node5();
  s.decide(1);
  CHECK_THROWS_AS(s.decide(1), UsageError);
}

TEST_CASE("SUM table and coin") {
  NodeState s = node5();
  std::vector<std::vector<unsigned>> zeros(5, std::vector<unsigned>(5, 0));
  auto received = clean_vectors(zeros);
  CHECK(coin_from_sums(sum_row(s, received, 5)) == 0);

  std::vector<std::vector<unsigned>> ones(5, std::vector<unsigned>(5, 1));
  received = clean_vectors(ones);  // every SUM is 5 mod 5 = 0
  CHECK(coin_from_sums(sum_row(s, received, 5)) == 0);
  s.fp = {3};
  const auto sums = sum_row(s, received, 5);
  CHECK_FALSE(sums[3].has_value());  // BAD exactly for flagged holders
  for (unsigned j : {0U, 1U, 2U, 4U}) CHECK(sums[j] == 4U);
  CHECK(coin_from_sums(sums) == 1);
}

TEST_CASE("update_faulty evidence") {
  const RSCode code(5, 7, 1);
  Rng rng(3);
  const auto value = honest_table(code, rng);
  VerificationOutcome v;
  v.origin_flagged.assign(5, false);
  v.value = value;

  SUBCASE("noiseless honest run flags nobody") {
    NodeState s = node5();
    update_faulty(s, code, v, 2, clean_vectors(value));
    CHECK(s.fp.empty());
  }
  SUBCASE("flagged dealer lands in FP") {
    NodeState s = node5();
    v.dealer_flagged = true;
    update_faulty(s, code, v, 2, clean_vectors(value));
    CHECK(s.fp == std::set<unsigned>{2});
  }
  SUBCASE("grade-0 sender is flagged; a node never flags itself") {
    NodeState s = node5();
    auto rec = clean_vectors(value);
    rec[4] = {};
    rec[0] = {};
    update_faulty(s, code, v, 2, rec);
    CHECK(s.fp == std::set<unsigned>{4});
  }
  SUBCASE("a holder that misreports one value is caught by decoding") {
    NodeState s = node5();
    auto rec = clean_vectors(value);
    (*rec[3].value)[1] = ((*rec[3].value)[1] + 2) % 7;
    update_faulty(s, code, v, 2, rec);
    CHECK(s.fp == std::set<unsigned>{3});
  }
}

TEST_CASE("protocol config validation") {
  ProtocolConfig c;
  c.t = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.n = 7;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  CHECK_NOTHROW(c.validate());
  Config cfg = Config::parse("n = 4\np = 5\nk = 1\nbackend = exact\nsecond_check_range = printed\n");
  const auto pc = ProtocolConfig::from_config(cfg);
  CHECK(pc.n == 4);
  CHECK(pc.backend == QuantumBackend::Exact);
  CHECK(pc.range == SecondCheckRange::Printed);
  CHECK_THROWS_AS(ProtocolConfig::from_config(Config::parse("backend = magic\n")), ConfigError);
}

TEST_CASE("validity without faults") {
  ProtocolConfig cfg;
  cfg.t = 0;
  for (unsigned v : {0U, 1U}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = run(cfg, "honest", std::vector<unsigned>(5, v), seed);
      CHECK(r.agreement());
      CHECK(r.common_decision() == v);
    }
  }
}

TEST_CASE("agreement and validity against every strategy") {
  ProtocolConfig cfg;
  for (const auto& strategy : adversary_keys()) {
    CAPTURE(strategy);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng in_rng(seed * 7 + 1);
      std::vector<unsigned> in(5);
      for (auto& b : in) b = in_rng() % 2;
      const auto r = run(cfg, strategy, in, seed);
      CHECK(r.agreement());
      CHECK(r.rounds <= cfg.max_rounds);
      const auto u = run(cfg, strategy, std::vector<unsigned>(5, seed % 2), seed);
      CHECK(u.common_decision() == static_cast<unsigned>(seed % 2));
    }
  }
}

TEST_CASE("adversaries respect the corruption bound") {
  for (const auto& strategy : adversary_keys()) {
    auto adv = make_adversary(strategy, 5, 1);
    Rng rng(1);
    for (unsigned it = 1; it <= 10; ++it) {
      AdversaryView view{it, (it - 1) % 5, {0, 1, 0, 1, it % 2}};
      adv->on_iteration(view, rng);
      CHECK(adv->num_corrupted() <= 1);
    }
  }
  CHECK_THROWS_AS(make_adversary("telepath", 5, 1), ConfigError);
}

TEST_CASE("identical seeds give identical transcripts") {
  ProtocolConfig cfg;
  const std::vector<unsigned> in{1, 0, 1, 0, 1};
  for (const auto& strategy : adversary_keys()) {
    std::ostringstream a, b;
    write_transcript(a, run(cfg, strategy, in, 42, true).transcript);
    write_transcript(b, run(cfg, strategy, in, 42, true).transcript);
    CHECK(a.str() == b.str());
    CHECK_FALSE(a.str().empty());
  }
}

TEST_CASE("fault lists only grow over a run") {
  ProtocolConfig cfg;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = run(cfg, "random", {0, 1, 0, 1, 1}, seed, true);
    std::map<int, std::size_t> size;
    for (const auto& rec : r.transcript) {
      if (rec.kind != "fp") continue;
      const std::size_t now = std::count(rec.payload.begin(), rec.payload.end(), ',') + 1;
      CHECK(now >= size[rec.to]);
      size[rec.to] = now;
    }
  }
}

TEST_CASE("honest coin is common and matches the exact SUM-distribution oracle") {
  ProtocolConfig cfg;
  auto adv = make_adversary("honest", 5, 1);
  Rng rng(2024);
  const unsigned trials = 10000;
  unsigned zeros = 0;
  for (unsigned i = 0; i < trials; ++i) {
    Network net(5, 7, 1.0);
    std::vector<NodeState> nodes(5);
    for (unsigned j = 0; j < 5; ++j) {
      nodes[j].id = j;
      nodes[j].n = 5;
    }
    const auto q = qocc(cfg, i % 5, nodes, *adv, net, rng);
    for (unsigned j = 1; j < 5; ++j) CHECK(q.r[j] == q.r[0]);
    for (const auto& nd : nodes) CHECK(nd.fp.empty());
    zeros += q.r[0] == 0;
  }
  const double phat = double(zeros) / trials;
  const double p = oracle::coin_zero_probability(5, 7, 1);
  const double sigma = std::sqrt(p * (1 - p) / trials);
  CHECK(std::abs(phat - p) <= 3 * sigma);
  // The independent-residue closed form is within the same band here.
  const double closed = 1 - std::pow(1 - oracle::uniform_fold_zero(5, 7, 5), 5);
  CHECK(std::abs(phat - closed) <= 3 * sigma);
}

TEST_CASE("non-termination is reported loudly") {
  ProtocolConfig cfg;
  cfg.max_rounds = 1;
  bool threw = false;
  for (std::uint64_t seed = 0; seed < 200 && !threw; ++seed) {
    try {
      run(cfg, "equivocator", {0, 1, 0, 1, 0}, seed);
    } catch (const NonTerminationError&) {
      threw = true;
    }
  }
  CHECK(threw);
}

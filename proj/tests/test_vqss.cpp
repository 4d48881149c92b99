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

#include <sstream>

#include "oracles.hpp"
#include "qba/errors.hpp"
#include "qba/vqss.hpp"

using namespace qba;

namespace {

bool any_flag(const VerificationOutcome& v) {
  bool f = v.dealer_flagged;
  for (bool o : v.origin_flagged) f = f || o;
  return f;
}

// Every origin's readings lie on a degree-t polynomial, and those
// polynomials' constant terms again lie on one.
void check_honest_values(const VqssParams& params, const VerificationOutcome& v) {
  const unsigned n = params.n, p = params.p;
  std::vector<unsigned> secrets;
  for (unsigned j = 0; j < n; ++j) {
    bool found = false;
    for (unsigned s = 0; s < p && !found; ++s) {
      for (const auto& w : oracle::shares_of(s, n, p, params.t)) {
        if (w == v.value[j]) {
          secrets.push_back(s);
          found = true;
          break;
        }
      }
    }
    CHECK(found);
  }
  if (secrets.size() != n) return;
  bool level1 = false;
  for (unsigned a = 0; a < n && !level1; ++a) {
    for (const auto& w : oracle::shares_of(a, n, p, params.t)) level1 = level1 || w == secrets;
  }
  CHECK(level1);
}

}  // namespace

TEST_CASE("challenges are 1 + sum of contributions mod (P - 1)") {
  const auto c = challenges_from_contributions(2, 7, {{1, 2, 3, 4}, {5, 5, 5, 5}});
  CHECK(c.b == std::vector<unsigned>{1 + 6 % 6, 1 + 7 % 6});
  CHECK(c.b_prime == std::vector<unsigned>{1 + 8 % 6, 1 + 9 % 6});
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto d = draw_challenges(2, 7, 5, rng);
    for (unsigned b : d.b) CHECK((b >= 1 && b <= 6));
  }
  CHECK_THROWS_AS(challenges_from_contributions(2, 7, {{1}}), UsageError);
}

TEST_CASE("distribution plans move every non-local component once") {
  VqssParams params;  // (5, 7, 2)
  const auto r1 = distribution_plan_round1(params, 0);
  const auto r2 = distribution_plan_round2(params);
  unsigned moved1 = 0, moved2 = 0;
  for (const auto& t : r1) moved1 += t.from != t.to;
  for (const auto& t : r2) moved2 += t.from != t.to;
  CHECK(moved1 == 9 * 4);
  CHECK(moved2 == 5 * 9 * 4);
}

TEST_CASE("level-2 checks") {
  const RSCode code(5, 7, 1);
  const auto words = code.codewords(3);
  CHECK(level2_check(code, words[4], false));
  auto broken = words[4];
  broken[2] = (broken[2] + 1) % 7;
  CHECK_FALSE(level2_check(code, broken, false));
  const std::vector<std::uint8_t> dual{1, 3, 0, 0, 0};  // 1*1 + 3*2 = 7
  CHECK(level2_check(code, dual, true));
  CHECK_FALSE(level2_check(code, {1, 0, 0, 0, 0}, true));
}

TEST_CASE("honest exact runs flag nobody and produce consistent shares") {
  for (auto [n, p, k, t, trials] :
       {std::tuple{2U, 3U, 1U, 0U, 30}, std::tuple{4U, 5U, 1U, 1U, 3}}) {
    VqssParams params;
    params.n = n;
    params.p = p;
    params.k = k;
    params.t = t;
    for (int trial = 0; trial < trials; ++trial) {
      Rng rng(100 + trial);
      Network net(n, p, 1.0);
      const auto v = run_exact(params, draw_challenges(k, p, n, rng), {}, net, rng,
                               {static_cast<unsigned>(trial) % n, 1.0, nullptr});
      CHECK_FALSE(any_flag(v));
      check_honest_values(params, v);
      CHECK(v.peak_terms <= params.term_budget);
    }
  }
}

TEST_CASE("garbage dealer is usually caught") {
  VqssParams params;
  params.n = 4;
  params.p = 5;
  params.k = 1;
  params.t = 1;
  VqssFaults faults;
  faults.dealer = DealerKind::Garbage;
  unsigned flagged = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Rng rng(trial);
    Network net(4, 5, 1.0);
    flagged += any_flag(run_exact(params, draw_challenges(1, 5, 4, rng), faults, net, rng));
  }
  CHECK(flagged >= 20);
}

TEST_CASE("trace records one tab-separated line per node operation") {
  VqssParams params;
  params.n = 2;
  params.p = 3;
  params.k = 1;
  params.t = 0;
  Rng rng(1);
  Network net(2, 3, 1.0);
  std::ostringstream trace;
  VqssRunOptions opts;
  opts.trace = &trace;
  run_exact(params, draw_challenges(1, 3, 2, rng), {}, net, rng, opts);
  std::istringstream lines(trace.str());
  std::string line;
  unsigned count = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), '\t') == 4);
    ++count;
  }
  CHECK(count > 0);
}

TEST_CASE("tiny term budget fails loudly") {
  VqssParams params;
  params.n = 4;
  params.p = 5;
  params.k = 1;
  params.t = 1;
  params.term_budget = 50;
  Rng rng(1);
  Network net(4, 5, 1.0);
  CHECK_THROWS_AS(run_exact(params, draw_challenges(1, 5, 4, rng), {}, net, rng), BudgetError);
}

TEST_CASE("stochastic backend: honest values consistent, garbage caught at the set rate") {
  VqssParams params;  // (5, 7, 2)
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Network net(5, 7, 1.0);
    const auto v = run_stochastic(params, {}, net, rng, 0, default_catch_probability(2));
    CHECK_FALSE(any_flag(v));
    check_honest_values(params, v);
    CHECK(net.bell_total() == 648);
  }
  VqssFaults faults;
  faults.dealer = DealerKind::Garbage;
  unsigned caught = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Network net(5, 7, 1.0);
    caught += run_stochastic(params, faults, net, rng, 1, 0.75).dealer_flagged;
  }
  CHECK(caught / 2000.0 == doctest::Approx(0.75).epsilon(0.05));
  CHECK(default_catch_probability(1) == 0.5);
}

TEST_CASE("parameter validation") {
  VqssParams params;
  params.p = 6;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.p = 5;  // N = 5 is not below P
  CHECK_THROWS_AS(params.validate(), ConfigError);
}

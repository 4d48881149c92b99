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
#include <functional>
#include <set>

#include "qba/vqss_schedule.hpp"

using namespace qba;

namespace {

std::set<Reg> touched(const VerifierOp& op) {
  std::set<Reg> r{op.target};
  if (op.kind == OpKind::Cx) r.insert(op.control);
  return r;
}

// Independent precedence relation: j before i iff j is earlier in program
// order and they share a register.
bool must_precede(const std::vector<VerifierOp>& ops, std::size_t j, std::size_t i) {
  if (j >= i) return false;
  const auto a = touched(ops[j]), b = touched(ops[i]);
  return std::any_of(a.begin(), a.end(), [&](const Reg& r) { return b.count(r) > 0; });
}

void check_valid(const Schedule& s, unsigned max_cx, unsigned max_qft) {
  std::vector<std::size_t> stage_of(s.ops.size(), s.ops.size());
  for (std::size_t st = 0; st < s.stages.size(); ++st) {
    unsigned cx = 0, qft = 0;
    for (auto i : s.stages[st]) {
      stage_of[i] = st;
      (s.ops[i].kind == OpKind::Cx ? cx : qft)++;
    }
    CHECK(cx <= max_cx);
    CHECK(qft <= max_qft);
  }
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    REQUIRE(stage_of[i] < s.ops.size());  // every op scheduled exactly once
    for (std::size_t j = 0; j < i; ++j) {
      if (must_precede(s.ops, j, i)) CHECK(stage_of[j] < stage_of[i]);
    }
  }
}

// Exhaustive: fewest stages with at most max_cx CX and max_qft transforms per
// stage, and the fewest CX-holding stages among those.
std::pair<unsigned, unsigned> brute_force_best(const std::vector<VerifierOp>& ops) {
  const std::size_t n = ops.size();
  std::pair<unsigned, unsigned> best{99, 99};
  std::function<void(std::uint64_t, unsigned, unsigned)> go = [&](std::uint64_t done,
                                                                    unsigned stages,
                                                                    unsigned cx_stages) {
    if (std::make_pair(stages, cx_stages) >= best) return;
    if (done == (std::uint64_t{1} << n) - 1) {
      best = {stages, cx_stages};
      return;
    }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (done >> i & 1) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i; ++j) ok = ok && (!must_precede(ops, j, i) || (done >> j & 1));
      if (ok) ready.push_back(i);
    }
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << ready.size()); ++m) {
      unsigned cx = 0, qft = 0;
      std::uint64_t add = 0;
      for (std::size_t b = 0; b < ready.size(); ++b) {
        if (!(m >> b & 1)) continue;
        (ops[ready[b]].kind == OpKind::Cx ? cx : qft)++;
        add |= std::uint64_t{1} << ready[b];
      }
      if (cx <= 2 && qft <= 1) go(done | add, stages + 1, cx_stages + (cx > 0));
    }
  };
  go(0, 0, 0);
  return best;
}

}  // namespace

TEST_CASE("verifier program shape") {
  const auto ops = verifier_program(2);
  auto count = [&](OpKind k) { return std::count_if(ops.begin(), ops.end(), [&](auto& o) { return o.kind == k; }); };
  CHECK(count(OpKind::Cx) == 8);
  CHECK(count(OpKind::Qft) == 3);
  CHECK(count(OpKind::InvQft) == 1);
  const auto printed = verifier_program(2, SecondCheckRange::Printed);
  CHECK(std::count_if(printed.begin(), printed.end(), [](auto& o) { return o.kind == OpKind::Cx; }) == 7);
  CHECK(ops.back().kind == OpKind::InvQft);
  CHECK(ops.back().target == Reg{0, 0});
}

TEST_CASE("measured registers: k(k+1) computational, k Fourier") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (auto range : {SecondCheckRange::Normalized, SecondCheckRange::Printed}) {
      const auto m = measured_registers(k, range);
      const auto fourier = std::count_if(m.begin(), m.end(), [](auto& r) { return r.fourier_domain; });
      CHECK(m.size() - fourier == k * (k + 1));
      CHECK(fourier == k);
      for (const auto& r : m) CHECK_FALSE(r.reg == Reg{0, 0});
    }
  }
}

TEST_CASE("ASAP schedule has six stages at k = 2 and respects dependencies") {
  const Schedule s = asap_schedule(verifier_program(2));
  CHECK(s.num_stages() == 6);
  check_valid(s, 99, 99);
}

TEST_CASE("pipelined schedule is minimal under the caps and adds one stage") {
  for (unsigned k = 1; k <= 2; ++k) {
    const auto ops = verifier_program(k);
    const Schedule asap = asap_schedule(ops);
    const Schedule piped = pipelined_schedule(ops);
    check_valid(piped, 2, 1);
    const auto best = brute_force_best(ops);
    CHECK(piped.num_stages() == best.first);
    unsigned cx_stages = 0;
    for (const auto& st : piped.stages) {
      cx_stages += std::any_of(st.begin(), st.end(), [&](auto i) { return ops[i].kind == OpKind::Cx; });
    }
    CHECK(cx_stages == best.second);
    for (auto kind : {OpKind::Cx, OpKind::Qft, OpKind::InvQft}) CHECK(piped.count(kind) == asap.count(kind));
  }
  const Schedule piped = pipelined_schedule(verifier_program(2));
  CHECK(piped.num_stages() == 7);
  CHECK(piped.peak_cx() == 2);
  CHECK(piped.peak_qft() == 1);
  CHECK(asap_schedule(verifier_program(2)).num_stages() + 1 == piped.num_stages());
}

TEST_CASE("program-order dependencies agree with register sharing") {
  const auto ops = verifier_program(2);
  const auto deps = dependencies(ops);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (auto j : deps[i]) CHECK(must_precede(ops, j, i));
  }
}

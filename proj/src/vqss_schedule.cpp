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

#include "qba/vqss_schedule.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <sstream>

#include "qba/errors.hpp"

namespace qba {
namespace {

std::string reg_str(const Reg& r) {
  return "(" + std::to_string(r.row) + "," + std::to_string(r.col) + ")";
}

bool touches(const VerifierOp& op, const Reg& r) {
  return op.target == r || (op.kind == OpKind::Cx && op.control == r);
}

bool shares_register(const VerifierOp& a, const VerifierOp& b) {
  return touches(a, b.target) || (b.kind == OpKind::Cx && touches(a, b.control));
}

}  // namespace

std::string VerifierOp::label() const {
  switch (kind) {
    case OpKind::Cx:
      return std::string(second_check ? "CXb'" : "CXb") + std::to_string(challenge) + " " +
             reg_str(control) + "->" + reg_str(target);
    case OpKind::Qft: return "QFT " + reg_str(target);
    case OpKind::InvQft: return "IQFT " + reg_str(target);
  }
  return "?";
}

std::vector<VerifierOp> verifier_program(unsigned k, SecondCheckRange range) {
  std::vector<VerifierOp> ops;
  for (unsigned n = 0; n <= k; ++n) {
    for (unsigned m = 0; m < k; ++m) {
      ops.push_back({OpKind::Cx, {n, 0}, {n, m + 1}, m + 1, false});
    }
  }
  for (unsigned n = 0; n <= k; ++n) ops.push_back({OpKind::Qft, {}, {n, 0}, 0, false});
  const unsigned second = range == SecondCheckRange::Normalized ? k : (k >= 1 ? k - 1 : 0);
  for (unsigned n = 0; n < second; ++n) {
    ops.push_back({OpKind::Cx, {0, 0}, {n + 1, 0}, n + 1, true});
  }
  ops.push_back({OpKind::InvQft, {}, {0, 0}, 0, false});
  return ops;
}

std::vector<MeasuredReg> measured_registers(unsigned k, SecondCheckRange range) {
  std::vector<MeasuredReg> out;
  for (unsigned n = 0; n <= k; ++n) {
    for (unsigned m = 1; m <= k; ++m) out.push_back({{n, m}, false});
  }
  const unsigned second = range == SecondCheckRange::Normalized ? k : (k >= 1 ? k - 1 : 0);
  for (unsigned n = 1; n <= second; ++n) out.push_back({{n, 0}, true});
  // Rows left uncoupled by the printed range are still measured (in the
  // Fourier basis, where they were left) so every non-kept register is read.
  for (unsigned n = second + 1; n <= k; ++n) out.push_back({{n, 0}, true});
  return out;
}

std::vector<std::vector<std::size_t>> dependencies(const std::vector<VerifierOp>& ops) {
  std::vector<std::vector<std::size_t>> deps(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (shares_register(ops[i], ops[j])) deps[i].push_back(j);
    }
  }
  return deps;
}

unsigned Schedule::peak_cx() const {
  unsigned best = 0;
  for (const auto& st : stages) {
    unsigned c = 0;
    for (auto i : st) c += ops[i].kind == OpKind::Cx;
    best = std::max(best, c);
  }
  return best;
}

unsigned Schedule::peak_qft() const {
  unsigned best = 0;
  for (const auto& st : stages) {
    unsigned c = 0;
    for (auto i : st) c += ops[i].kind != OpKind::Cx;
    best = std::max(best, c);
  }
  return best;
}

unsigned Schedule::count(OpKind kind) const {
  return static_cast<unsigned>(
      std::count_if(ops.begin(), ops.end(), [&](const VerifierOp& o) { return o.kind == kind; }));
}

Schedule asap_schedule(const std::vector<VerifierOp>& ops) {
  const auto deps = dependencies(ops);
  std::vector<std::size_t> level(ops.size(), 0);
  Schedule s;
  s.ops = ops;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (auto d : deps[i]) level[i] = std::max(level[i], level[d] + 1);
    if (s.stages.size() <= level[i]) s.stages.resize(level[i] + 1);
    s.stages[level[i]].push_back(i);
  }
  return s;
}

Schedule pipelined_schedule(const std::vector<VerifierOp>& ops, StageCaps caps) {
  if (ops.size() > 62) throw UsageError("verifier program too large for exhaustive packing");
  if (caps.max_cx == 0 || caps.max_qft == 0) throw UsageError("stage caps must be positive");
  const auto deps = dependencies(ops);
  std::vector<std::uint64_t> need(ops.size(), 0);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (auto d : deps[i]) need[i] |= std::uint64_t{1} << d;
  }
  const std::uint64_t full = ops.size() == 64 ? ~0ULL : (std::uint64_t{1} << ops.size()) - 1;

  // Shortest path over completed-op sets under the cost (stages, stages that
  // hold a CX). The second key keeps adders out of stages a short transform
  // could fill alone, which is what the stage depths reward.
  using Cost = std::pair<unsigned, unsigned>;
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> parent;  // set -> (prev, stage)
  std::map<std::uint64_t, Cost> best;
  using Item = std::pair<Cost, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  parent[0] = {0, 0};
  best[0] = {0, 0};
  frontier.push({{0, 0}, 0});
  while (!frontier.empty()) {
    const auto [cost, done] = frontier.top();
    frontier.pop();
    if (cost != best[done]) continue;
    if (done == full) break;
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (!(done >> i & 1) && (need[i] & done) == need[i]) ready.push_back(i);
    }
    // Enumerate admissible subsets, larger first, then in program order.
    std::vector<std::pair<std::uint64_t, bool>> subsets;
    const std::size_t r = ready.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
      unsigned cx = 0, qft = 0;
      std::uint64_t stage = 0;
      for (std::size_t b = 0; b < r; ++b) {
        if (!(mask >> b & 1)) continue;
        (ops[ready[b]].kind == OpKind::Cx ? cx : qft) += 1;
        stage |= std::uint64_t{1} << ready[b];
      }
      if (cx <= caps.max_cx && qft <= caps.max_qft) subsets.push_back({stage, cx > 0});
    }
    std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
      const int pa = __builtin_popcountll(a.first), pb = __builtin_popcountll(b.first);
      if (pa != pb) return pa > pb;
      return __builtin_ctzll(a.first) < __builtin_ctzll(b.first);
    });
    for (const auto& [stage, has_cx] : subsets) {
      const std::uint64_t next = done | stage;
      const Cost c{cost.first + 1, cost.second + (has_cx ? 1U : 0U)};
      const auto it = best.find(next);
      if (it != best.end() && !(c < it->second)) continue;
      best[next] = c;
      parent[next] = {done, stage};
      frontier.push({c, next});
    }
  }
  Schedule s;
  s.ops = ops;
  for (std::uint64_t cur = full; cur != 0; cur = parent[cur].first) {
    std::vector<std::size_t> st;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (parent[cur].second >> i & 1) st.push_back(i);
    }
    s.stages.push_back(std::move(st));
  }
  std::reverse(s.stages.begin(), s.stages.end());
  return s;
}

std::string describe(const Schedule& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    out << "stage " << i + 1 << ":";
    for (auto op : s.stages[i]) out << "  " << s.ops[op].label();
    out << "\n";
  }
  return out.str();
}

}  // namespace qba

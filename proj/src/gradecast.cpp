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

#include "qba/gradecast.hpp"

#include <map>

#include "qba/errors.hpp"

namespace qba {
namespace {

std::optional<GcValue> outgoing(const GradecastFaults& f, unsigned round, unsigned from,
                                unsigned to, const std::optional<GcValue>& honest) {
  if (f.is_faulty(from) && f.tamper) return f.tamper(round, from, to, honest);
  return honest;
}

// Value with the most votes; ties go to the smallest value.
std::pair<std::optional<GcValue>, unsigned> plurality(const std::map<GcValue, unsigned>& votes) {
  std::optional<GcValue> best;
  unsigned count = 0;
  for (const auto& [v, c] : votes) {
    if (c > count) {
      best = v;
      count = c;
    }
  }
  return {best, count};
}

}  // namespace

std::vector<GradecastResult> gradecast(Network& net, unsigned sender, const GcValue& value,
                                       unsigned t, const GradecastFaults& faults, const RowKey& row,
                                       unsigned bits_per_element) {
  const unsigned n = net.size();
  if (sender >= n) throw UsageError("gradecast sender out of range");
  auto exchange = [&](unsigned round, const std::vector<std::optional<GcValue>>& honest_send,
                      bool broadcast_all) {
    std::vector<Message> msgs;
    std::vector<std::vector<std::optional<GcValue>>> got(n, std::vector<std::optional<GcValue>>(n));
    for (unsigned from = 0; from < n; ++from) {
      if (!broadcast_all && from != sender) continue;
      for (unsigned to = 0; to < n; ++to) {
        auto v = outgoing(faults, round, from, to, honest_send[from]);
        if (!v) continue;
        if (from == to) {
          got[to][from] = v;  // local, free
          continue;
        }
        msgs.push_back({from, to, "gc" + std::to_string(round), *v,
                        static_cast<unsigned>(v->size() * bits_per_element)});
      }
    }
    auto inbox = net.round_exchange(std::move(msgs), row);
    for (unsigned to = 0; to < n; ++to) {
      for (const auto& m : inbox[to]) got[to][m.from] = GcValue(m.payload);
    }
    return got;
  };

  // Round 1: the sender distributes its value.
  std::vector<std::optional<GcValue>> send(n);
  send[sender] = value;
  auto r1 = exchange(1, send, false);
  // Round 2: everyone echoes what it received from the sender.
  for (unsigned i = 0; i < n; ++i) send[i] = r1[i][sender];
  auto r2 = exchange(2, send, true);
  // Round 3: support a value echoed by at least N - t nodes.
  for (unsigned i = 0; i < n; ++i) {
    std::map<GcValue, unsigned> echoes;
    for (unsigned j = 0; j < n; ++j) {
      if (r2[i][j]) ++echoes[*r2[i][j]];
    }
    auto [v, c] = plurality(echoes);
    send[i] = c >= n - t ? v : std::nullopt;
  }
  auto r3 = exchange(3, send, true);

  std::vector<GradecastResult> out(n);
  for (unsigned i = 0; i < n; ++i) {
    std::map<GcValue, unsigned> support;
    for (unsigned j = 0; j < n; ++j) {
      if (r3[i][j]) ++support[*r3[i][j]];
    }
    auto [v, c] = plurality(support);
    if (c >= n - t) {
      out[i] = {v, 2};
    } else if (c >= t + 1) {
      out[i] = {v, 1};
    } else {
      out[i] = {std::nullopt, 0};
    }
  }
  return out;
}

std::uint64_t honest_gradecast_wire_bits(unsigned n, unsigned payload_bits) {
  const std::uint64_t m = n - 1;
  return static_cast<std::uint64_t>(payload_bits) * m * (2ULL * n + 1);
}

}  // namespace qba

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

// Three-round graded broadcast: send, echo, support. A receiver outputs the
// most-supported value with grade 2 at >= N - t supports, grade 1 at >= t + 1,
// otherwise nothing with grade 0.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qba/netsim.hpp"

namespace qba {

using GcValue = std::vector<std::int64_t>;

struct GradecastResult {
  std::optional<GcValue> value;
  unsigned grade = 0;
};

// What faulty node `from` sends to `to` in round 1..3 given what an honest
// node would send (nullopt = stay silent). Only consulted for faulty nodes.
using GradecastTamper = std::function<std::optional<GcValue>(
    unsigned round, unsigned from, unsigned to, const std::optional<GcValue>& honest)>;

struct GradecastFaults {
  std::vector<bool> faulty;  // empty = nobody faulty
  GradecastTamper tamper;    // may be empty: faulty nodes then behave honestly
  bool is_faulty(unsigned i) const { return i < faulty.size() && faulty[i]; }
};

// Runs one gradecast of `value` from `sender`; every message goes through
// net.round_exchange under `row`, each payload element costing
// `bits_per_element` bits. Returns one result per node (faulty nodes'
// entries are whatever the honest rule would output on their inbox).
std::vector<GradecastResult> gradecast(Network& net, unsigned sender, const GcValue& value,
                                       unsigned t, const GradecastFaults& faults, const RowKey& row,
                                       unsigned bits_per_element);

// Wire bits of an all-honest gradecast: B (N - 1) (2N + 1).
std::uint64_t honest_gradecast_wire_bits(unsigned n, unsigned payload_bits);

}  // namespace qba

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

// Analytic resource estimator: depth K, qubits per node Q, KQ, the gate-error
// threshold, and Bell-pair / classical-bit totals per traffic row.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qba/circuit.hpp"
#include "qba/consensus.hpp"
#include "qba/netsim.hpp"

namespace qba {

enum class Design { VBE96, CDKM04, VI05, Custom, CustomPipelined, BaselineGeneric };

std::string to_string(Design d);
Design parse_design(const std::string& s);
const std::vector<Design>& all_designs();

struct LegacyDesign {
  std::string name;
  unsigned cx_depth = 0;
  unsigned cx_workspace = 0;  // ancillae beyond the two 3-qubit operands
};

struct CostTable {
  GateCostTable gates;
  unsigned encoder_depth = 59;
  std::vector<LegacyDesign> legacy;

  static CostTable load(const std::string& path);
  static CostTable shipped();  // data/cost_table.cfg
  const LegacyDesign& legacy_design(const std::string& name) const;
};

// One row of the per-module table: depth and qubits per node while that
// module is active.
struct ModuleRow {
  std::string module;
  unsigned depth = 0;
  unsigned qubits = 0;
  unsigned invocations = 0;  // per verifier
};

struct TrafficRow {
  std::string algorithm, phase, comm_type, source, destination;
  std::uint64_t bell_pairs = 0;
  std::uint64_t classical_bits = 0;
};

struct TrafficTotals {
  std::uint64_t bell_total = 0;
  std::uint64_t classical_total = 0;
  std::vector<TrafficRow> rows;
};

struct ResourceReport {
  std::string design;
  unsigned K = 0;               // encoder + verification stages
  unsigned K_verification = 0;  // verification stages only
  unsigned Q = 0;               // peak simultaneous qubits per node
  unsigned Q_rows_sum = 0;      // sum over the module rows
  unsigned stages = 0;
  double KQ = 0;
  double G_total = 0;
  double epsilon_g = 0;  // 1 / (N * KQ)
  std::uint64_t bell_total = 0;
  std::uint64_t classical_total = 0;
  std::vector<ModuleRow> modules;
  std::vector<TrafficRow> rows;
};

// Closed-form traffic for one QOCC (sharing, verification, coin readout).
TrafficTotals bell_and_classical(const ProtocolConfig& cfg, const GradecastCostModel& model);
// The same rows read back from a simulated ledger.
TrafficTotals traffic_from_ledger(const Network& net);

ResourceReport estimate(const ProtocolConfig& cfg, Design design, const CostTable& table,
                        const GradecastCostModel& model);

struct DesignComparison {
  std::vector<ResourceReport> reports;
  double depth_ratio = 0;  // K(CustomPipelined) / K(BaselineGeneric)
  double qubit_ratio = 0;  // Q(Custom) / Q(BaselineGeneric)
  // Concurrently active modules, unpipelined vs pipelined.
  unsigned census_cx_asap = 0, census_qft_asap = 0;
  unsigned census_cx_pipelined = 0, census_qft_pipelined = 0;
  const ResourceReport& at(Design d) const;
};

DesignComparison compare_designs(const ProtocolConfig& cfg, const CostTable& table,
                                 const GradecastCostModel& model);

std::string report_json(const ResourceReport& r, int indent = 2);
std::string comparison_json(const DesignComparison& c, int indent = 2);
void write_comparison_csv(std::ostream& out, const DesignComparison& c);

}  // namespace qba

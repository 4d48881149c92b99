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

#include "qba/resources.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "qba/arith_circuits.hpp"
#include "qba/config.hpp"
#include "qba/errors.hpp"
#include "qba/vqss_schedule.hpp"

namespace qba {

namespace {

// Both operands of the mod-7 modules span 3 qubits each.
constexpr unsigned kOperandQubits = 6;

const std::vector<std::pair<Design, std::string>>& design_names() {
  static const std::vector<std::pair<Design, std::string>> names{
      {Design::VBE96, "VBE96"},
      {Design::CDKM04, "CDKM04"},
      {Design::VI05, "VI05"},
      {Design::Custom, "Custom"},
      {Design::CustomPipelined, "CustomPipelined"},
      {Design::BaselineGeneric, "baseline-generic"}};
  return names;
}

TrafficRow traffic_row(const RowKey& key, std::uint64_t bell, std::uint64_t bits) {
  return {key.algorithm, key.phase, key.comm_type, key.source, key.destination, bell, bits};
}

std::vector<RowKey> table_rows() {
  return {rows::dealer_sharing(), rows::player_sharing(), rows::verify_first_check(),
          rows::verify_second_check(), rows::coin_measurement()};
}

}  // namespace

std::string to_string(Design d) {
  for (const auto& [design, name] : design_names()) {
    if (design == d) return name;
  }
  throw UsageError("unnamed design");
}

Design parse_design(const std::string& s) {
  for (const auto& [design, name] : design_names()) {
    if (name == s) return design;
  }
  throw ConfigError("unknown design '" + s + "'");
}

const std::vector<Design>& all_designs() {
  static const std::vector<Design> all{Design::VBE96,  Design::CDKM04,          Design::VI05,
                                       Design::Custom, Design::CustomPipelined, Design::BaselineGeneric};
  return all;
}

CostTable CostTable::load(const std::string& path) {
  const Config cfg = Config::load(path);
  CostTable t;
  GateCostTable& g = t.gates;
  g.not_cost = cfg.get_double("not_cost", g.not_cost);
  g.cnot_cost = cfg.get_double("cnot_cost", g.cnot_cost);
  g.swap_cost = cfg.get_double("swap_cost", g.swap_cost);
  g.cphase_cost = cfg.get_double("cphase_cost", g.cphase_cost);
  g.rotation_cost = cfg.get_double("rotation_cost", g.rotation_cost);
  g.toffoli_cost = cfg.get_double("toffoli_cost", g.toffoli_cost);
  auto layers = [&](const std::string& key, std::int64_t fallback) {
    const auto v = cfg.get_int(key, fallback);
    if (v < 1) throw ConfigError(key + " must be at least 1 in " + path);
    return static_cast<unsigned>(v);
  };
  g.toffoli_layers = layers("toffoli_layers", g.toffoli_layers);
  g.swap_layers = layers("swap_layers", g.swap_layers);
  t.encoder_depth = layers("encoder_depth", t.encoder_depth);

  std::string list = cfg.get_string("legacy_designs", "");
  std::size_t pos = 0;
  while (!list.empty() && pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string name = list.substr(pos, comma - pos);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (!name.empty()) {
      LegacyDesign d;
      d.name = name;
      d.cx_depth = layers("legacy." + name + ".cx_depth", 0);
      d.cx_workspace = static_cast<unsigned>(cfg.get_int("legacy." + name + ".cx_workspace", 0));
      t.legacy.push_back(d);
    }
    pos = comma + 1;
  }
  return t;
}

CostTable CostTable::shipped() { return load(std::string(QBA_DATA_DIR) + "/cost_table.cfg"); }

const LegacyDesign& CostTable::legacy_design(const std::string& name) const {
  for (const auto& d : legacy) {
    if (d.name == name) return d;
  }
  throw ConfigError("cost table has no entry for design " + name);
}

TrafficTotals bell_and_classical(const ProtocolConfig& cfg, const GradecastCostModel& model) {
  const std::uint64_t n = cfg.n;
  const std::uint64_t b = qubits_per_qupit(cfg.p);
  const std::uint64_t regs = static_cast<std::uint64_t>(cfg.k + 1) * (cfg.k + 1);
  // The dealer keeps its own component of each register; every player then
  // re-shares its component of every register the same way.
  const std::uint64_t dealer = regs * (n - 1) * b;
  const std::uint64_t players = n * regs * (n - 1) * b;

  std::uint64_t comp = 0, fourier = 0;
  for (const auto& m : measured_registers(cfg.k, cfg.range)) (m.fourier_domain ? fourier : comp)++;
  // Each origin's measured register is read out by each holder: N^2 gradecasts
  // per register, and N^2 for the coin values.
  const double per = model.bits(static_cast<unsigned>(b), cfg.n);
  auto bits = [&](std::uint64_t gradecasts) {
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(gradecasts) * per));
  };
  const auto keys = table_rows();
  TrafficTotals out;
  out.rows = {traffic_row(keys[0], dealer, 0), traffic_row(keys[1], players, 0),
              traffic_row(keys[2], 0, bits(n * n * comp)),
              traffic_row(keys[3], 0, bits(n * n * fourier)), traffic_row(keys[4], 0, bits(n * n))};
  for (const auto& r : out.rows) {
    out.bell_total += r.bell_pairs;
    out.classical_total += r.classical_bits;
  }
  return out;
}

TrafficTotals traffic_from_ledger(const Network& net) {
  TrafficTotals out;
  for (const auto& key : table_rows()) {
    const LedgerRow* r = net.find_row(key.id);
    if (!r) throw UsageError("ledger lacks row " + key.id);
    out.rows.push_back(traffic_row(key, r->bell_pairs, r->reported_bits()));
    out.bell_total += r->bell_pairs;
    out.classical_total += r->reported_bits();
  }
  return out;
}

namespace {

struct CxModule {
  unsigned depth = 0;
  unsigned workspace = 0;
};

CxModule measured_cx(bool baseline, const GateCostTable& gates) {
  CxModule m;
  for (unsigned b = 1; b < arith::kModulus; ++b) {
    const CostMetrics c =
        metrics(baseline ? arith::build_baseline_cx_b(b) : arith::build_cx_b(b), gates);
    m.depth = std::max(m.depth, c.depth);
    m.workspace = std::max(m.workspace, c.width - kOperandQubits);
  }
  return m;
}

}  // namespace

ResourceReport estimate(const ProtocolConfig& cfg, Design design, const CostTable& table,
                        const GradecastCostModel& model) {
  cfg.validate();
  if (cfg.p != arith::kModulus) {
    throw DomainError("circuit-level costs exist for P = 7 only, got P = " +
                      std::to_string(cfg.p));
  }
  const bool pipelined = design == Design::CustomPipelined;
  const auto ops = verifier_program(cfg.k, cfg.range);
  const Schedule sched = pipelined ? pipelined_schedule(ops, StageCaps{}) : asap_schedule(ops);

  CxModule cx;
  switch (design) {
    case Design::Custom:
    case Design::CustomPipelined: cx = measured_cx(false, table.gates); break;
    case Design::BaselineGeneric: cx = measured_cx(true, table.gates); break;
    default: {
      const LegacyDesign& d = table.legacy_design(to_string(design));
      cx = {d.cx_depth, d.cx_workspace};
    }
  }
  const CostMetrics qft = metrics(arith::build_qft3(), table.gates);

  ResourceReport r;
  r.design = to_string(design);
  r.stages = static_cast<unsigned>(sched.num_stages());
  for (const auto& stage : sched.stages) {
    unsigned d = 0;
    for (auto i : stage) d = std::max(d, sched.ops[i].kind == OpKind::Cx ? cx.depth : qft.depth);
    r.K_verification += d;
  }
  r.K = table.encoder_depth + r.K_verification;

  const unsigned n = cfg.n;
  const unsigned regs = (cfg.k + 1) * (cfg.k + 1);
  const unsigned data = n * regs * qubits_per_qupit(cfg.p);
  // Without pipelining every row of the grid runs its CX^b at once; with it,
  // the stage cap bounds the live adders.
  const unsigned live_cx = pipelined ? sched.peak_cx() : cfg.k + 1;
  r.modules = {
      {"Encoder", table.encoder_depth, data, regs},
      {"CX^b", cx.depth, data + n * live_cx * cx.workspace, sched.count(OpKind::Cx)},
      {"QFT", qft.depth, n * qft.width, sched.count(OpKind::Qft) + sched.count(OpKind::InvQft)}};
  for (const auto& m : r.modules) {
    r.Q = std::max(r.Q, m.qubits);
    r.Q_rows_sum += m.qubits;
  }
  r.KQ = static_cast<double>(r.K) * r.Q;
  r.G_total = r.KQ;
  r.epsilon_g = 1.0 / (n * r.KQ);

  const TrafficTotals traffic = bell_and_classical(cfg, model);
  r.bell_total = traffic.bell_total;
  r.classical_total = traffic.classical_total;
  r.rows = traffic.rows;
  return r;
}

const ResourceReport& DesignComparison::at(Design d) const {
  for (const auto& r : reports) {
    if (r.design == to_string(d)) return r;
  }
  throw UsageError("comparison lacks design " + to_string(d));
}

DesignComparison compare_designs(const ProtocolConfig& cfg, const CostTable& table,
                                 const GradecastCostModel& model) {
  DesignComparison c;
  for (Design d : all_designs()) c.reports.push_back(estimate(cfg, d, table, model));
  const auto& base = c.at(Design::BaselineGeneric);
  c.depth_ratio = static_cast<double>(c.at(Design::CustomPipelined).K) / base.K;
  c.qubit_ratio = static_cast<double>(c.at(Design::Custom).Q) / base.Q;

  const auto ops = verifier_program(cfg.k, cfg.range);
  const Schedule asap = asap_schedule(ops);
  const Schedule piped = pipelined_schedule(ops, StageCaps{});
  c.census_cx_asap = asap.count(OpKind::Cx);
  c.census_qft_asap = asap.count(OpKind::Qft) + asap.count(OpKind::InvQft);
  c.census_cx_pipelined = piped.peak_cx();
  c.census_qft_pipelined = piped.peak_qft();
  return c;
}

namespace {

nlohmann::json to_json(const ResourceReport& r) {
  nlohmann::json j;
  j["design"] = r.design;
  j["K"] = r.K;
  j["K_verification"] = r.K_verification;
  j["Q"] = r.Q;
  j["Q_rows_sum"] = r.Q_rows_sum;
  j["Q_reference_values"] = {160, 165};
  j["stages"] = r.stages;
  j["KQ"] = r.KQ;
  j["G_total"] = r.G_total;
  j["epsilon_g"] = r.epsilon_g;
  j["bell_total"] = r.bell_total;
  j["classical_total"] = r.classical_total;
  j["modules"] = nlohmann::json::array();
  for (const auto& m : r.modules) {
    j["modules"].push_back(
        {{"module", m.module}, {"depth", m.depth}, {"qubits", m.qubits}, {"invocations", m.invocations}});
  }
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"algorithm", row.algorithm},
                         {"phase", row.phase},
                         {"comm_type", row.comm_type},
                         {"source", row.source},
                         {"destination", row.destination},
                         {"bell_pairs", row.bell_pairs},
                         {"classical_bits", row.classical_bits}});
  }
  return j;
}

}  // namespace

std::string report_json(const ResourceReport& r, int indent) { return to_json(r).dump(indent); }

std::string comparison_json(const DesignComparison& c, int indent) {
  nlohmann::json j;
  j["designs"] = nlohmann::json::array();
  for (const auto& r : c.reports) j["designs"].push_back(to_json(r));
  j["depth_ratio_pipelined_vs_baseline"] = c.depth_ratio;
  j["qubit_ratio_custom_vs_baseline"] = c.qubit_ratio;
  j["census"] = {{"unpipelined", {{"cx", c.census_cx_asap}, {"qft", c.census_qft_asap}}},
                 {"pipelined_peak", {{"cx", c.census_cx_pipelined}, {"qft", c.census_qft_pipelined}}}};
  return j.dump(indent);
}

void write_comparison_csv(std::ostream& out, const DesignComparison& c) {
  out << "design,K,Q,KQ,epsilon_g\n";
  for (const auto& r : c.reports) {
    out << r.design << ',' << r.K << ',' << r.Q << ',' << r.KQ << ',' << r.epsilon_g << '\n';
  }
}

}  // namespace qba

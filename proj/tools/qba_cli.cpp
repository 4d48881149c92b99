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

// qba_cli: circuit checks, protocol trials, resource estimates and fidelity
// sweeps. Every command is deterministic given its config and seed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qba/adversary.hpp"
#include "qba/arith_circuits.hpp"
#include "qba/config.hpp"
#include "qba/consensus.hpp"
#include "qba/errors.hpp"
#include "qba/resources.hpp"
#include "qba/rs_code.hpp"
#include "qba/vqss.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qba;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kBudget = 3, kInternal = 4 };

const std::vector<std::string> kKnownKeys{
    "n", "p", "k", "t", "max_rounds", "backend", "fidelity", "catch_probability",
    "second_check_range", "term_budget", "gradecast_calibration", "adversary", "trials",
    "seed", "inputs", "threads", "write_transcripts", "design", "cost_table", "fidelities",
    "sweep_backend", "sweep_n", "sweep_p", "sweep_k", "sweep_t", "enable_table"};

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> trials;
  std::string out;
};

Config load_config(const Common& c) {
  Config cfg = c.config_path.empty() ? Config{} : Config::load(c.config_path);
  cfg.apply_env("QBA_", kKnownKeys);
  if (c.seed) cfg.set("seed", std::to_string(*c.seed));
  if (c.trials) cfg.set("trials", std::to_string(*c.trials));
  return cfg;
}

fs::path out_dir(const Common& c) {
  fs::path p = c.out.empty() ? fs::path("out") : fs::path(c.out);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

// Seeds for trial i, derived from the master seed by a counter.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

// Runs body(i) for i in [0, count) on a worker pool; results are indexed, so
// the output does not depend on scheduling.
void parallel_for(unsigned count, unsigned threads, const std::function<void(unsigned)>& body) {
  threads = std::max(1U, std::min(threads, count));
  std::atomic<unsigned> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (unsigned i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

unsigned thread_count(const Config& cfg) {
  const auto v = cfg.get_int("threads", 0);
  if (v > 0) return static_cast<unsigned>(v);
  return std::max(1U, std::thread::hardware_concurrency());
}

json metrics_json(const CostMetrics& m) {
  return {{"depth", m.depth}, {"width", m.width}, {"cnot_cost", m.cnot_cost},
          {"gate_count", m.gate_count}};
}

// ---------------------------------------------------------------- verify ---

int cmd_verify_circuits(const Common& common) {
  const Config cfg = load_config(common);
  const std::string table_name = cfg.get_string("enable_table", "corrected");
  arith::EnableTable table;
  if (table_name == "corrected") {
    table = arith::corrected_enable_signals;
  } else if (table_name == "printed") {
    table = arith::enable_signals;
  } else {
    throw ConfigError("enable_table must be 'corrected' or 'printed'");
  }
  const CostTable costs = cfg.has("cost_table") ? CostTable::load(cfg.get_string("cost_table", ""))
                                                : CostTable::shipped();

  json report;
  std::map<unsigned, unsigned> mult_bad, cx_bad;
  unsigned mult_ok = 0, cx_ok = 0;
  for (unsigned b = 1; b < arith::kModulus; ++b) {
    const QubitCircuit mult = arith::build_mult7(b, table);
    for (unsigned x = 0; x < arith::kModulus; ++x) {
      if (simulate_basis(mult, x) == (b * x) % arith::kModulus) {
        ++mult_ok;
      } else {
        ++mult_bad[b];
      }
    }
    const QubitCircuit cx = arith::build_cx_b(b, table);
    for (unsigned v = 0; v < arith::kModulus; ++v) {
      for (unsigned w = 0; w < arith::kModulus; ++w) {
        // Ancillae above bit 5 start and must end at zero.
        const std::uint64_t want = v | (((v + b * w) % arith::kModulus) << 3);
        if (simulate_basis(cx, v | (w << 3)) == want) {
          ++cx_ok;
        } else {
          ++cx_bad[b];
        }
      }
    }
  }

  // Encoded basis states of the sharing code must be orthonormal.
  const RSCode code = RSCode::standard(5, 7);
  const auto book = code.codebook();
  std::vector<SparseState> encoded;
  for (unsigned a = 0; a < 7; ++a) {
    SparseState s = SparseState::basis(7, std::span<const unsigned>(&a, 1));
    s.encode(0, book, 5);
    encoded.push_back(std::move(s));
  }
  double worst = 0;
  for (unsigned a = 0; a < 7; ++a) {
    for (unsigned c = 0; c < 7; ++c) {
      const double f = encoded[a].fidelity(encoded[c]);
      worst = std::max(worst, std::abs(f - (a == c ? 1.0 : 0.0)));
    }
  }
  const bool encode_ok = worst < 1e-9;

  auto offenders = [](const std::map<unsigned, unsigned>& bad) {
    json j = json::array();
    for (const auto& [b, count] : bad) j.push_back({{"b", b}, {"failures", count}});
    return j;
  };
  report["enable_table"] = table_name;
  report["mult7"] = {{"passed", mult_ok}, {"total", 42}, {"failing_b", offenders(mult_bad)}};
  report["cx_b"] = {{"passed", cx_ok}, {"total", 294}, {"failing_b", offenders(cx_bad)}};
  report["encode_orthonormal"] = {{"passed", encode_ok}, {"max_deviation", worst}};
  report["metrics"] = {
      {"mult7(b=3)", metrics_json(metrics(arith::build_mult7(3, table), costs.gates))},
      {"modadd7", metrics_json(metrics(arith::build_modadd7(), costs.gates))},
      {"cx_b(b=3)", metrics_json(metrics(arith::build_cx_b(3, table), costs.gates))},
      {"baseline_cx_b(b=3)", metrics_json(metrics(arith::build_baseline_cx_b(3), costs.gates))},
      {"qft3", metrics_json(metrics(arith::build_qft3(), costs.gates))}};
  const bool ok = mult_ok == 42 && cx_ok == 294 && encode_ok;
  report["passed"] = ok;

  std::cout << "mult7      " << mult_ok << "/42\n";
  std::cout << "cx_b       " << cx_ok << "/294\n";
  std::cout << "encode     " << (encode_ok ? "orthonormal" : "NOT orthonormal") << "\n";
  for (const auto& [b, count] : mult_bad) std::cout << "  mult7 fails for b=" << b << " (" << count << " inputs)\n";
  for (const auto& [b, count] : cx_bad) std::cout << "  cx_b fails for b=" << b << " (" << count << " inputs)\n";
  if (!common.out.empty()) write_file(out_dir(common) / "verify_circuits.json", report.dump(2));
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------- run ---

struct TrialOutcome {
  bool completed = false;
  bool budget_exceeded = false;
  bool nonterminated = false;
  bool agreement = true;
  bool validity_checked = false;
  bool validity = true;
  unsigned rounds = 0;
  unsigned coin_flips = 0, coin_zeros = 0, coin_common = 0;
  std::uint64_t bell = 0, classical = 0, wire = 0;
  std::string error;
};

std::vector<unsigned> trial_inputs(const std::string& mode, unsigned n, unsigned trial, Rng& rng) {
  std::vector<unsigned> in(n);
  std::bernoulli_distribution coin(0.5);
  if (mode == "all0" || mode == "all1") {
    std::fill(in.begin(), in.end(), mode == "all1" ? 1U : 0U);
  } else if (mode == "random") {
    for (auto& b : in) b = coin(rng);
  } else if (mode == "mixed") {
    // Every third trial unanimous (alternating value), the rest random.
    if (trial % 3 == 0) {
      std::fill(in.begin(), in.end(), (trial / 3) % 2);
    } else {
      for (auto& b : in) b = coin(rng);
      }
  } else {
    throw ConfigError("inputs must be one of all0, all1, random, mixed");
  }
  return in;
}

int cmd_run(const Common& common) {
  const Config cfg = load_config(common);
  const ProtocolConfig pc = ProtocolConfig::from_config(cfg);
  const std::string strategy = cfg.get_string("adversary", "honest");
  make_adversary(strategy, pc.n, pc.t);  // validates the key up front
  const unsigned trials = static_cast<unsigned>(cfg.get_int("trials", 1000));
  const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const std::string inputs = cfg.get_string("inputs", "mixed");
  const bool transcripts = cfg.get_bool("write_transcripts", true);
  const fs::path out = out_dir(common);
  if (transcripts) fs::create_directories(out / "transcripts");

  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> results(trials);
  parallel_for(trials, thread_count(cfg), [&](unsigned i) {
    TrialOutcome& r = results[i];
    Rng rng = trial_rng(seed, i);
    const auto in = trial_inputs(inputs, pc.n, i, rng);
    auto adversary = make_adversary(strategy, pc.n, pc.t);
    Network net(pc.n, pc.p, pc.fidelity, pc.cost_model);
    try {
      const QbaResult q = run_qba(pc, in, *adversary, net, rng, transcripts);
      r.completed = true;
      r.rounds = q.rounds;
      r.agreement = q.agreement();
      // Validity is judged on the inputs of nodes that stayed honest.
      std::optional<unsigned> honest_input;
      bool honest_unanimous = true;
      for (unsigned j = 0; j < pc.n; ++j) {
        if (q.faulty[j]) continue;
        if (honest_input && *honest_input != in[j]) honest_unanimous = false;
        honest_input = in[j];
      }
      r.validity_checked = honest_unanimous && honest_input.has_value();
      if (r.validity_checked) r.validity = q.common_decision() == honest_input;
      r.coin_flips = q.coin_flips;
      for (std::size_t c = 0; c < q.coins.size(); ++c) {
        r.coin_zeros += q.coins[c] == 0;
        r.coin_common += q.coin_common[c];
      }
      if (transcripts) {
        std::ostringstream name;
        name << "trial_" << std::setw(5) << std::setfill('0') << i << ".tsv";
        std::ofstream f(out / "transcripts" / name.str());
        write_transcript(f, q.transcript);
      }
    } catch (const BudgetError& e) {
      r.budget_exceeded = true;
      r.error = e.what();
    } catch (const NonTerminationError& e) {
      r.nonterminated = true;
      r.error = e.what();
    }
    r.bell = net.bell_total();
    r.classical = net.classical_total();
    r.wire = net.wire_total();
  });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  unsigned completed = 0, budget = 0, nonterm = 0, agree_viol = 0, valid_checked = 0,
           valid_viol = 0, max_rounds = 0, flips = 0, zeros = 0, common_coins = 0;
  double round_sum = 0;
  std::uint64_t bell = 0, classical = 0, wire = 0;
  std::map<unsigned, unsigned> histogram;
  for (const auto& r : results) {
    bell += r.bell;
    classical += r.classical;
    wire += r.wire;
    budget += r.budget_exceeded;
    nonterm += r.nonterminated;
    if (!r.completed) continue;
    ++completed;
    agree_viol += !r.agreement;
    valid_checked += r.validity_checked;
    valid_viol += r.validity_checked && !r.validity;
    round_sum += r.rounds;
    max_rounds = std::max(max_rounds, r.rounds);
    ++histogram[r.rounds];
    flips += r.coin_flips;
    zeros += r.coin_zeros;
    common_coins += r.coin_common;
  }
  json summary;
  summary["config"] = {{"n", pc.n}, {"p", pc.p}, {"k", pc.k}, {"t", pc.t},
                       {"backend", to_string(pc.backend)}, {"fidelity", pc.fidelity},
                       {"adversary", strategy}, {"trials", trials}, {"seed", seed},
                       {"inputs", inputs}};
  summary["completed"] = completed;
  summary["budget_exceeded"] = budget;
  summary["nonterminated"] = nonterm;
  summary["agreement_violations"] = agree_viol;
  summary["validity_checked"] = valid_checked;
  summary["validity_violations"] = valid_viol;
  summary["mean_rounds"] = completed ? round_sum / completed : 0.0;
  summary["max_rounds"] = max_rounds;
  json hist = json::object();
  for (const auto& [rounds, count] : histogram) hist[std::to_string(rounds)] = count;
  summary["round_histogram"] = hist;
  summary["coin_flips"] = flips;
  summary["coin_zero_fraction"] = flips ? static_cast<double>(zeros) / flips : 0.0;
  summary["coin_common_fraction"] = flips ? static_cast<double>(common_coins) / flips : 0.0;
  summary["ledger"] = {{"bell_total", bell}, {"classical_total", classical}, {"wire_total", wire}};
  write_file(out / "summary.json", summary.dump(2) + "\n");

  std::cout << strategy << ": " << completed << "/" << trials << " completed, agreement violations "
            << agree_viol << ", validity violations " << valid_viol << "/" << valid_checked
            << ", mean rounds " << summary["mean_rounds"].get<double>() << "\n";
  std::cerr << "elapsed " << seconds << " s\n";
  if (budget) {
    for (const auto& r : results) {
      if (!r.budget_exceeded) continue;
      std::cerr << "term budget exceeded in " << budget << " trial(s), first: " << r.error << "\n";
      break;
    }
    return kBudget;
  }
  return (agree_viol || valid_viol || nonterm) ? kCheckFailed : kOk;
}

// -------------------------------------------------------------- estimate ---

int cmd_estimate(const Common& common) {
  const Config cfg = load_config(common);
  const ProtocolConfig pc = ProtocolConfig::from_config(cfg);
  const CostTable costs = cfg.has("cost_table") ? CostTable::load(cfg.get_string("cost_table", ""))
                                                : CostTable::shipped();
  const Design design = parse_design(cfg.get_string("design", "CustomPipelined"));
  const fs::path out = out_dir(common);

  const ResourceReport report = estimate(pc, design, costs, pc.cost_model);
  const DesignComparison cmp = compare_designs(pc, costs, pc.cost_model);
  write_file(out / "report.json", report_json(report) + "\n");
  write_file(out / "designs.json", comparison_json(cmp) + "\n");
  {
    std::ofstream f(out / "designs.csv");
    write_comparison_csv(f, cmp);
  }

  // Cross-check the closed-form traffic against one simulated coin flip.
  ProtocolConfig sim = pc;
  sim.backend = QuantumBackend::Stochastic;
  Network net(pc.n, pc.p, 1.0, pc.cost_model);
  Rng rng = trial_rng(static_cast<std::uint64_t>(cfg.get_int("seed", 1)), 0);
  auto honest = make_adversary("honest", pc.n, pc.t);
  std::vector<NodeState> nodes(pc.n);
  for (unsigned i = 0; i < pc.n; ++i) {
    nodes[i].id = i;
    nodes[i].n = pc.n;
  }
  qocc(sim, 0, nodes, *honest, net, rng);
  {
    std::ofstream f(out / "ledger.csv");
    net.write_csv(f);
  }
  const TrafficTotals simulated = traffic_from_ledger(net);
  const bool match = simulated.bell_total == report.bell_total &&
                     simulated.classical_total == report.classical_total;

  std::cout << "design " << report.design << ": K=" << report.K << " Q=" << report.Q
            << " KQ=" << report.KQ << " epsilon_g=" << report.epsilon_g << "\n";
  for (const auto& m : report.modules) {
    std::cout << "  " << m.module << ": depth " << m.depth << ", " << m.qubits << " qubits\n";
  }
  std::cout << "bell pairs " << report.bell_total << " (simulated " << simulated.bell_total
            << "), classical bits " << report.classical_total << " (simulated "
            << simulated.classical_total << ")\n";
  std::cout << "depth ratio pipelined/baseline " << cmp.depth_ratio
            << ", qubit ratio custom/baseline " << cmp.qubit_ratio << "\n";
  return match ? kOk : kCheckFailed;
}

// -------------------------------------------------------- sweep-fidelity ---

int cmd_sweep_fidelity(const Common& common) {
  const Config cfg = load_config(common);
  ProtocolConfig pc = ProtocolConfig::from_config(cfg);
  pc.backend = parse_backend(cfg.get_string("sweep_backend", "exact"));
  // Exact simulation is only tractable far below the production size, so the
  // sweep has its own network parameters.
  pc.n = static_cast<unsigned>(cfg.get_int("sweep_n", 2));
  pc.p = static_cast<unsigned>(cfg.get_int("sweep_p", 3));
  pc.k = static_cast<unsigned>(cfg.get_int("sweep_k", 1));
  pc.t = static_cast<unsigned>(cfg.get_int("sweep_t", 0));
  const std::string strategy = cfg.get_string("adversary", "honest");
  const unsigned trials = static_cast<unsigned>(cfg.get_int("trials", 1000));
  const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const auto fidelities = cfg.get_doubles("fidelities", {1.0, 0.99, 0.95, 0.9});
  const fs::path out = out_dir(common);

  std::ofstream csv(out / "sweep_fidelity.csv");
  csv << "fidelity,trials,flag_rate,agreement_rate,budget_exceeded\n";
  int status = kOk;
  for (std::size_t point = 0; point < fidelities.size(); ++point) {
    ProtocolConfig fc = pc;
    fc.fidelity = fidelities[point];
    fc.validate();
    std::vector<int> flagged(trials, 0), agreed(trials, 0), budget(trials, 0);
    parallel_for(trials, thread_count(cfg), [&](unsigned i) {
      Rng rng = trial_rng(seed + point * 0x9e3779b9ULL, i);
      try {
        // One verification with an honest dealer ...
        Network vnet(fc.n, fc.p, fc.fidelity, fc.cost_model);
        VqssFaults none;
        VerificationOutcome v;
        if (fc.backend == QuantumBackend::Exact) {
          VqssRunOptions opts;
          opts.fidelity = fc.fidelity;
          v = run_exact(fc.vqss(), draw_challenges(fc.k, fc.p, fc.n, rng), none, vnet, rng, opts);
        } else {
          v = run_stochastic(fc.vqss(), none, vnet, rng, 0, fc.effective_catch_probability());
        }
        flagged[i] = v.dealer_flagged ||
                     std::any_of(v.origin_flagged.begin(), v.origin_flagged.end(),
                                 [](bool f) { return f; });
        // ... and one full agreement run.
        auto adversary = make_adversary(strategy, fc.n, fc.t);
        Network net(fc.n, fc.p, fc.fidelity, fc.cost_model);
        std::vector<unsigned> in(fc.n);
        std::bernoulli_distribution coin(0.5);
        for (auto& b : in) b = coin(rng);
        agreed[i] = run_qba(fc, in, *adversary, net, rng, false).agreement();
      } catch (const BudgetError&) {
        budget[i] = 1;
      } catch (const NonTerminationError&) {
        agreed[i] = 0;
      }
    });
    const unsigned done = trials - static_cast<unsigned>(std::count(budget.begin(), budget.end(), 1));
    const double flag_rate =
        done ? static_cast<double>(std::count(flagged.begin(), flagged.end(), 1)) / done : 0.0;
    const double agree_rate =
        done ? static_cast<double>(std::count(agreed.begin(), agreed.end(), 1)) / done : 0.0;
    const unsigned over = trials - done;
    csv << fidelities[point] << ',' << trials << ',' << flag_rate << ',' << agree_rate << ','
        << over << '\n';
    std::cout << "F=" << fidelities[point] << " flag_rate=" << flag_rate
              << " agreement_rate=" << agree_rate << "\n";
    if (over) status = kBudget;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-aided Byzantine agreement toolkit"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "key = value configuration file");
    sub->add_option("--seed", common.seed, "master seed");
    sub->add_option("--trials", common.trials, "number of trials");
    sub->add_option("--out", common.out, "output directory");
  };
  auto* verify = app.add_subcommand("verify-circuits", "exhaustive checks of the mod-7 circuits");
  auto* run = app.add_subcommand("run", "agreement trials against a scripted adversary");
  auto* est = app.add_subcommand("estimate", "resource estimates and traffic totals");
  auto* sweep = app.add_subcommand("sweep-fidelity", "verification flag rate versus fidelity");
  for (auto* sub : {verify, run, est, sweep}) add_common(sub);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*verify) return cmd_verify_circuits(common);
    if (*run) return cmd_run(common);
    if (*est) return cmd_estimate(common);
    if (*sweep) return cmd_sweep_fidelity(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const BudgetError& e) {
    std::cerr << "term budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

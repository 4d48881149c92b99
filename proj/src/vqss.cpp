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

#include "qba/vqss.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "qba/errors.hpp"

namespace qba {

void VqssParams::validate() const {
  if (!is_prime(p)) throw ConfigError("P must be prime");
  if (n == 0 || n >= p) throw ConfigError("need 0 < N < P");
  if (t >= n) throw ConfigError("need t < N");
  if (term_budget == 0) throw ConfigError("term budget must be positive");
}

unsigned ChallengeSet::value(const VerifierOp& op) const {
  const auto& v = op.second_check ? b_prime : b;
  if (op.challenge == 0 || op.challenge > v.size()) {
    throw ConfigError("missing challenge for " + op.label());
  }
  return v[op.challenge - 1];
}

ChallengeSet challenges_from_contributions(unsigned k, unsigned p,
                                           const std::vector<std::vector<unsigned>>& contributions) {
  ChallengeSet c;
  for (unsigned idx = 0; idx < 2 * k; ++idx) {
    unsigned sum = 0;
    for (const auto& node : contributions) {
      if (node.size() != 2 * k) throw UsageError("each node contributes 2k values");
      sum = (sum + node[idx]) % (p - 1);
    }
    (idx < k ? c.b : c.b_prime).push_back(1 + sum);
  }
  return c;
}

ChallengeSet draw_challenges(unsigned k, unsigned p, unsigned n, Rng& rng) {
  std::uniform_int_distribution<unsigned> d(0, p - 2);
  std::vector<std::vector<unsigned>> contrib(n, std::vector<unsigned>(2 * k));
  for (auto& node : contrib) {
    for (auto& v : node) v = d(rng);
  }
  return challenges_from_contributions(k, p, contrib);
}

RegisterGrid prepare_dealer_grid(QupitPool& pool, const VqssParams& params, DealerKind kind,
                                 Rng& rng) {
  params.validate();
  const RSCode code = params.code();
  const auto book = code.codebook();
  const unsigned side = params.k + 1;
  RegisterGrid grid;
  grid.k = params.k;
  std::uniform_int_distribution<unsigned> residue(0, params.p - 1);
  for (unsigned row = 0; row < side; ++row) {
    for (unsigned col = 0; col < side; ++col) {
      if (kind == DealerKind::Garbage) {
        std::vector<unsigned> v(params.n);
        for (auto& x : v) x = residue(rng);
        grid.registers.push_back(pool.add_state(SparseState::basis(params.p, v, params.term_budget)));
        continue;
      }
      SparseState s(params.p, params.term_budget);
      if (row == 0 && col == 0) {
        s = SparseState::phi(params.n, params.p, params.term_budget);
      } else if (row == 0) {
        std::vector<std::pair<std::vector<std::uint8_t>, Amp>> terms;
        for (unsigned a = 0; a < params.p; ++a) terms.push_back({{static_cast<std::uint8_t>(a)}, 1.0});
        s = SparseState::from_terms(params.p, 1, terms, params.term_budget);
      } else if (!params.encoded_zero) {
        const std::vector<unsigned> zeros(params.n, 0);
        grid.registers.push_back(pool.add_state(SparseState::basis(params.p, zeros, params.term_budget)));
        continue;
      } else {
        const unsigned zero = 0;
        s = SparseState::basis(params.p, std::span<const unsigned>(&zero, 1), params.term_budget);
      }
      s.encode(0, book, params.n);
      grid.registers.push_back(pool.add_state(std::move(s)));
    }
  }
  return grid;
}

std::vector<Transfer> distribution_plan_round1(const VqssParams& params, unsigned dealer) {
  std::vector<Transfer> plan;
  const unsigned side = params.k + 1;
  for (unsigned row = 0; row < side; ++row) {
    for (unsigned col = 0; col < side; ++col) {
      for (unsigned i = 0; i < params.n; ++i) plan.push_back({{row, col}, i, dealer, i});
    }
  }
  return plan;
}

std::vector<Transfer> distribution_plan_round2(const VqssParams& params) {
  std::vector<Transfer> plan;
  const unsigned side = params.k + 1;
  for (unsigned j = 0; j < params.n; ++j) {
    for (unsigned row = 0; row < side; ++row) {
      for (unsigned col = 0; col < side; ++col) {
        for (unsigned i = 0; i < params.n; ++i) plan.push_back({{row, col}, j, j, i});
      }
    }
  }
  return plan;
}

void account_sharing_traffic(const VqssParams& params, Network& net, unsigned dealer) {
  for (const auto& tr : distribution_plan_round1(params, dealer)) {
    net.account_teleport(tr.from, tr.to, rows::dealer_sharing());
  }
  for (const auto& tr : distribution_plan_round2(params)) {
    net.account_teleport(tr.from, tr.to, rows::player_sharing());
  }
}

void account_verification_traffic(const VqssParams& params, Network& net) {
  const unsigned bits = qubits_per_qupit(params.p);
  const auto measured = measured_registers(params.k, params.range);
  for (unsigned j = 0; j < params.n; ++j) {
    for (unsigned i = 0; i < params.n; ++i) {
      for (const auto& m : measured) {
        net.account_gradecast(bits, m.fourier_domain ? rows::verify_second_check()
                                                     : rows::verify_first_check());
      }
    }
  }
}

bool level2_check(const RSCode& code, const std::vector<std::uint8_t>& readings,
                  bool fourier_domain) {
  return fourier_domain ? code.in_dual_of_zero_code(readings) : code.is_codeword(readings);
}

bool consistency_predicate(const RSCode& code, const std::vector<std::optional<unsigned>>& values,
                           unsigned t) {
  return code.decode(values, t).has_value();
}

namespace {

std::string block_str(Reg r, unsigned origin) {
  return "(" + std::to_string(r.row) + "," + std::to_string(r.col) + ")@" + std::to_string(origin);
}

// Level-1 acceptance: at most t origins flagged, and for every register read
// in the computational basis the recovered level-1 components of the
// unflagged origins lie on one polynomial of degree <= t.
bool touches_reg(const VerifierOp& op, const Reg& r) {
  return op.target == r || (op.kind == OpKind::Cx && op.control == r);
}

bool level1_accepts(const RSCode& code, const std::vector<bool>& flagged,
                    const std::map<Reg, std::vector<std::optional<unsigned>>>& secrets) {
  const auto bad = std::count(flagged.begin(), flagged.end(), true);
  if (static_cast<unsigned>(bad) > code.degree()) return false;
  for (const auto& [reg, s] : secrets) {
    std::vector<std::optional<unsigned>> v(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!flagged[j]) v[j] = s[j];
    }
    if (!code.decode(v, 0)) return false;
  }
  return true;
}

}  // namespace

VerificationOutcome run_exact(const VqssParams& params, const ChallengeSet& challenges,
                              const VqssFaults& faults, Network& net, Rng& rng,
                              const VqssRunOptions& options) {
  params.validate();
  if (net.size() != params.n || net.prime() != params.p) {
    throw UsageError("network does not match the protocol parameters");
  }
  if (options.dealer >= params.n) throw UsageError("dealer out of range");
  const RSCode code = params.code();
  const auto book = code.codebook();
  const unsigned n = params.n;
  std::ostream* trace = options.trace;

  QupitPool pool(params.p, params.term_budget);
  VerificationOutcome out;
  out.origin_flagged.assign(n, false);
  const RegisterGrid grid = prepare_dealer_grid(pool, params, faults.dealer, rng);

  for (const auto& tr : distribution_plan_round1(params, options.dealer)) {
    out.noise_events += net.teleport(pool, grid.at(tr.reg)[tr.origin], tr.from, tr.to,
                                     rows::dealer_sharing(), rng);
  }

  const auto ops = verifier_program(params.k, params.range);
  const auto measured = measured_registers(params.k, params.range);
  const Schedule sched = pipelined_schedule(ops);
  std::vector<std::size_t> stage_of(ops.size());
  for (std::size_t s = 0; s < sched.stages.size(); ++s) {
    for (auto op : sched.stages[s]) stage_of[op] = s + 1;
  }
  // Measure each checked register right after its last operator.
  std::map<std::ptrdiff_t, std::vector<MeasuredReg>> measure_after;
  for (const auto& m : measured) {
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (touches_reg(ops[i], m.reg)) last = static_cast<std::ptrdiff_t>(i);
    }
    measure_after[last].push_back(m);
  }

  std::map<Reg, std::vector<std::optional<unsigned>>> secrets;
  for (const auto& m : measured) {
    if (!m.fourier_domain) secrets[m.reg].assign(n, std::nullopt);
  }
  const unsigned side = params.k + 1;
  out.value.assign(n, std::vector<unsigned>(n, 0));
  std::ptrdiff_t kept_last = -1;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (touches_reg(ops[i], {0, 0})) kept_last = static_cast<std::ptrdiff_t>(i);
  }

  for (unsigned j = 0; j < n; ++j) {
    // Player j re-encodes and redistributes a level-1 component the first
    // time the program touches that register, which keeps the joint support
    // small; the transfers themselves are unchanged.
    std::map<Reg, std::vector<QupitId>> block;
    const bool garbage = j < faults.garbage_players.size() && faults.garbage_players[j];
    auto materialize = [&](const Reg& r) -> std::vector<QupitId>& {
      auto it = block.find(r);
      if (it != block.end()) return it->second;
      const QupitId src = grid.at(r)[j];
      std::vector<QupitId> ids;
      if (garbage) {
        pool.measure(src, rng);
        std::uniform_int_distribution<unsigned> residue(0, params.p - 1);
        std::vector<unsigned> v(n);
        for (auto& x : v) x = residue(rng);
        ids = pool.add_state(SparseState::basis(params.p, v, params.term_budget));
      } else {
        ids = pool.encode(src, book, n);
      }
      for (unsigned i = 0; i < n; ++i) {
        out.noise_events += net.teleport(pool, ids[i], j, i, rows::player_sharing(), rng);
      }
      return block[r] = ids;
    };
    for (unsigned row = 0; row < side; ++row) {
      for (unsigned col = 0; col < side; ++col) {
        bool used = false;
        for (const auto& op : ops) used = used || touches_reg(op, {row, col});
        if (!used) materialize({row, col});
      }
    }

    auto check_block = [&](const MeasuredReg& m, const std::vector<std::uint8_t>& readings,
                           const std::string& stage) {
      if (trace) {
        for (unsigned i = 0; i < n; ++i) {
          *trace << stage << '\t' << i << '\t' << (m.fourier_domain ? "MEASURE_F" : "MEASURE")
                 << '\t' << block_str(m.reg, j) << '\t' << unsigned(readings[i]) << '\n';
        }
      }
      if (!level2_check(code, readings, m.fourier_domain)) {
        out.origin_flagged[j] = true;
      } else if (!m.fourier_domain) {
        secrets[m.reg][j] = code.decode(readings);
      }
    };
    auto measure_block = [&](const MeasuredReg& m, const std::string& stage) {
      std::vector<std::uint8_t> readings(n);
      for (unsigned i = 0; i < n; ++i) {
        readings[i] = static_cast<std::uint8_t>(pool.measure(materialize(m.reg)[i], rng));
      }
      check_block(m, readings, stage);
    };
    auto trace_op = [&](const VerifierOp& op, const std::string& stage) {
      if (!trace) return;
      for (unsigned i = 0; i < n; ++i) {
        *trace << stage << '\t' << i << '\t';
        if (op.kind == OpKind::Cx) {
          *trace << "CX" << challenges.value(op) << '\t' << block_str(op.control, j) << ','
                 << block_str(op.target, j);
        } else {
          *trace << (op.kind == OpKind::Qft ? "QFT" : "IQFT") << '\t' << block_str(op.target, j);
        }
        *trace << "\t\n";
      }
    };

    // The kept block is never touched after its last operator, so reading it
    // there instead of after all origins commutes with everything that
    // follows and yields the same joint law.
    auto read_kept = [&] {
      auto& kept = materialize({0, 0});
      for (unsigned i = 0; i < n; ++i) {
        out.value[j][i] = pool.measure(kept[i], rng);
        if (trace) {
          *trace << "final\t" << i << "\tMEASURE\t" << block_str({0, 0}, j) << '\t'
                 << out.value[j][i] << '\n';
        }
      }
    };

    for (const auto& m : measure_after[-1]) measure_block(m, "0");
    for (std::size_t idx = 0; idx < ops.size(); ++idx) {
      const VerifierOp& op = ops[idx];
      const std::string stage = std::to_string(stage_of[idx]);
      std::vector<MeasuredReg> pending;
      if (auto it = measure_after.find(static_cast<std::ptrdiff_t>(idx)); it != measure_after.end()) {
        pending = it->second;
      }
      // A check whose target is read right away goes through the fused
      // apply-and-measure kernel, which never forms the joint product.
      auto fused = std::find_if(pending.begin(), pending.end(),
                                [&](const MeasuredReg& m) { return m.reg == op.target; });
      if (op.kind == OpKind::Cx && fused != pending.end()) {
        auto& ctrl = materialize(op.control);
        auto& tgt = materialize(op.target);
        const auto vals = pool.cx_b_measure(ctrl, tgt, challenges.value(op), rng);
        trace_op(op, stage);
        check_block(*fused, std::vector<std::uint8_t>(vals.begin(), vals.end()), stage);
        pending.erase(fused);
      } else {
        if (op.kind == OpKind::Cx) materialize(op.control);
        materialize(op.target);
        for (unsigned i = 0; i < n; ++i) {
          switch (op.kind) {
            case OpKind::Cx:
              pool.cx_b(block[op.control][i], block[op.target][i], challenges.value(op));
              break;
            case OpKind::Qft: pool.fourier(block[op.target][i], false); break;
            case OpKind::InvQft: pool.fourier(block[op.target][i], true); break;
          }
        }
        trace_op(op, stage);
      }
      out.peak_terms = std::max(out.peak_terms, pool.peak_terms());
      for (const auto& m : pending) measure_block(m, stage);
      pool.compact();
      if (static_cast<std::ptrdiff_t>(idx) == kept_last) read_kept();
    }
    if (kept_last < 0) read_kept();
  }

  out.dealer_flagged = !level1_accepts(code, out.origin_flagged, secrets);

  out.peak_terms = std::max(out.peak_terms, pool.peak_terms());
  account_verification_traffic(params, net);
  return out;
}

double default_catch_probability(unsigned k) { return 1.0 - std::ldexp(1.0, -static_cast<int>(k)); }

VerificationOutcome run_stochastic(const VqssParams& params, const VqssFaults& faults,
                                   Network& net, Rng& rng, unsigned dealer,
                                   double catch_probability) {
  params.validate();
  if (dealer >= params.n) throw UsageError("dealer out of range");
  const RSCode code = params.code();
  const unsigned n = params.n;
  std::uniform_int_distribution<unsigned> residue(0, params.p - 1);
  std::bernoulli_distribution caught(std::clamp(catch_probability, 0.0, 1.0));
  auto random_rest = [&] {
    std::vector<unsigned> rest(params.t);
    for (auto& c : rest) c = residue(rng);
    return rest;
  };

  account_sharing_traffic(params, net, dealer);
  VerificationOutcome out;
  out.origin_flagged.assign(n, false);

  // Level-1 components of the kept register.
  Codeword level1(n);
  if (faults.dealer == DealerKind::Honest) {
    std::uniform_int_distribution<unsigned> secret(0, n - 1);
    const unsigned a = secret(rng);
    level1 = code.codeword(a, random_rest());
  } else {
    for (auto& s : level1) s = static_cast<std::uint8_t>(residue(rng));
    out.dealer_flagged = caught(rng);
  }
  out.value.assign(n, std::vector<unsigned>(n, 0));
  for (unsigned j = 0; j < n; ++j) {
    const bool garbage = j < faults.garbage_players.size() && faults.garbage_players[j];
    if (garbage) {
      for (unsigned i = 0; i < n; ++i) out.value[j][i] = residue(rng);
      out.origin_flagged[j] = caught(rng);
      continue;
    }
    const Codeword g = code.codeword(level1[j], random_rest());
    for (unsigned i = 0; i < n; ++i) out.value[j][i] = g[i];
  }
  account_verification_traffic(params, net);
  return out;
}

}  // namespace qba

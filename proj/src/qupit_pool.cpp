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

#include "qba/qupit_pool.hpp"

#include <string>

#include "qba/errors.hpp"

namespace qba {

QupitPool::QupitPool(unsigned dim, std::size_t term_budget) : dim_(dim), budget_(term_budget) {
  if (!is_prime(dim)) throw ConfigError("pool dimension must be prime");
}

std::vector<QupitId> QupitPool::add_state(SparseState s) {
  if (s.dim() != dim_) throw UsageError("state dimension does not match pool");
  s.set_term_budget(budget_);
  const std::size_t slot = slots_.size();
  std::vector<QupitId> ids;
  for (std::size_t q = 0; q < s.num_qupits(); ++q) {
    ids.push_back(loc_.size());
    loc_.push_back({slot, q});
    alive_.push_back(true);
  }
  slots_.push_back({std::move(s), ids});
  note_terms(slot);
  return ids;
}

void QupitPool::require_alive(QupitId id) const {
  if (id >= alive_.size() || !alive_[id]) {
    throw UsageError("qupit id " + std::to_string(id) + " is not live");
  }
}

bool QupitPool::alive(QupitId id) const { return id < alive_.size() && alive_[id]; }

QupitRef QupitPool::locate(QupitId id) const {
  require_alive(id);
  return loc_[id];
}

const SparseState& QupitPool::state_of(QupitId id) const {
  require_alive(id);
  return *slots_[loc_[id].state].state;
}

const std::vector<QupitId>& QupitPool::group_of(QupitId id) const {
  require_alive(id);
  return slots_[loc_[id].state].owners;
}

void QupitPool::reindex(std::size_t slot) {
  const auto& owners = slots_[slot].owners;
  for (std::size_t q = 0; q < owners.size(); ++q) loc_[owners[q]] = {slot, q};
}

void QupitPool::note_terms(std::size_t slot) {
  if (slots_[slot].state) {
    peak_terms_ = std::max(peak_terms_, slots_[slot].state->num_terms());
  }
}

void QupitPool::merge_into(std::size_t dst, std::size_t src) {
  SparseState merged = tensor(*slots_[dst].state, *slots_[src].state);
  merged.set_term_budget(budget_);
  slots_[dst].state = std::move(merged);
  auto& owners = slots_[dst].owners;
  owners.insert(owners.end(), slots_[src].owners.begin(), slots_[src].owners.end());
  slots_[src].state.reset();
  slots_[src].owners.clear();
  reindex(dst);
  note_terms(dst);
}

void QupitPool::add_const(QupitId target, unsigned c) {
  const QupitRef r = locate(target);
  slots_[r.state].state->add_const(r.index, c);
}

void QupitPool::cx_b(QupitId control, QupitId target, unsigned b) {
  if (control == target) throw UsageError("cx_b control and target alias");
  QupitRef rc = locate(control);
  QupitRef rt = locate(target);
  if (rc.state != rt.state) {
    merge_into(rc.state, rt.state);
    rc = loc_[control];
    rt = loc_[target];
  }
  slots_[rc.state].state->cx_b(rc.index, rt.index, b);
}

void QupitPool::fourier(QupitId target, bool inverse) {
  const QupitRef r = locate(target);
  slots_[r.state].state->fourier(r.index, inverse);
  note_terms(r.state);
}

void QupitPool::pauli(QupitId target, unsigned x_power, unsigned z_power) {
  const QupitRef r = locate(target);
  slots_[r.state].state->pauli(r.index, x_power, z_power);
}

unsigned QupitPool::measure(QupitId target, Rng& rng) {
  const QupitRef r = locate(target);
  Slot& slot = slots_[r.state];
  const unsigned outcome = slot.state->measure(r.index, rng, /*remove=*/true);
  slot.owners.erase(slot.owners.begin() + static_cast<std::ptrdiff_t>(r.index));
  alive_[target] = false;
  if (slot.owners.empty()) {
    slot.state.reset();
  } else {
    reindex(r.state);
  }
  return outcome;
}

std::vector<unsigned> QupitPool::cx_b_measure(const std::vector<QupitId>& controls,
                                             const std::vector<QupitId>& targets, unsigned b,
                                             Rng& rng) {
  if (controls.size() != targets.size()) throw UsageError("cx_b_measure: block size mismatch");
  if (controls.empty()) return {};
  const std::size_t sa = locate(controls[0]).state;
  const std::size_t sb = locate(targets[0]).state;
  bool fused = sa != sb;
  for (auto c : controls) fused = fused && locate(c).state == sa;
  for (auto t : targets) fused = fused && locate(t).state == sb;
  std::vector<unsigned> outcome;
  if (!fused) {
    for (std::size_t q = 0; q < controls.size(); ++q) cx_b(controls[q], targets[q], b);
    for (auto t : targets) outcome.push_back(measure(t, rng));
    return outcome;
  }
  std::vector<std::size_t> ci, ti;
  for (auto c : controls) ci.push_back(loc_[c].index);
  for (auto t : targets) ti.push_back(loc_[t].index);
  SparseState joint =
      cx_b_measure_targets(*slots_[sa].state, ci, *slots_[sb].state, ti, b, rng, outcome);
  joint.set_term_budget(budget_);
  std::vector<bool> gone(slots_[sb].owners.size(), false);
  for (auto i : ti) gone[i] = true;
  auto& owners = slots_[sa].owners;
  for (std::size_t q = 0; q < gone.size(); ++q) {
    if (!gone[q]) owners.push_back(slots_[sb].owners[q]);
  }
  for (auto t : targets) alive_[t] = false;
  slots_[sa].state = std::move(joint);
  slots_[sb].state.reset();
  slots_[sb].owners.clear();
  reindex(sa);
  note_terms(sa);
  return outcome;
}

std::vector<QupitId> QupitPool::encode(QupitId target,
                                       const std::vector<std::vector<std::uint8_t>>& codebook,
                                       std::size_t width) {
  const QupitRef r = locate(target);
  Slot& slot = slots_[r.state];
  slot.state->encode(r.index, codebook, width);
  slot.owners.erase(slot.owners.begin() + static_cast<std::ptrdiff_t>(r.index));
  alive_[target] = false;
  std::vector<QupitId> ids;
  for (std::size_t w = 0; w < width; ++w) {
    ids.push_back(loc_.size());
    loc_.push_back({r.state, 0});
    alive_.push_back(true);
    slot.owners.push_back(ids.back());
  }
  reindex(r.state);
  note_terms(r.state);
  return ids;
}

void QupitPool::compact() {
  const std::size_t existing = slots_.size();
  for (std::size_t slot = 0; slot < existing; ++slot) {
    if (!slots_[slot].state || slots_[slot].owners.size() < 2) continue;
    for (std::size_t q = slots_[slot].owners.size(); q-- > 0;) {
      if (slots_[slot].owners.size() < 2) break;
      const auto v = slots_[slot].state->definite_value(q);
      if (!v) continue;
      const QupitId id = slots_[slot].owners[q];
      slots_[slot].state->remove_qupit(q);
      slots_[slot].owners.erase(slots_[slot].owners.begin() + static_cast<std::ptrdiff_t>(q));
      const unsigned value = *v;
      slots_.push_back({SparseState::basis(dim_, std::span<const unsigned>(&value, 1), budget_),
                        {id}});
      loc_[id] = {slots_.size() - 1, 0};
    }
    reindex(slot);
  }
}

std::size_t QupitPool::live_states() const {
  std::size_t n = 0;
  for (const auto& s : slots_) n += s.state.has_value();
  return n;
}

std::size_t QupitPool::live_qupits() const {
  std::size_t n = 0;
  for (bool a : alive_) n += a;
  return n;
}

std::size_t QupitPool::total_terms() const {
  std::size_t n = 0;
  for (const auto& s : slots_) {
    if (s.state) n += s.state->num_terms();
  }
  return n;
}

}  // namespace qba

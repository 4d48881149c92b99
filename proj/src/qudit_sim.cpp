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

#include "qba/qudit_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "qba/errors.hpp"
#include "qba/kernels.hpp"

namespace qba {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned mod_inverse(unsigned a, unsigned p) {
  a %= p;
  if (a == 0) throw DomainError("zero has no inverse mod " + std::to_string(p));
  for (unsigned x = 1; x < p; ++x) {
    if ((a * x) % p == 1) return x;
  }
  throw DomainError("no inverse for " + std::to_string(a) + " mod " + std::to_string(p));
}

namespace {

std::string key_of(std::span<const std::uint8_t> d) {
  return {reinterpret_cast<const char*>(d.data()), d.size()};
}

}  // namespace

SparseState::SparseState(unsigned dim, std::size_t term_budget)
    : dim_(dim), budget_(term_budget) {
  if (!is_prime(dim) || dim > 255) {
    throw ConfigError("qupit dimension must be a prime below 256, got " + std::to_string(dim));
  }
  amps_.push_back(1.0);
}

SparseState SparseState::basis(unsigned dim, std::span<const unsigned> values,
                               std::size_t term_budget) {
  SparseState s(dim, term_budget);
  s.n_ = values.size();
  s.digits_.reserve(values.size());
  for (unsigned v : values) {
    s.check_residue(v, "basis value");
    s.digits_.push_back(static_cast<std::uint8_t>(v));
  }
  return s;
}

SparseState SparseState::phi(unsigned n, unsigned dim, std::size_t term_budget) {
  if (n == 0 || n >= dim) {
    throw ConfigError("phi needs 0 < N < P, got N=" + std::to_string(n) +
                      " P=" + std::to_string(dim));
  }
  SparseState s(dim, term_budget);
  s.n_ = 1;
  s.amps_.assign(n, Amp(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  s.digits_.resize(n);
  std::iota(s.digits_.begin(), s.digits_.end(), std::uint8_t{0});
  return s;
}

SparseState SparseState::from_terms(
    unsigned dim, std::size_t num_qupits,
    const std::vector<std::pair<std::vector<std::uint8_t>, Amp>>& terms,
    std::size_t term_budget) {
  SparseState s(dim, term_budget);
  s.n_ = num_qupits;
  s.amps_.clear();
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& [tuple, amp] : terms) {
    if (tuple.size() != num_qupits) throw UsageError("term tuple has the wrong length");
    for (auto v : tuple) s.check_residue(v, "term digit");
    auto [it, fresh] = seen.emplace(key_of(tuple), s.amps_.size());
    if (fresh) {
      s.digits_.insert(s.digits_.end(), tuple.begin(), tuple.end());
      s.amps_.push_back(amp);
    } else {
      s.amps_[it->second] += amp;
    }
  }
  s.check_budget(s.amps_.size(), "from_terms");
  if (s.norm_sq() == 0.0) throw DomainError("state has zero norm");
  s.renormalize();
  return s;
}

void SparseState::check_index(std::size_t q) const {
  if (q >= n_) {
    throw UsageError("qupit index " + std::to_string(q) + " out of range (" +
                     std::to_string(n_) + " qupits)");
  }
}

void SparseState::check_budget(std::size_t terms, const char* op) const {
  if (terms > budget_) {
    throw BudgetError(std::string(op) + ": " + std::to_string(terms) +
                      " terms exceeds budget of " + std::to_string(budget_));
  }
}

void SparseState::check_residue(unsigned v, const char* what) const {
  if (v >= dim_) {
    throw DomainError(std::string(what) + " " + std::to_string(v) + " is not a residue mod " +
                      std::to_string(dim_));
  }
}

double SparseState::norm_sq() const { return kernels::active().norm_sq(amps_); }

void SparseState::renormalize() {
  const double n = norm_sq();
  if (n <= 0.0) throw DomainError("cannot renormalize a zero state");
  kernels::active().scale(amps_, 1.0 / std::sqrt(n));
}

Amp SparseState::amplitude_of(std::span<const std::uint8_t> tuple) const {
  if (tuple.size() != n_) throw UsageError("tuple length mismatch");
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    if (std::equal(tuple.begin(), tuple.end(), digits_.begin() + t * n_)) return amps_[t];
  }
  return 0.0;
}

void SparseState::add_const(std::size_t target, unsigned c) {
  check_index(target);
  check_residue(c, "additive constant");
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    auto& d = digits_[t * n_ + target];
    d = static_cast<std::uint8_t>((d + c) % dim_);
  }
}

void SparseState::cx_b(std::size_t control, std::size_t target, unsigned b) {
  check_index(control);
  check_index(target);
  if (control == target) throw UsageError("cx_b control and target alias");
  check_residue(b, "cx_b multiplier");
  if (b == 0) throw DomainError("cx_b with b = 0 is not reversible");
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    const unsigned v = digits_[t * n_ + control];
    auto& w = digits_[t * n_ + target];
    w = static_cast<std::uint8_t>((v + b * w) % dim_);
  }
}

void SparseState::cx_b_inverse(std::size_t control, std::size_t target, unsigned b) {
  check_index(control);
  check_index(target);
  if (control == target) throw UsageError("cx_b control and target alias");
  check_residue(b, "cx_b multiplier");
  const unsigned inv = mod_inverse(b, dim_);
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    const unsigned v = digits_[t * n_ + control];
    auto& w = digits_[t * n_ + target];
    w = static_cast<std::uint8_t>(((w + dim_ - v) * inv) % dim_);
  }
}

void SparseState::pauli(std::size_t target, unsigned x_power, unsigned z_power) {
  check_index(target);
  x_power %= dim_;
  z_power %= dim_;
  const double two_pi_over_p = 2.0 * std::numbers::pi / dim_;
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    auto& d = digits_[t * n_ + target];
    if (z_power != 0) amps_[t] *= std::polar(1.0, two_pi_over_p * ((z_power * d) % dim_));
    d = static_cast<std::uint8_t>((d + x_power) % dim_);
  }
}

void SparseState::fourier(std::size_t target, bool inverse) {
  check_index(target);
  const std::size_t terms = amps_.size();
  // Group terms that agree everywhere except at target.
  std::vector<std::size_t> order(terms);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less_rest = [&](std::size_t a, std::size_t b) {
    const std::uint8_t* da = digits_.data() + a * n_;
    const std::uint8_t* db = digits_.data() + b * n_;
    for (std::size_t q = 0; q < n_; ++q) {
      if (q == target) continue;
      if (da[q] != db[q]) return da[q] < db[q];
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less_rest);

  std::vector<Amp> roots(dim_);
  const double sign = inverse ? -1.0 : 1.0;
  for (unsigned k = 0; k < dim_; ++k) {
    roots[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * k / dim_);
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim_));

  std::vector<std::uint8_t> out_digits;
  std::vector<Amp> out_amps;
  std::vector<Amp> in(dim_);
  std::size_t g = 0;
  while (g < terms) {
    std::size_t end = g + 1;
    while (end < terms && !less_rest(order[g], order[end])) ++end;
    std::fill(in.begin(), in.end(), Amp{});
    for (std::size_t i = g; i < end; ++i) {
      in[digits_[order[i] * n_ + target]] += amps_[order[i]];
    }
    const std::uint8_t* base = digits_.data() + order[g] * n_;
    for (unsigned b = 0; b < dim_; ++b) {
      Amp acc{};
      for (unsigned a = 0; a < dim_; ++a) {
        if (in[a] != Amp{}) acc += in[a] * roots[(a * b) % dim_];
      }
      acc *= norm;
      if (std::abs(acc) < kPruneThreshold) continue;
      out_digits.insert(out_digits.end(), base, base + n_);
      out_digits[out_digits.size() - n_ + target] = static_cast<std::uint8_t>(b);
      out_amps.push_back(acc);
    }
    check_budget(out_amps.size(), "fourier");
    g = end;
  }
  digits_ = std::move(out_digits);
  amps_ = std::move(out_amps);
  renormalize();
}

std::vector<double> SparseState::probabilities(std::size_t target) const {
  check_index(target);
  std::vector<double> probs(dim_, 0.0);
  kernels::active().bucket_norm_sq(amps_, digits_, n_, target, probs);
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
  return probs;
}

unsigned SparseState::measure(std::size_t target, Rng& rng, bool remove) {
  const std::vector<double> probs = probabilities(target);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  unsigned outcome = 0;
  double cum = 0.0;
  unsigned last_nonzero = 0;
  for (unsigned v = 0; v < dim_; ++v) {
    if (probs[v] > 0.0) last_nonzero = v;
  }
  outcome = last_nonzero;
  for (unsigned v = 0; v < dim_; ++v) {
    cum += probs[v];
    if (r < cum && probs[v] > 0.0) {
      outcome = v;
      break;
    }
  }
  std::size_t w = 0;
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    if (digits_[t * n_ + target] != outcome) continue;
    if (w != t) {
      std::copy_n(digits_.begin() + t * n_, n_, digits_.begin() + w * n_);
      amps_[w] = amps_[t];
    }
    ++w;
  }
  amps_.resize(w);
  digits_.resize(w * n_);
  renormalize();
  if (remove) remove_qupit(target);
  return outcome;
}

std::optional<unsigned> SparseState::definite_value(std::size_t target) const {
  check_index(target);
  if (amps_.empty()) return std::nullopt;
  const std::uint8_t v = digits_[target];
  for (std::size_t t = 1; t < amps_.size(); ++t) {
    if (digits_[t * n_ + target] != v) return std::nullopt;
  }
  return v;
}

void SparseState::remove_qupit(std::size_t target) {
  check_index(target);
  if (!amps_.empty()) {
    const std::uint8_t v = digits_[target];
    for (std::size_t t = 1; t < amps_.size(); ++t) {
      if (digits_[t * n_ + target] != v) {
        throw UsageError("remove_qupit on a qupit without a definite value");
      }
    }
  }
  std::vector<std::uint8_t> out;
  out.reserve(amps_.size() * (n_ - 1));
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    for (std::size_t q = 0; q < n_; ++q) {
      if (q != target) out.push_back(digits_[t * n_ + q]);
    }
  }
  digits_ = std::move(out);
  --n_;
}

void SparseState::encode(std::size_t target,
                         const std::vector<std::vector<std::uint8_t>>& codebook,
                         std::size_t width) {
  check_index(target);
  if (codebook.size() != dim_) throw UsageError("codebook needs one entry per residue");
  const std::size_t per_value = codebook[0].size() / width;
  for (const auto& words : codebook) {
    if (words.size() != per_value * width || per_value == 0) {
      throw UsageError("codebooks must be nonempty and equally sized");
    }
  }
  check_budget(amps_.size() * per_value, "encode");
  const std::size_t new_n = n_ - 1 + width;
  const double scale = 1.0 / std::sqrt(static_cast<double>(per_value));
  std::vector<std::uint8_t> out_digits;
  std::vector<Amp> out_amps;
  out_digits.reserve(amps_.size() * per_value * new_n);
  out_amps.reserve(amps_.size() * per_value);
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    const std::uint8_t* row = digits_.data() + t * n_;
    const auto& words = codebook[row[target]];
    for (std::size_t c = 0; c < per_value; ++c) {
      for (std::size_t q = 0; q < n_; ++q) {
        if (q != target) out_digits.push_back(row[q]);
      }
      out_digits.insert(out_digits.end(), words.begin() + c * width,
                        words.begin() + (c + 1) * width);
      out_amps.push_back(amps_[t] * scale);
    }
  }
  digits_ = std::move(out_digits);
  amps_ = std::move(out_amps);
  n_ = new_n;
}

SparseState tensor(const SparseState& a, const SparseState& b) {
  if (a.dim_ != b.dim_) throw UsageError("tensor of states with different dimensions");
  const std::size_t budget = std::min(a.budget_, b.budget_);
  const std::size_t terms = a.num_terms() * b.num_terms();
  if (terms > budget) {
    throw BudgetError("tensor: " + std::to_string(terms) + " terms exceeds budget of " +
                      std::to_string(budget));
  }
  SparseState out(a.dim_, budget);
  out.n_ = a.n_ + b.n_;
  out.amps_.clear();
  out.amps_.reserve(terms);
  out.digits_.reserve(terms * out.n_);
  for (std::size_t i = 0; i < a.num_terms(); ++i) {
    for (std::size_t j = 0; j < b.num_terms(); ++j) {
      auto da = a.digits(i);
      auto db = b.digits(j);
      out.digits_.insert(out.digits_.end(), da.begin(), da.end());
      out.digits_.insert(out.digits_.end(), db.begin(), db.end());
      out.amps_.push_back(a.amps_[i] * b.amps_[j]);
    }
  }
  return out;
}

SparseState cx_b_measure_targets(const SparseState& a, std::span<const std::size_t> controls,
                                 const SparseState& b, std::span<const std::size_t> targets,
                                 unsigned mult, Rng& rng, std::vector<unsigned>& outcome) {
  if (a.dim_ != b.dim_) throw UsageError("cx_b_measure_targets: dimension mismatch");
  if (controls.size() != targets.size() || controls.empty()) {
    throw UsageError("cx_b_measure_targets: control/target blocks must be nonempty and equal");
  }
  for (auto c : controls) a.check_index(c);
  for (auto t : targets) b.check_index(t);
  const unsigned p = a.dim_;
  mult %= p;
  if (mult == 0) throw DomainError("cx_b multiplier must be nonzero mod P");
  const std::size_t width = controls.size();
  if (std::pow(static_cast<double>(p), static_cast<double>(width)) > 1.8e19) {
    throw UsageError("cx_b_measure_targets: block too wide");
  }

  // Group terms by their control / target block, keyed base P.
  auto key = [&](std::span<const std::uint8_t> row, std::span<const std::size_t> idx) {
    std::uint64_t k = 0;
    for (auto q : idx) k = k * p + row[q];
    return k;
  };
  struct Group {
    double weight = 0.0;
    std::vector<std::size_t> terms;
  };
  std::map<std::uint64_t, Group> ga, gb;
  for (std::size_t t = 0; t < a.num_terms(); ++t) {
    auto& g = ga[key(a.digits(t), controls)];
    g.weight += std::norm(a.amps_[t]);
    g.terms.push_back(t);
  }
  for (std::size_t t = 0; t < b.num_terms(); ++t) {
    auto& g = gb[key(b.digits(t), targets)];
    g.weight += std::norm(b.amps_[t]);
    g.terms.push_back(t);
  }
  auto unpack = [&](std::uint64_t k) {
    std::vector<unsigned> v(width);
    for (std::size_t i = width; i-- > 0;) {
      v[i] = static_cast<unsigned>(k % p);
      k /= p;
    }
    return v;
  };
  auto pack = [&](const std::vector<unsigned>& v) {
    std::uint64_t k = 0;
    for (auto d : v) k = k * p + d;
    return k;
  };
  // Outcome y = x + mult * z, component-wise (|V>|W> -> |V>|V + bW>).
  std::map<std::uint64_t, double> law;
  for (const auto& [kx, gx] : ga) {
    const auto x = unpack(kx);
    for (const auto& [kz, gz] : gb) {
      auto z = unpack(kz);
      for (std::size_t i = 0; i < width; ++i) z[i] = (x[i] + mult * z[i]) % p;
      law[pack(z)] += gx.weight * gz.weight;
    }
  }
  double total = 0.0;
  for (const auto& [k, w] : law) total += w;
  std::uniform_real_distribution<double> u(0.0, total);
  double r = u(rng);
  std::uint64_t ky = law.rbegin()->first;
  for (const auto& [k, w] : law) {
    if (r < w) {
      ky = k;
      break;
    }
    r -= w;
  }
  outcome = unpack(ky);

  const unsigned inv = mod_inverse(mult, p);
  std::vector<bool> is_target(b.n_, false);
  for (auto t : targets) is_target[t] = true;
  SparseState out(p, std::min(a.budget_, b.budget_));
  out.n_ = a.n_ + b.n_ - width;
  out.amps_.clear();
  std::size_t count = 0;
  std::vector<std::pair<const Group*, const Group*>> pairs;
  for (const auto& [kx, gx] : ga) {
    const auto x = unpack(kx);
    std::vector<unsigned> z(width);
    for (std::size_t i = 0; i < width; ++i) z[i] = (outcome[i] + p - x[i]) % p * inv % p;
    auto it = gb.find(pack(z));
    if (it == gb.end()) continue;
    pairs.push_back({&gx, &it->second});
    count += gx.terms.size() * it->second.terms.size();
  }
  out.check_budget(count, "cx_b_measure_targets");
  out.amps_.reserve(count);
  out.digits_.reserve(count * out.n_);
  for (const auto& [gx, gz] : pairs) {
    for (auto ta : gx->terms) {
      auto da = a.digits(ta);
      for (auto tb : gz->terms) {
        auto db = b.digits(tb);
        out.digits_.insert(out.digits_.end(), da.begin(), da.end());
        for (std::size_t q = 0; q < b.n_; ++q) {
          if (!is_target[q]) out.digits_.push_back(db[q]);
        }
        out.amps_.push_back(a.amps_[ta] * b.amps_[tb]);
      }
    }
  }
  out.renormalize();
  return out;
}

double SparseState::fidelity(const SparseState& other) const {
  if (other.n_ != n_ || other.dim_ != dim_) throw UsageError("fidelity of mismatched states");
  std::unordered_map<std::string, Amp> index;
  index.reserve(other.num_terms());
  for (std::size_t t = 0; t < other.num_terms(); ++t) index.emplace(key_of(other.digits(t)), other.amps_[t]);
  Amp overlap{};
  for (std::size_t t = 0; t < num_terms(); ++t) {
    auto it = index.find(key_of(digits(t)));
    if (it != index.end()) overlap += std::conj(amps_[t]) * it->second;
  }
  return std::norm(overlap);
}

void SparseState::dump(std::ostream& out) const {
  std::vector<std::size_t> order(num_terms());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto da = digits(a);
    auto db = digits(b);
    return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
  });
  for (std::size_t t : order) {
    auto d = digits(t);
    for (std::size_t q = 0; q < d.size(); ++q) {
      if (q) out << ',';
      out << static_cast<unsigned>(d[q]);
    }
    out << '\t' << amps_[t].real() << '\t' << amps_[t].imag() << '\n';
  }
}

std::string SparseState::dump_string() const {
  std::ostringstream os;
  os.precision(12);
  dump(os);
  return os.str();
}

}  // namespace qba

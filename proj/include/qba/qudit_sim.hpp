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

// Sparse state vectors over registers of prime-dimension qupits.
//
// Terms are stored structure-of-arrays: digits_ holds num_terms() rows of
// num_qupits() residues, amps_ the matching amplitudes. Every gate except the
// Fourier transform (and the encoder isometry) is a basis permutation, so the
// term count only grows at those two places and only shrinks at measurement.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qba {

using Amp = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr std::size_t kDefaultTermBudget = 10'000'000;
// Amplitudes with magnitude below this are dropped after Fourier transforms.
inline constexpr double kPruneThreshold = 1e-12;
inline constexpr double kNormTolerance = 1e-9;

bool is_prime(unsigned n);
unsigned mod_inverse(unsigned a, unsigned p);

class SparseState {
 public:
  // A zero-qupit state holding the single empty term with amplitude 1.
  explicit SparseState(unsigned dim, std::size_t term_budget = kDefaultTermBudget);

  static SparseState basis(unsigned dim, std::span<const unsigned> values,
                           std::size_t term_budget = kDefaultTermBudget);
  // (1/sqrt(n)) sum_{i<n} |i> on one qupit; requires n < dim.
  static SparseState phi(unsigned n, unsigned dim, std::size_t term_budget = kDefaultTermBudget);
  // Normalizes the supplied terms; duplicate tuples are summed.
  static SparseState from_terms(unsigned dim, std::size_t num_qupits,
                                const std::vector<std::pair<std::vector<std::uint8_t>, Amp>>& terms,
                                std::size_t term_budget = kDefaultTermBudget);

  unsigned dim() const { return dim_; }
  std::size_t num_qupits() const { return n_; }
  std::size_t num_terms() const { return amps_.size(); }
  std::size_t term_budget() const { return budget_; }
  void set_term_budget(std::size_t budget) { budget_ = budget; }

  std::span<const std::uint8_t> digits(std::size_t term) const {
    return {digits_.data() + term * n_, n_};
  }
  Amp amplitude(std::size_t term) const { return amps_[term]; }
  std::span<const Amp> amplitudes() const { return amps_; }
  // Amplitude on a basis tuple, zero when absent.
  Amp amplitude_of(std::span<const std::uint8_t> tuple) const;
  double norm_sq() const;

  // |v> -> |v + c mod P> on target.
  void add_const(std::size_t target, unsigned c);
  // |V>|W> -> |V>|V + b W mod P>; b must be nonzero.
  void cx_b(std::size_t control, std::size_t target, unsigned b);
  // Exact inverse of cx_b: |V>|W> -> |V>|(W - V) b^-1 mod P>.
  void cx_b_inverse(std::size_t control, std::size_t target, unsigned b);
  // |a> -> P^-1/2 sum_b w^{ab} |b>, w = exp(2 pi i / P); conjugate when inverse.
  void fourier(std::size_t target, bool inverse);
  // Generalized Pauli X^x Z^z: |v> -> w^{z v} |v + x>.
  void pauli(std::size_t target, unsigned x_power, unsigned z_power);

  // Born-rule sample of target; collapses and renormalizes. With remove the
  // measured qupit is factored out of the register.
  unsigned measure(std::size_t target, Rng& rng, bool remove = false);
  // Outcome distribution of target without collapsing.
  std::vector<double> probabilities(std::size_t target) const;
  // Drops a qupit that holds a definite value in every term.
  void remove_qupit(std::size_t target);
  // The value target holds in every term, if it has one.
  std::optional<unsigned> definite_value(std::size_t target) const;

  // Replaces qupit target by codewords: logical value a maps to the uniform
  // superposition over codebook[a], each entry `width` residues long. All
  // codebooks must have the same size and be pairwise disjoint.
  void encode(std::size_t target, const std::vector<std::vector<std::uint8_t>>& codebook,
              std::size_t width);

  friend SparseState tensor(const SparseState& a, const SparseState& b);
  friend SparseState cx_b_measure_targets(const SparseState& a, std::span<const std::size_t> controls,
                                          const SparseState& b, std::span<const std::size_t> targets,
                                          unsigned mult, Rng& rng, std::vector<unsigned>& outcome);

  // |<this|other>|^2; both states must have the same shape.
  double fidelity(const SparseState& other) const;

  // One line per term: comma-separated digits TAB re TAB im, sorted by tuple.
  void dump(std::ostream& out) const;
  std::string dump_string() const;

 private:
  void check_index(std::size_t q) const;
  void check_budget(std::size_t terms, const char* op) const;
  void check_residue(unsigned v, const char* what) const;
  void renormalize();

  unsigned dim_;
  std::size_t n_ = 0;
  std::size_t budget_;
  std::vector<std::uint8_t> digits_;
  std::vector<Amp> amps_;
};

SparseState tensor(const SparseState& a, const SparseState& b);

// Equivalent to tensor(a, b), cx_b(controls[q], targets[q], mult) for every q,
// then measuring and removing every target -- without building the product.
// CX is a basis permutation, so the outcome law is the convolution of the
// control and target marginals and only terms consistent with the sampled
// outcome are ever formed. Result qupits: a's, then b's minus the targets.
SparseState cx_b_measure_targets(const SparseState& a, std::span<const std::size_t> controls,
                                 const SparseState& b, std::span<const std::size_t> targets,
                                 unsigned mult, Rng& rng, std::vector<unsigned>& outcome);

}  // namespace qba

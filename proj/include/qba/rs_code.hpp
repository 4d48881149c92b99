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

// Polynomial (Reed-Solomon) code over Z_P used for both sharing levels. A
// logical value a is carried as f(0) for polynomials f of degree <= t; the
// codeword is (f(p_1), ..., f(p_N)) at evaluation points p_i = i.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qba {

using Codeword = std::vector<std::uint8_t>;

class RSCode {
 public:
  RSCode(unsigned n, unsigned p, unsigned t);
  // Degree bound t = floor((N - 1) / 3).
  static RSCode standard(unsigned n, unsigned p);

  unsigned length() const { return n_; }
  unsigned prime() const { return p_; }
  unsigned degree() const { return t_; }
  const std::vector<unsigned>& points() const { return points_; }

  // f(x) for coefficients c (c[0] = f(0)).
  unsigned eval(std::span<const unsigned> coeffs, unsigned x) const;
  // Codeword of the polynomial with f(0) = secret and higher coefficients `rest`
  // (length t).
  Codeword codeword(unsigned secret, std::span<const unsigned> rest) const;
  // All P^t codewords carrying `secret`, in lexicographic order of `rest`.
  std::vector<Codeword> codewords(unsigned secret) const;
  // codewords(a) for a = 0..P-1, the layout SparseState::encode expects.
  std::vector<std::vector<std::uint8_t>> codebook() const;

  // Values agree with a polynomial of degree <= t at every position.
  bool is_codeword(std::span<const std::uint8_t> values) const;
  // Membership in the dual of the secret-zero subcode: sum_i y_i p_i^e = 0 for
  // e = 1..t. This is the support of the Fourier transform of any encoded
  // basis state.
  bool in_dual_of_zero_code(std::span<const std::uint8_t> values) const;

  // Interpolates f(0) from the known positions (nullopt entries are erasures).
  // Succeeds iff at least t+1 positions are known and, after discarding at
  // most max_errors of them, the rest lie on one polynomial of degree <= t.
  std::optional<unsigned> decode(std::span<const std::optional<unsigned>> values,
                                 unsigned max_errors = 0) const;
  std::optional<unsigned> decode(std::span<const std::uint8_t> values) const;
  // Same, returning f(0) followed by the corrected symbol at every position.
  std::optional<std::vector<unsigned>> decode_word(std::span<const std::optional<unsigned>> values,
                                                   unsigned max_errors = 0) const;

 private:
  // Lagrange interpolation through (xs, ys) evaluated at x.
  unsigned interpolate(std::span<const unsigned> xs, std::span<const unsigned> ys,
                       unsigned x) const;

  unsigned n_, p_, t_;
  std::vector<unsigned> points_;
};

}  // namespace qba

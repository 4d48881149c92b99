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

#include "qba/rs_code.hpp"

#include <string>

#include "qba/errors.hpp"
#include "qba/qudit_sim.hpp"

namespace qba {

RSCode::RSCode(unsigned n, unsigned p, unsigned t) : n_(n), p_(p), t_(t) {
  if (!is_prime(p)) throw ConfigError("code alphabet " + std::to_string(p) + " is not prime");
  if (n == 0 || n >= p) throw ConfigError("code length must satisfy 0 < N < P");
  if (t >= n) throw ConfigError("degree bound must be below the code length");
  if (p > 255) throw ConfigError("alphabet too large for 8-bit digits");
  for (unsigned i = 1; i <= n; ++i) points_.push_back(i);
}

RSCode RSCode::standard(unsigned n, unsigned p) { return RSCode(n, p, (n - 1) / 3); }

unsigned RSCode::eval(std::span<const unsigned> coeffs, unsigned x) const {
  unsigned acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % p_;
  return acc;
}

Codeword RSCode::codeword(unsigned secret, std::span<const unsigned> rest) const {
  if (secret >= p_) throw DomainError("secret outside Z_P");
  if (rest.size() != t_) throw DomainError("expected t higher coefficients");
  std::vector<unsigned> coeffs{secret};
  coeffs.insert(coeffs.end(), rest.begin(), rest.end());
  Codeword w(n_);
  for (unsigned i = 0; i < n_; ++i) w[i] = static_cast<std::uint8_t>(eval(coeffs, points_[i]));
  return w;
}

std::vector<Codeword> RSCode::codewords(unsigned secret) const {
  std::vector<Codeword> out;
  std::vector<unsigned> rest(t_, 0);
  while (true) {
    out.push_back(codeword(secret, rest));
    // Odometer with the last coefficient fastest.
    std::size_t i = t_;
    while (i > 0) {
      if (++rest[i - 1] < p_) break;
      rest[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> RSCode::codebook() const {
  std::vector<std::vector<std::uint8_t>> book;
  for (unsigned a = 0; a < p_; ++a) {
    std::vector<std::uint8_t> flat;
    for (const auto& w : codewords(a)) flat.insert(flat.end(), w.begin(), w.end());
    book.push_back(std::move(flat));
  }
  return book;
}

unsigned RSCode::interpolate(std::span<const unsigned> xs, std::span<const unsigned> ys,
                             unsigned x) const {
  unsigned acc = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    unsigned num = 1, den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      num = num * ((x + p_ - xs[j]) % p_) % p_;
      den = den * ((xs[i] + p_ - xs[j]) % p_) % p_;
    }
    acc = (acc + ys[i] * num % p_ * mod_inverse(den, p_)) % p_;
  }
  return acc;
}

bool RSCode::is_codeword(std::span<const std::uint8_t> values) const {
  if (values.size() != n_) throw DomainError("word length differs from code length");
  std::vector<std::optional<unsigned>> v(values.begin(), values.end());
  return decode(v, 0).has_value();
}

bool RSCode::in_dual_of_zero_code(std::span<const std::uint8_t> values) const {
  if (values.size() != n_) throw DomainError("word length differs from code length");
  for (unsigned e = 1; e <= t_; ++e) {
    unsigned acc = 0;
    for (unsigned i = 0; i < n_; ++i) {
      unsigned pw = 1;
      for (unsigned r = 0; r < e; ++r) pw = pw * points_[i] % p_;
      acc = (acc + values[i] * pw) % p_;
    }
    if (acc != 0) return false;
  }
  return true;
}

std::optional<std::vector<unsigned>> RSCode::decode_word(
    std::span<const std::optional<unsigned>> values, unsigned max_errors) const {
  if (values.size() != n_) throw DomainError("word length differs from code length");
  std::vector<unsigned> xs, ys;
  for (unsigned i = 0; i < n_; ++i) {
    if (!values[i]) continue;
    if (*values[i] >= p_) throw DomainError("symbol outside Z_P");
    xs.push_back(points_[i]);
    ys.push_back(*values[i]);
  }
  const std::size_t m = xs.size();
  if (m < t_ + 1) return std::nullopt;

  // Try every (t+1)-subset as the interpolation basis; small N only.
  std::vector<std::size_t> pick(t_ + 1);
  for (std::size_t i = 0; i <= t_; ++i) pick[i] = i;
  std::vector<unsigned> bx(t_ + 1), by(t_ + 1);
  while (true) {
    for (std::size_t i = 0; i <= t_; ++i) {
      bx[i] = xs[pick[i]];
      by[i] = ys[pick[i]];
    }
    unsigned errors = 0;
    for (std::size_t i = 0; i < m && errors <= max_errors; ++i) {
      if (interpolate(bx, by, xs[i]) != ys[i]) ++errors;
    }
    if (errors <= max_errors) {
      std::vector<unsigned> word(n_ + 1);
      word[0] = interpolate(bx, by, 0);
      for (unsigned i = 0; i < n_; ++i) word[i + 1] = interpolate(bx, by, points_[i]);
      return word;
    }
    if (max_errors == 0) return std::nullopt;  // any basis gives the same answer

    std::size_t i = t_ + 1;
    while (i > 0 && pick[i - 1] == m - (t_ + 1) + (i - 1)) --i;
    if (i == 0) return std::nullopt;
    ++pick[i - 1];
    for (std::size_t j = i; j <= t_; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::optional<unsigned> RSCode::decode(std::span<const std::optional<unsigned>> values,
                                       unsigned max_errors) const {
  const auto word = decode_word(values, max_errors);
  if (!word) return std::nullopt;
  return (*word)[0];
}

std::optional<unsigned> RSCode::decode(std::span<const std::uint8_t> values) const {
  std::vector<std::optional<unsigned>> v(values.begin(), values.end());
  return decode(v, 0);
}

}  // namespace qba

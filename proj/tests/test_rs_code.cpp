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

#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>

#include "oracles.hpp"
#include "qba/errors.hpp"
#include "qba/rs_code.hpp"

using namespace qba;

TEST_CASE("codewords enumerate exactly the degree-t polynomials") {
  for (auto [n, p, t] : {std::tuple{5U, 7U, 1U}, std::tuple{4U, 5U, 1U}, std::tuple{2U, 3U, 0U}}) {
    const RSCode code(n, p, t);
    for (unsigned s = 0; s < p; ++s) {
      std::set<std::vector<unsigned>> want;
      for (const auto& w : oracle::shares_of(s, n, p, t)) want.insert(w);
      std::set<std::vector<unsigned>> got;
      for (const auto& w : code.codewords(s)) got.insert({w.begin(), w.end()});
      CHECK(got == want);
      CHECK(code.codewords(s).size() == want.size());
    }
  }
}

TEST_CASE("codebooks for different secrets are disjoint") {
  const RSCode code(5, 7, 1);
  const auto book = code.codebook();
  std::set<std::vector<std::uint8_t>> seen;
  std::size_t total = 0;
  for (const auto& words : book) {
    for (std::size_t i = 0; i < words.size(); i += 5) {
      seen.insert({words.begin() + i, words.begin() + i + 5});
      ++total;
    }
  }
  CHECK(seen.size() == total);
  CHECK(total == 49);
}

TEST_CASE("decoding corrects t errors and reports what it cannot") {
  const RSCode code(5, 7, 1);
  for (unsigned s = 0; s < 7; ++s) {
    for (const auto& w : oracle::shares_of(s, 5, 7, 1)) {
      std::vector<std::optional<unsigned>> word(w.begin(), w.end());
      CHECK(code.decode(word, 0) == s);
      for (unsigned pos = 0; pos < 5; ++pos) {
        auto bad = word;
        bad[pos] = (*bad[pos] + 3) % 7;
        CHECK_FALSE(code.decode(bad, 0).has_value());
        CHECK(code.decode(bad, 1) == s);
        const auto full = code.decode_word(bad, 1);
        REQUIRE(full.has_value());
        CHECK((*full)[pos + 1] == w[pos]);
      }
    }
  }
  std::vector<std::optional<unsigned>> too_few(5);
  too_few[0] = 1;
  CHECK_FALSE(code.decode(too_few, 0).has_value());
  std::vector<std::optional<unsigned>> out_of_range(5, 9U);
  CHECK_THROWS_AS(code.decode(out_of_range, 0), DomainError);
}

TEST_CASE("dual-of-zero-code membership matches its defining equations") {
  const RSCode code(5, 7, 1);
  unsigned members = 0;
  std::vector<std::uint8_t> y(5, 0);
  for (unsigned idx = 0; idx < 16807; ++idx) {
    unsigned v = idx, s = 0;
    for (unsigned i = 0; i < 5; ++i) {
      y[i] = static_cast<std::uint8_t>(v % 7);
      v /= 7;
      s += y[i] * (i + 1);
    }
    const bool want = s % 7 == 0;
    CHECK(code.in_dual_of_zero_code(y) == want);
    members += want;
  }
  CHECK(members == 2401);
}

TEST_CASE("standard code uses t = floor((N - 1) / 3)") {
  CHECK(RSCode::standard(5, 7).degree() == 1);
  CHECK(RSCode::standard(4, 5).degree() == 1);
  CHECK(RSCode::standard(7, 11).degree() == 2);
}

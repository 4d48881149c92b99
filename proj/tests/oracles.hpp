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

// Brute-force reference computations shared by the unit and acceptance
// tests. Nothing here calls into the library under test.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline unsigned mul_mod(unsigned a, unsigned b, unsigned p) { return (a * b) % p; }

inline unsigned inverse_mod(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x) {
    if ((a * x) % p == 1) return x;
  }
  return 0;
}

// Value of sum_i c_i x^i mod p.
inline unsigned poly_eval(const std::vector<unsigned>& c, unsigned x, unsigned p) {
  unsigned v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
  return v;
}

// All words (f(1), ..., f(n)) of polynomials of degree <= t with f(0) = s,
// enumerated by brute force over coefficient vectors.
inline std::vector<std::vector<unsigned>> shares_of(unsigned s, unsigned n, unsigned p,
                                                    unsigned t) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> rest(t, 0);
  while (true) {
    std::vector<unsigned> c{s};
    c.insert(c.end(), rest.begin(), rest.end());
    std::vector<unsigned> w;
    for (unsigned x = 1; x <= n; ++x) w.push_back(poly_eval(c, x, p));
    out.push_back(w);
    std::size_t i = 0;
    while (i < t && ++rest[i] == p) rest[i++] = 0;
    if (i == t) break;
  }
  return out;
}

// Probability that an honest coin flip yields r = 0 when nobody is flagged.
//
// The dealer picks a uniform in 0..N-1 and a degree-t polynomial f with
// f(0) = a; origin j then shares f(j) with a uniform degree-t polynomial g_j.
// Holder h reads g_j(h) for every origin j, and the coin is 0 iff some holder
// h has sum_j g_j(h) = 0 (mod N) with the sum taken over integers in 0..P-1.
// Enumerates every f and every tuple (g_1..g_N) exactly.
inline double coin_zero_probability(unsigned n, unsigned p, unsigned t) {
  // Distribution of each origin's share vector given its secret, as a list
  // of equally likely words.
  std::vector<std::vector<std::vector<unsigned>>> words(p);
  for (unsigned s = 0; s < p; ++s) words[s] = shares_of(s, n, p, t);

  double zero = 0.0, total = 0.0;
  for (unsigned a = 0; a < n; ++a) {
    for (const auto& level1 : shares_of(a, n, p, t)) {
      // Convolve the per-holder integer sums over origins: state = vector of
      // partial sums mod N for every holder.
      std::map<std::vector<unsigned>, double> dist{{std::vector<unsigned>(n, 0), 1.0}};
      for (unsigned j = 0; j < n; ++j) {
        const auto& options = words[level1[j]];
        const double w = 1.0 / options.size();
        std::map<std::vector<unsigned>, double> next;
        for (const auto& [partial, prob] : dist) {
          for (const auto& g : options) {
            std::vector<unsigned> s = partial;
            for (unsigned h = 0; h < n; ++h) s[h] = (s[h] + g[h]) % n;
            next[s] += prob * w;
          }
        }
        dist = std::move(next);
      }
      for (const auto& [sums, prob] : dist) {
        bool any = false;
        for (unsigned h = 0; h < n; ++h) any = any || sums[h] == 0;
        if (any) zero += prob;
        total += prob;
      }
    }
  }
  return zero / total;
}

// Closed form for independent uniform residues mod P folded into a sum mod N
// over m origins: P(sum = 0 mod N).
inline double uniform_fold_zero(unsigned m, unsigned p, unsigned n) {
  std::vector<double> dist(n, 0.0);
  dist[0] = 1.0;
  for (unsigned j = 0; j < m; ++j) {
    std::vector<double> next(n, 0.0);
    for (unsigned r = 0; r < n; ++r) {
      for (unsigned v = 0; v < p; ++v) next[(r + v) % n] += dist[r] / p;
    }
    dist = next;
  }
  return dist[0];
}

}  // namespace oracle

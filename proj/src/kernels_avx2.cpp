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

#include "qba/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define QBA_HAVE_X86 1
#define QBA_AVX2 __attribute__((target("avx2,fma")))
#else
#define QBA_HAVE_X86 0
#define QBA_AVX2
#endif

namespace qba::kernels::avx2 {

#if QBA_HAVE_X86

bool supported() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}

namespace {

// Squared components of amps[i], amps[i+1] as (r0^2, i0^2, r1^2, i1^2).
QBA_AVX2 inline __m256d load_sq2(const Amp* p) {
  const __m256d v = _mm256_loadu_pd(reinterpret_cast<const double*>(p));
  return _mm256_mul_pd(v, v);
}

// |amps[i..i+3]|^2 in order.
QBA_AVX2 inline __m256d norms4(const Amp* p) {
  const __m256d lo = load_sq2(p);
  const __m256d hi = load_sq2(p + 2);
  // hadd gives (n0, n2, n1, n3); restore order.
  const __m256d h = _mm256_hadd_pd(lo, hi);
  return _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
}

}  // namespace

QBA_AVX2 double norm_sq(std::span<const Amp> amps) {
  const double* d = reinterpret_cast<const double*>(amps.data());
  const std::size_t n = amps.size() * 2;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(d + i);
    const __m256d b = _mm256_loadu_pd(d + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(d + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) acc += d[i] * d[i];
  return acc;
}

QBA_AVX2 void scale(std::span<Amp> amps, double factor) {
  double* d = reinterpret_cast<double*>(amps.data());
  const std::size_t n = amps.size() * 2;
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), f));
  }
  for (; i < n; ++i) d[i] *= factor;
}

QBA_AVX2 void bucket_norm_sq(std::span<const Amp> amps, std::span<const std::uint8_t> digits,
                             std::size_t stride, std::size_t offset,
                             std::span<double> buckets) {
  const std::size_t n = amps.size();
  alignas(32) double lanes[4];
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_store_pd(lanes, norms4(amps.data() + i));
    for (std::size_t l = 0; l < 4; ++l) {
      buckets[digits[(i + l) * stride + offset]] += lanes[l];
    }
  }
  for (; i < n; ++i) buckets[digits[i * stride + offset]] += std::norm(amps[i]);
}

QBA_AVX2 std::size_t mark_significant(std::span<const Amp> amps, double threshold_sq,
                                      std::span<std::uint8_t> keep) {
  const std::size_t n = amps.size();
  const __m256d thr = _mm256_set1_pd(threshold_sq);
  std::size_t kept = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ge = _mm256_cmp_pd(norms4(amps.data() + i), thr, _CMP_GE_OQ);
    const int mask = _mm256_movemask_pd(ge);
    for (int l = 0; l < 4; ++l) keep[i + l] = static_cast<std::uint8_t>((mask >> l) & 1);
    kept += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
    const bool k = std::norm(amps[i]) >= threshold_sq;
    keep[i] = k ? 1 : 0;
    kept += k;
  }
  return kept;
}

#else

bool supported() { return false; }
double norm_sq(std::span<const Amp> amps) { return scalar::norm_sq(amps); }
void scale(std::span<Amp> amps, double factor) { scalar::scale(amps, factor); }
void bucket_norm_sq(std::span<const Amp> amps, std::span<const std::uint8_t> digits,
                    std::size_t stride, std::size_t offset, std::span<double> buckets) {
  scalar::bucket_norm_sq(amps, digits, stride, offset, buckets);
}
std::size_t mark_significant(std::span<const Amp> amps, double threshold_sq,
                             std::span<std::uint8_t> keep) {
  return scalar::mark_significant(amps, threshold_sq, keep);
}

#endif

}  // namespace qba::kernels::avx2

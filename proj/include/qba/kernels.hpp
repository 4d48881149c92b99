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

// Data-parallel inner loops over amplitude arrays. Every kernel has a scalar
// reference implementation and optional AVX2 / NEON variants; the variant is
// picked once at runtime from CPU capabilities. Set QBA_FORCE_SCALAR=1 in the
// environment to pin the scalar path.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace qba::kernels {

using Amp = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // Sum of |a|^2.
  double (*norm_sq)(std::span<const Amp> amps);
  // a *= factor for every entry.
  void (*scale)(std::span<Amp> amps, double factor);
  // buckets[digits[i * stride + offset]] += |amps[i]|^2. Digits must index
  // into buckets.
  void (*bucket_norm_sq)(std::span<const Amp> amps, std::span<const std::uint8_t> digits,
                         std::size_t stride, std::size_t offset, std::span<double> buckets);
  // Writes keep[i] = (|amps[i]|^2 >= threshold_sq) and returns the count kept.
  std::size_t (*mark_significant)(std::span<const Amp> amps, double threshold_sq,
                                  std::span<std::uint8_t> keep);
};

namespace scalar {
double norm_sq(std::span<const Amp> amps);
void scale(std::span<Amp> amps, double factor);
void bucket_norm_sq(std::span<const Amp> amps, std::span<const std::uint8_t> digits,
                    std::size_t stride, std::size_t offset, std::span<double> buckets);
std::size_t mark_significant(std::span<const Amp> amps, double threshold_sq,
                             std::span<std::uint8_t> keep);
}  // namespace scalar

namespace avx2 {
bool supported();
double norm_sq(std::span<const Amp> amps);
void scale(std::span<Amp> amps, double factor);
void bucket_norm_sq(std::span<const Amp> amps, std::span<const std::uint8_t> digits,
                    std::size_t stride, std::size_t offset, std::span<double> buckets);
std::size_t mark_significant(std::span<const Amp> amps, double threshold_sq,
                             std::span<std::uint8_t> keep);
}  // namespace avx2

const KernelTable& scalar_table();
// Null when the ISA is not compiled in or not supported by this CPU.
const KernelTable* table_for(Isa isa);
// The table selected for this process.
const KernelTable& active();

}  // namespace qba::kernels

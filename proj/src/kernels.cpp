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

#include <cstdlib>
#include <cstring>

namespace qba::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

namespace scalar {

double norm_sq(std::span<const Amp> amps) {
  double acc = 0.0;
  for (const Amp& a : amps) acc += std::norm(a);
  return acc;
}

void scale(std::span<Amp> amps, double factor) {
  for (Amp& a : amps) a *= factor;
}

void bucket_norm_sq(std::span<const Amp> amps, std::span<const std::uint8_t> digits,
                    std::size_t stride, std::size_t offset, std::span<double> buckets) {
  for (std::size_t i = 0; i < amps.size(); ++i) {
    buckets[digits[i * stride + offset]] += std::norm(amps[i]);
  }
}

std::size_t mark_significant(std::span<const Amp> amps, double threshold_sq,
                             std::span<std::uint8_t> keep) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool k = std::norm(amps[i]) >= threshold_sq;
    keep[i] = k ? 1 : 0;
    kept += k;
  }
  return kept;
}

}  // namespace scalar

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::Scalar, &scalar::norm_sq, &scalar::scale,
                             &scalar::bucket_norm_sq, &scalar::mark_significant};
  return t;
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &scalar_table();
    case Isa::Avx2: {
      if (!avx2::supported()) return nullptr;
      static const KernelTable t{Isa::Avx2, &avx2::norm_sq, &avx2::scale,
                                 &avx2::bucket_norm_sq, &avx2::mark_significant};
      return &t;
    }
    case Isa::Neon:
      // No NEON build in this tree yet; aarch64 hosts run the scalar table.
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* force = std::getenv("QBA_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "0") != 0 && force[0] != '\0') {
      return scalar_table();
    }
    if (const KernelTable* t = table_for(Isa::Avx2)) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace qba::kernels

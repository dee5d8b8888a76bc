// Copyright 2026 The ecftmf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

/// Dense double-precision inner-loop kernels.
///
/// Every kernel has a scalar reference implementation and, where the target
/// architecture allows, a SIMD variant (AVX2+FMA on x86-64, NEON on aarch64).
/// The variant is chosen once at first use from the running CPU and can be
/// overridden with force_isa(). SIMD variants reassociate sums, so results
/// agree with the scalar reference to rounding, not bitwise.
namespace ecftmf::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// Parses "scalar", "avx2" or "neon". Throws ValidationError otherwise.
Isa parse_isa(std::string_view name);

/// Best ISA supported by both this build and the running CPU.
Isa detect_isa() noexcept;

/// ISA currently backing the dispatched kernels.
Isa active_isa() noexcept;

/// Whether this build carries a variant for `isa` and the CPU can run it.
bool isa_available(Isa isa) noexcept;

/// Pins the dispatched kernels to `isa`. Throws ValidationError if the ISA
/// is not available.
void force_isa(Isa isa);

/// Raw kernel entry points for one ISA.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = a - b
  void (*subtract)(const double* a, const double* b, double* out, std::size_t n);
  // sum of squares of a
  double (*squared_norm)(const double* a, std::size_t n);
};

/// Kernel table for a specific ISA, for equivalence testing. Throws
/// ValidationError if the ISA is not available.
const KernelTable& kernels_for(Isa isa);

// Dispatched entry points. Span lengths must agree (checked).
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void subtract(std::span<const double> a, std::span<const double> b, std::span<double> out);
double squared_norm(std::span<const double> a);

}  // namespace ecftmf::simd

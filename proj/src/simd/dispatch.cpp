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

#include <atomic>
#include <string>

#include "ecftmf/error.hpp"
#include "simd/kernels_impl.hpp"

namespace ecftmf::simd {
namespace {

constexpr KernelTable kScalar{detail::scalar::dot, detail::scalar::axpy, detail::scalar::subtract,
                              detail::scalar::squared_norm};
#if defined(ECFTMF_HAVE_AVX2)
constexpr KernelTable kAvx2{detail::avx2::dot, detail::avx2::axpy, detail::avx2::subtract,
                            detail::avx2::squared_norm};
#endif
#if defined(ECFTMF_HAVE_NEON)
constexpr KernelTable kNeon{detail::neon::dot, detail::neon::axpy, detail::neon::subtract,
                            detail::neon::squared_norm};
#endif

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(ECFTMF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(ECFTMF_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* table_ptr(Isa isa) noexcept {
  switch (isa) {
#if defined(ECFTMF_HAVE_AVX2)
    case Isa::avx2:
      return &kAvx2;
#endif
#if defined(ECFTMF_HAVE_NEON)
    case Isa::neon:
      return &kNeon;
#endif
    default:
      return &kScalar;
  }
}

struct Active {
  std::atomic<const KernelTable*> table{nullptr};
  std::atomic<Isa> isa{Isa::scalar};
};

Active& active() {
  static Active state;
  return state;
}

const KernelTable& current() {
  auto& state = active();
  const KernelTable* t = state.table.load(std::memory_order_acquire);
  if (t == nullptr) {
    Isa isa = detect_isa();
    state.isa.store(isa, std::memory_order_relaxed);
    t = table_ptr(isa);
    state.table.store(t, std::memory_order_release);
  }
  return *t;
}

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  throw ValidationError("unknown ISA '" + std::string(name) + "'", "isa");
}

bool isa_available(Isa isa) noexcept { return cpu_supports(isa); }

Isa detect_isa() noexcept {
  if (cpu_supports(Isa::avx2)) return Isa::avx2;
  if (cpu_supports(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() noexcept {
  (void)current();
  return active().isa.load(std::memory_order_relaxed);
}

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw ValidationError("ISA '" + std::string(isa_name(isa)) + "' is not available on this machine",
                          "isa");
  }
  auto& state = active();
  state.isa.store(isa, std::memory_order_relaxed);
  state.table.store(table_ptr(isa), std::memory_order_release);
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw ValidationError("ISA '" + std::string(isa_name(isa)) + "' is not available on this machine",
                          "isa");
  }
  return *table_ptr(isa);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size(), "dot");
  return current().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same(x.size(), y.size(), "axpy");
  current().axpy(alpha, x.data(), y.data(), x.size());
}

void subtract(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_same(a.size(), b.size(), "subtract");
  check_same(a.size(), out.size(), "subtract");
  current().subtract(a.data(), b.data(), out.data(), a.size());
}

double squared_norm(std::span<const double> a) { return current().squared_norm(a.data(), a.size()); }

}  // namespace ecftmf::simd

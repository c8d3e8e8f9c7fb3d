#include <atomic>

#include "vrope/error.hpp"
#include "vrope/kernels.hpp"

namespace vrope::simd {

#ifndef VROPE_BUILD_AVX2
namespace detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace detail
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(VROPE_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{&kernels_for(detect_isa())};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) throw ConfigError("kernel ISA not supported: " + std::string(isa_name(isa)));
  return isa == Isa::avx2 ? *detail::avx2_table() : scalar_kernels();
}

Isa detect_isa() noexcept {
  static const Isa detected = isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  return detected;
}

const KernelTable& active_kernels() noexcept { return *active_slot().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) { active_slot().store(&kernels_for(isa), std::memory_order_release); }

void rotate(std::span<const double> x, std::span<const double> cos, std::span<const double> sin,
            std::span<double> out) {
  active_kernels().rotate(x.data(), cos.data(), sin.data(), out.data(), cos.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

double rotated_dot(std::span<const double> q, std::span<const double> x, std::span<const double> cos,
                   std::span<const double> sin) {
  return active_kernels().rotated_dot(q.data(), x.data(), cos.data(), sin.data(), cos.size());
}

}  // namespace vrope::simd

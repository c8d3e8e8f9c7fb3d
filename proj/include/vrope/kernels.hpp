#pragma once

// Pairwise-rotation kernels with a scalar reference and ISA-specific variants
// selected at runtime. Every variant must agree with the scalar reference to
// within rounding (reassociation and FMA contraction only).

#include <cstddef>
#include <span>
#include <string_view>

namespace vrope::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  /// out[2j] = x[2j] c_j - x[2j+1] s_j ; out[2j+1] = x[2j] s_j + x[2j+1] c_j
  void (*rotate)(const double* x, const double* cos, const double* sin, double* out, std::size_t pairs);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// dot(q, rotate(x, cos, sin)) without materializing the rotated vector.
  double (*rotated_dot)(const double* q, const double* x, const double* cos, const double* sin,
                        std::size_t pairs);
};

const KernelTable& scalar_kernels() noexcept;

/// True when the variant was compiled in and the running CPU supports it.
bool isa_supported(Isa isa) noexcept;

/// Throws ConfigError if the ISA is unsupported here.
const KernelTable& kernels_for(Isa isa);

/// Best supported ISA, detected once.
Isa detect_isa() noexcept;

const KernelTable& active_kernels() noexcept;

/// Overrides the dispatcher (tests, benchmarking). Throws ConfigError if unsupported.
void set_active_isa(Isa isa);

// Span front-ends over the active table. Sizes are checked by the callers in
// rotary.cpp; these assume x.size() == 2 * cos.size() == 2 * sin.size().
void rotate(std::span<const double> x, std::span<const double> cos, std::span<const double> sin,
            std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double rotated_dot(std::span<const double> q, std::span<const double> x, std::span<const double> cos,
                   std::span<const double> sin);

namespace detail {
const KernelTable* avx2_table() noexcept;
}

}  // namespace vrope::simd

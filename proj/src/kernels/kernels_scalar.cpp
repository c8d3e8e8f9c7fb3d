#include "vrope/kernels.hpp"

namespace vrope::simd {
namespace {

void rotate_scalar(const double* x, const double* cos, const double* sin, double* out, std::size_t pairs) {
  for (std::size_t j = 0; j < pairs; ++j) {
    const double a = x[2 * j];
    const double b = x[2 * j + 1];
    out[2 * j] = a * cos[j] - b * sin[j];
    out[2 * j + 1] = a * sin[j] + b * cos[j];
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double rotated_dot_scalar(const double* q, const double* x, const double* cos, const double* sin,
                          std::size_t pairs) {
  double sum = 0.0;
  for (std::size_t j = 0; j < pairs; ++j) {
    const double a = x[2 * j];
    const double b = x[2 * j + 1];
    sum += q[2 * j] * (a * cos[j] - b * sin[j]) + q[2 * j + 1] * (a * sin[j] + b * cos[j]);
  }
  return sum;
}

constexpr KernelTable kScalar{Isa::scalar, &rotate_scalar, &dot_scalar, &rotated_dot_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace vrope::simd

#pragma once

#include <span>
#include <vector>

namespace vrope {

/// Per-pair rotation frequencies theta[j] = base^(-2j/d), j = 0..d/2-1.
class FrequencySchedule {
 public:
  /// Throws InvalidDimension for odd or d < 2, InvalidParameter for base <= 0.
  FrequencySchedule(double base, int d);

  double base() const noexcept { return base_; }
  int dim() const noexcept { return d_; }
  int pairs() const noexcept { return d_ / 2; }
  std::span<const double> theta() const noexcept { return theta_; }
  double operator[](int j) const { return theta_[static_cast<std::size_t>(j)]; }

 private:
  double base_;
  int d_;
  std::vector<double> theta_;
};

inline FrequencySchedule build_frequency_schedule(double base, int d) { return FrequencySchedule(base, d); }

// Vectors are plain d-length spans of doubles read as adjacent pairs
// (x[2j], x[2j+1]). Angles are one per pair; callers compute
// angles[j] = position(group(j)) * theta[j].

std::vector<double> rotate(std::span<const double> x, std::span<const double> angles);

/// dot(rotate(q, q_angles), rotate(k, k_angles)).
double attention_score(std::span<const double> q, std::span<const double> q_angles,
                       std::span<const double> k, std::span<const double> k_angles);

/// Complex-arithmetic evaluation of the same score, written independently of
/// the rotation kernels:
///   sum_j Re[(q_2j + i q_2j+1) conj(k_2j + i k_2j+1) exp(i (qpos_j - kpos_j) theta_j)].
/// Positions are given per pair.
double attention_score_oracle(std::span<const double> q, std::span<const double> q_positions,
                              std::span<const double> k, std::span<const double> k_positions,
                              const FrequencySchedule& schedule);

/// (2/d) * sum_j cos(delta[j] * theta[j]); equals E[score(x, x)] / d for x
/// with iid zero-mean unit-variance entries. Exactly 1 at delta = 0.
double expected_self_score(std::span<const double> delta, const FrequencySchedule& schedule);

}  // namespace vrope

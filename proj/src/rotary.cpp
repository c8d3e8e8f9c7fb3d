#include "vrope/rotary.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "vrope/error.hpp"
#include "vrope/kernels.hpp"

namespace vrope {
namespace {

void require_pairs(std::span<const double> x, std::size_t pairs, const char* what) {
  if (x.size() != 2 * pairs) {
    throw InvalidDimension(std::string(what) + ": vector length " + std::to_string(x.size()) +
                           " does not match " + std::to_string(pairs) + " pairs");
  }
}

struct Trig {
  std::vector<double> cos;
  std::vector<double> sin;
};

Trig trig_of(std::span<const double> angles) {
  Trig t{std::vector<double>(angles.size()), std::vector<double>(angles.size())};
  for (std::size_t j = 0; j < angles.size(); ++j) {
    t.cos[j] = std::cos(angles[j]);
    t.sin[j] = std::sin(angles[j]);
  }
  return t;
}

}  // namespace

FrequencySchedule::FrequencySchedule(double base, int d) : base_(base), d_(d) {
  if (d < 2 || d % 2 != 0) throw InvalidDimension("head dimension must be even and >= 2, got " + std::to_string(d));
  if (!(base > 0.0) || !std::isfinite(base)) throw InvalidParameter("base must be a positive finite number");
  theta_.resize(static_cast<std::size_t>(d / 2));
  theta_[0] = 1.0;
  for (int j = 1; j < d / 2; ++j) {
    theta_[static_cast<std::size_t>(j)] = std::pow(base, -2.0 * j / d);
  }
}

std::vector<double> rotate(std::span<const double> x, std::span<const double> angles) {
  require_pairs(x, angles.size(), "rotate");
  const Trig t = trig_of(angles);
  std::vector<double> out(x.size());
  simd::rotate(x, t.cos, t.sin, out);
  return out;
}

double attention_score(std::span<const double> q, std::span<const double> q_angles,
                       std::span<const double> k, std::span<const double> k_angles) {
  if (q_angles.size() != k_angles.size()) throw InvalidDimension("attention_score: angle counts differ");
  require_pairs(q, q_angles.size(), "attention_score(q)");
  require_pairs(k, k_angles.size(), "attention_score(k)");
  const std::vector<double> qr = rotate(q, q_angles);
  const std::vector<double> kr = rotate(k, k_angles);
  return simd::dot(qr, kr);
}

double attention_score_oracle(std::span<const double> q, std::span<const double> q_positions,
                              std::span<const double> k, std::span<const double> k_positions,
                              const FrequencySchedule& schedule) {
  const auto pairs = static_cast<std::size_t>(schedule.pairs());
  if (q_positions.size() != pairs || k_positions.size() != pairs) {
    throw InvalidDimension("attention_score_oracle: need one position per pair");
  }
  require_pairs(q, pairs, "attention_score_oracle(q)");
  require_pairs(k, pairs, "attention_score_oracle(k)");
  using C = std::complex<double>;
  double total = 0.0;
  for (std::size_t j = 0; j < pairs; ++j) {
    const C qj(q[2 * j], q[2 * j + 1]);
    const C kj(k[2 * j], k[2 * j + 1]);
    const C phase = std::polar(1.0, (q_positions[j] - k_positions[j]) * schedule.theta()[j]);
    total += (qj * std::conj(kj) * phase).real();
  }
  return total;
}

double expected_self_score(std::span<const double> delta, const FrequencySchedule& schedule) {
  if (delta.size() != static_cast<std::size_t>(schedule.pairs())) {
    throw InvalidDimension("expected_self_score: need one delta per pair");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) sum += std::cos(delta[j] * schedule.theta()[j]);
  return sum / static_cast<double>(delta.size());
}

}  // namespace vrope

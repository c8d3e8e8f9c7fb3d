#pragma once

// Test-only reference computations. These deliberately avoid the library's
// scheme/layout code paths: positions are written out from the coordinate
// formulas and scores are evaluated with std::complex.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline std::vector<double> theta(int d, double base) {
  std::vector<double> th(static_cast<std::size_t>(d / 2));
  for (int j = 0; j < d / 2; ++j) th[static_cast<std::size_t>(j)] = std::pow(base, -2.0 * j / d);
  return th;
}

/// Re of the mean of exp(i * delta_j * theta_j).
inline double expected_self(const std::vector<double>& delta, const std::vector<double>& th) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < th.size(); ++j) acc += std::exp(std::complex<double>(0.0, delta[j] * th[j]));
  return acc.real() / static_cast<double>(th.size());
}

inline std::array<std::int64_t, 4> vrope(int w, int h, int t, int W, int H, std::int64_t p) {
  const std::int64_t step = std::int64_t{t} * (H + W - 1);
  return {w + h + p + step, w - h + H - 1 + p + step, -w - h + H + W - 2 + p + step, -w + h + W - 1 + p + step};
}

/// Per-dim boundary gap of a vrope video followed by one text token, by
/// enumerating every video token.
inline std::array<std::int64_t, 4> vrope_gap(int W, int H, int T, std::int64_t p) {
  std::array<std::int64_t, 4> mx{INT64_MIN, INT64_MIN, INT64_MIN, INT64_MIN};
  for (int t = 0; t < T; ++t)
    for (int h = 0; h < H; ++h)
      for (int w = 0; w < W; ++w) {
        const auto v = vrope(w, h, t, W, H, p);
        for (int k = 0; k < 4; ++k) mx[static_cast<std::size_t>(k)] = std::max(mx[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)]);
      }
  const std::int64_t text = p + std::int64_t{T} * (H + W - 1);
  return {text - mx[0], text - mx[1], text - mx[2], text - mx[3]};
}

inline std::vector<double> normals(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace oracle

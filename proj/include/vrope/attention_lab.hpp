#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vrope/layout.hpp"
#include "vrope/schemes.hpp"

namespace vrope {

/// W x H grid of scores for one frame, stored row-major (h outer, w inner).
struct ScoreGrid {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  SchemeId scheme = SchemeId::rope1d;
  PositionVector query;
  int frame = 0;
  int d = 0;
  double base = 0.0;

  double at(int w, int h) const { return values[static_cast<std::size_t>(h) * width + w]; }
  double& at(int w, int h) { return values[static_cast<std::size_t>(h) * width + w]; }
};

struct DecayPoint {
  int delta = 0;
  double value = 0.0;
};

using DecayCurve = std::vector<DecayPoint>;

struct TrialConfig {
  std::uint64_t seed = 0;
  int trials = 1;
  int d = 64;
  double base = 10000.0;
  /// Worker threads for Monte-Carlo; 0 picks hardware concurrency. Results do
  /// not depend on this value.
  int threads = 0;
};

/// Closed-form expected self-score from `query` to every cell of `frame`,
/// where the video starts at p_start. Throws InvalidDimension if the query has
/// the wrong number of coordinates, InvalidCoordinate if the frame is out of range.
ScoreGrid heatmap(const SchemeConfig& scheme, const VideoGrid& grid, int frame, const PositionVector& query,
                  Position p_start = 0);

DecayCurve decay_curve(const FrequencySchedule& schedule, int max_delta);

struct BoundaryScores {
  SchemeId scheme = SchemeId::rope1d;
  double to_video = 0.0;
  /// Empty when no text precedes the query.
  std::optional<double> to_text;
  std::size_t video_keys = 0;
  std::size_t text_keys = 0;
};

/// Mean expected self-score from a post-video text token to every token of the
/// video right before it, and to every text token earlier in the layout. The
/// query is the `query_offset`-th token (0-based) of the first text segment
/// that follows a video. Returns nullopt when the layout has no video->text
/// boundary or the text segment is too short.
std::optional<BoundaryScores> boundary_score_table(const TokenLayout& layout, const SchemeConfig& scheme,
                                                   int query_offset = 0);

/// Monte-Carlo estimate of the heatmap: per cell, the mean over trials of
/// attention_score(x at query, x at cell) / d with x ~ N(0, I_d).
///
/// Trial r draws x from std::mt19937_64 seeded by std::seed_seq over the four
/// 32-bit halves of (seed, r), through std::normal_distribution<double>.
/// Trials are accumulated in fixed blocks whose partial sums are combined in
/// block order, so the output is bit-identical for any thread count.
ScoreGrid monte_carlo_heatmap(const SchemeConfig& scheme, const VideoGrid& grid, int frame,
                              const PositionVector& query, const TrialConfig& config, Position p_start = 0);

/// Softmax over the cells of the grid. Visualization only; the default metric
/// is the raw expected score.
ScoreGrid softmax_over_frame(const ScoreGrid& grid);

}  // namespace vrope

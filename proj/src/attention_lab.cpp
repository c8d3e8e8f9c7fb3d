#include "vrope/attention_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "vrope/error.hpp"
#include "vrope/kernels.hpp"

namespace vrope {
namespace {

constexpr int kTrialBlock = 256;

ScoreGrid empty_grid(const SchemeConfig& scheme, const VideoGrid& grid, int frame, const PositionVector& query) {
  validate(grid);
  if (query.size() != scheme.groups()) {
    throw InvalidDimension("query carries " + std::to_string(query.size()) + " coordinates, scheme needs " +
                           std::to_string(scheme.groups()));
  }
  if (frame < 0 || frame >= grid.frames) throw InvalidCoordinate("frame " + std::to_string(frame) + " out of range");
  ScoreGrid out;
  out.width = grid.width;
  out.height = grid.height;
  out.values.assign(static_cast<std::size_t>(grid.tokens_per_frame()), 0.0);
  out.scheme = scheme.id();
  out.query = query;
  out.frame = frame;
  out.d = scheme.dim();
  out.base = scheme.base();
  return out;
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

struct Trig {
  std::vector<double> cos;
  std::vector<double> sin;
};

Trig trig_for(const SchemeConfig& scheme, const PositionVector& pos) {
  const std::vector<double> angles = pair_angles(scheme, pos);
  Trig t{std::vector<double>(angles.size()), std::vector<double>(angles.size())};
  for (std::size_t j = 0; j < angles.size(); ++j) {
    t.cos[j] = std::cos(angles[j]);
    t.sin[j] = std::sin(angles[j]);
  }
  return t;
}

}  // namespace

ScoreGrid heatmap(const SchemeConfig& scheme, const VideoGrid& grid, int frame, const PositionVector& query,
                  Position p_start) {
  ScoreGrid out = empty_grid(scheme, grid, frame, query);
  for (int h = 0; h < grid.height; ++h) {
    for (int w = 0; w < grid.width; ++w) {
      const PositionVector cell = scheme_position(scheme, {w, h, frame}, grid, p_start);
      out.at(w, h) = expected_self_score(pair_deltas(scheme, query, cell), scheme.schedule());
    }
  }
  return out;
}

DecayCurve decay_curve(const FrequencySchedule& schedule, int max_delta) {
  if (max_delta < 1) throw InvalidParameter("max_delta must be >= 1");
  DecayCurve curve;
  curve.reserve(static_cast<std::size_t>(max_delta) + 1);
  std::vector<double> delta(static_cast<std::size_t>(schedule.pairs()));
  for (int k = 0; k <= max_delta; ++k) {
    std::fill(delta.begin(), delta.end(), static_cast<double>(k));
    curve.push_back({k, expected_self_score(delta, schedule)});
  }
  return curve;
}

std::optional<BoundaryScores> boundary_score_table(const TokenLayout& layout, const SchemeConfig& scheme,
                                                   int query_offset) {
  if (layout.scheme != scheme.id()) throw ConfigError("layout and scheme config disagree on the scheme");
  if (query_offset < 0) throw InvalidParameter("query_offset must be >= 0");

  for (std::size_t si = 0; si + 1 < layout.segments.size(); ++si) {
    if (!std::holds_alternative<VideoSegment>(layout.segments[si])) continue;
    const auto* text = std::get_if<TextSegment>(&layout.segments[si + 1]);
    if (text == nullptr) continue;
    if (query_offset >= text->tokens) return std::nullopt;

    const std::size_t video_begin = layout.segment_offsets[si];
    const std::size_t video_end = layout.segment_offsets[si + 1];
    const std::size_t query_index = video_end + static_cast<std::size_t>(query_offset);
    const PositionVector& query = layout.tokens[query_index].position;

    BoundaryScores scores;
    scores.scheme = scheme.id();
    double video_sum = 0.0;
    for (std::size_t i = video_begin; i < video_end; ++i) {
      video_sum += expected_self_score(pair_deltas(scheme, query, layout.tokens[i].position), scheme.schedule());
    }
    scores.video_keys = video_end - video_begin;
    scores.to_video = video_sum / static_cast<double>(scores.video_keys);

    double text_sum = 0.0;
    for (std::size_t i = 0; i < query_index; ++i) {
      if (layout.tokens[i].modality != Modality::text) continue;
      text_sum += expected_self_score(pair_deltas(scheme, query, layout.tokens[i].position), scheme.schedule());
      ++scores.text_keys;
    }
    if (scores.text_keys > 0) scores.to_text = text_sum / static_cast<double>(scores.text_keys);
    return scores;
  }
  return std::nullopt;
}

ScoreGrid monte_carlo_heatmap(const SchemeConfig& scheme, const VideoGrid& grid, int frame,
                              const PositionVector& query, const TrialConfig& config, Position p_start) {
  if (config.trials < 1) throw InvalidParameter("trials must be >= 1");
  if (config.d != scheme.dim() || config.base != scheme.base()) {
    throw ConfigError("trial config d/base differ from the scheme's schedule");
  }
  ScoreGrid out = empty_grid(scheme, grid, frame, query);
  const std::size_t cells = out.values.size();
  const auto d = static_cast<std::size_t>(scheme.dim());

  const Trig q_trig = trig_for(scheme, query);
  std::vector<Trig> cell_trig;
  cell_trig.reserve(cells);
  for (int h = 0; h < grid.height; ++h) {
    for (int w = 0; w < grid.width; ++w) {
      cell_trig.push_back(trig_for(scheme, scheme_position(scheme, {w, h, frame}, grid, p_start)));
    }
  }

  const int blocks = (config.trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<double> block_sums(static_cast<std::size_t>(blocks) * cells, 0.0);

  auto run_block = [&](int b) {
    std::vector<double> x(d);
    std::vector<double> xq(d);
    double* sums = block_sums.data() + static_cast<std::size_t>(b) * cells;
    const int first = b * kTrialBlock;
    const int last = std::min(config.trials, first + kTrialBlock);
    for (int r = first; r < last; ++r) {
      std::mt19937_64 engine = trial_engine(config.seed, static_cast<std::uint64_t>(r));
      std::normal_distribution<double> normal(0.0, 1.0);
      for (double& v : x) v = normal(engine);
      simd::rotate(x, q_trig.cos, q_trig.sin, xq);
      for (std::size_t c = 0; c < cells; ++c) {
        sums[c] += simd::rotated_dot(xq, x, cell_trig[c].cos, cell_trig[c].sin);
      }
    }
  };

  int workers = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, blocks);
  if (workers == 1) {
    for (int b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int wi = 0; wi < workers; ++wi) {
      pool.emplace_back([&, wi] {
        for (int b = wi; b < blocks; b += workers) run_block(b);
      });
    }
  }

  const double scale = 1.0 / (static_cast<double>(config.trials) * static_cast<double>(d));
  for (std::size_t c = 0; c < cells; ++c) {
    double total = 0.0;
    for (int b = 0; b < blocks; ++b) total += block_sums[static_cast<std::size_t>(b) * cells + c];
    out.values[c] = total * scale;
  }
  return out;
}

ScoreGrid softmax_over_frame(const ScoreGrid& grid) {
  ScoreGrid out = grid;
  if (out.values.empty()) return out;
  const double peak = *std::max_element(out.values.begin(), out.values.end());
  double norm = 0.0;
  for (double& v : out.values) {
    v = std::exp(v - peak);
    norm += v;
  }
  for (double& v : out.values) v /= norm;
  return out;
}

}  // namespace vrope

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vrope/rotary.hpp"

namespace vrope {

using Position = std::int64_t;

enum class SchemeId { rope1d, rope2d, rope3d, rope_share, rope_compact, vrope };

inline constexpr std::array<SchemeId, 6> kAllSchemes{SchemeId::rope1d,     SchemeId::rope2d,
                                                     SchemeId::rope3d,     SchemeId::rope_share,
                                                     SchemeId::rope_compact, SchemeId::vrope};

std::string_view scheme_name(SchemeId id) noexcept;
/// Accepts the canonical names ("rope1d", "rope_share", ...) and hyphenated forms
/// ("rope-3d", "rope-share"). Throws ConfigError on anything else.
SchemeId parse_scheme(std::string_view name);

/// Number of positional coordinates a token carries under the scheme.
int group_count(SchemeId id) noexcept;

struct VideoGrid {
  int width = 1;
  int height = 1;
  int frames = 1;

  std::int64_t tokens_per_frame() const noexcept { return std::int64_t{width} * height; }
  std::int64_t tokens() const noexcept { return tokens_per_frame() * frames; }
  bool operator==(const VideoGrid&) const = default;
};

/// Throws InvalidParameter if any extent is < 1.
void validate(const VideoGrid& grid);

struct TokenCoordinate {
  int w = 0;
  int h = 0;
  int t = 0;
  bool operator==(const TokenCoordinate&) const = default;
};

/// Throws InvalidCoordinate if the coordinate lies outside the grid.
void validate(const TokenCoordinate& coord, const VideoGrid& grid);

struct SymmetricIndices {
  Position u1, u2, u3, u4;
  bool operator==(const SymmetricIndices&) const = default;
};

/// Up to four positional coordinates, one per channel group.
class PositionVector {
 public:
  PositionVector() = default;
  PositionVector(std::initializer_list<Position> dims);
  static PositionVector uniform(Position value, int count);

  int size() const noexcept { return count_; }
  Position operator[](int i) const { return dims_[static_cast<std::size_t>(i)]; }
  Position& operator[](int i) { return dims_[static_cast<std::size_t>(i)]; }
  std::span<const Position> dims() const noexcept { return {dims_.data(), static_cast<std::size_t>(count_)}; }
  Position max() const noexcept;
  bool isotropic() const noexcept;

  bool operator==(const PositionVector& other) const noexcept {
    return count_ == other.count_ && std::equal(dims().begin(), dims().end(), other.dims().begin());
  }

 private:
  std::array<Position, 4> dims_{};
  int count_ = 0;
};

/// Scheme plus the channel-pair to coordinate assignment.
class SchemeConfig {
 public:
  /// `partition` gives per-group pair counts: (t, h, w) for rope3d/rope_compact,
  /// (w, h) for rope2d. Omitted means the default split. Throws ConfigError on
  /// inconsistent configurations, and the FrequencySchedule errors for bad d/base.
  SchemeConfig(SchemeId id, int d, double base = 10000.0,
               std::optional<std::vector<int>> partition = std::nullopt);

  SchemeId id() const noexcept { return id_; }
  int dim() const noexcept { return schedule_.dim(); }
  int pairs() const noexcept { return schedule_.pairs(); }
  double base() const noexcept { return schedule_.base(); }
  int groups() const noexcept { return group_count(id_); }
  const FrequencySchedule& schedule() const noexcept { return schedule_; }
  /// Pair counts per group, in coordinate order.
  std::span<const int> partition() const noexcept { return partition_; }
  /// group_of_pair()[j] is the coordinate index read by channel pair j.
  std::span<const int> group_of_pair() const noexcept { return group_of_pair_; }

 private:
  SchemeId id_;
  FrequencySchedule schedule_;
  std::vector<int> partition_;
  std::vector<int> group_of_pair_;
};

/// Equal thirds of `pairs` in (t, h, w) order with the remainder on t.
std::array<int, 3> default_rope3d_partition(int pairs) noexcept;

/// The j -> coordinate mapping: j mod 4 for vrope, contiguous blocks otherwise.
std::vector<int> group_allocation(const SchemeConfig& scheme);

// u = (w+h, w-h, -w-h, -w+h)
SymmetricIndices symmetric_indices(const TokenCoordinate& coord) noexcept;

/// Shifts the frame so its geometric centre sits on the text axis at p_start.
PositionVector center_align(const SymmetricIndices& u, const VideoGrid& grid, Position p_start) noexcept;

/// Adds t * (H + W - 1) to every coordinate. Throws InvalidCoordinate if t is outside [0, T).
PositionVector temporal_offset(const PositionVector& v, int t, const VideoGrid& grid);

PositionVector vrope_position(const TokenCoordinate& coord, const VideoGrid& grid, Position p_start);

/// Position of a video token under any scheme. Coordinate order is
/// rope1d/rope_share: (p); rope2d: (w, h); rope3d/rope_compact: (t, h, w);
/// vrope: (v1, v2, v3, v4).
PositionVector scheme_position(const SchemeConfig& scheme, const TokenCoordinate& coord, const VideoGrid& grid,
                               Position p_start);

PositionVector text_position(Position m, const SchemeConfig& scheme);

/// angles[j] = position[group_of_pair[j]] * theta[j]
std::vector<double> pair_angles(const SchemeConfig& scheme, const PositionVector& position);

/// delta[j] = query[g(j)] - key[g(j)], as doubles for expected_self_score.
std::vector<double> pair_deltas(const SchemeConfig& scheme, const PositionVector& query, const PositionVector& key);

}  // namespace vrope

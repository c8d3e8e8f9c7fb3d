#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vrope/schemes.hpp"

namespace vrope {

struct TextSegment {
  int tokens = 1;
  bool operator==(const TextSegment&) const = default;
};

struct VideoSegment {
  VideoGrid grid;
  bool operator==(const VideoSegment&) const = default;
};

using Segment = std::variant<TextSegment, VideoSegment>;

/// Grammar: item ("," item)*, item := "text:" INT | "video:" INT "x" INT "x" INT
/// (W x H x T). Whitespace around items and separators is ignored. Throws
/// ParseError carrying the offending span.
std::vector<Segment> parse_layout_spec(std::string_view spec);

std::string format_layout_spec(const std::vector<Segment>& segments);

enum class Modality { text, video };

struct LayoutToken {
  Modality modality = Modality::text;
  int segment_index = 0;
  TokenCoordinate coord;   // video tokens only
  int text_ordinal = 0;    // index within its text segment
  PositionVector position;

  bool operator==(const LayoutToken&) const = default;
};

struct TokenLayout {
  SchemeId scheme = SchemeId::rope1d;
  std::vector<Segment> segments;
  std::vector<LayoutToken> tokens;
  /// Index of the first token of each segment in `tokens`.
  std::vector<std::size_t> segment_offsets;

  bool operator==(const TokenLayout&) const = default;
};

/// Resolves every token's position. Video tokens are emitted frame by frame in
/// raster order (h outer, w inner). Throws ConfigError on an empty segment list.
TokenLayout build_layout(const std::vector<Segment>& segments, const SchemeConfig& scheme);

struct BoundaryGap {
  int video_segment = 0;
  /// first following text coordinate minus the per-coordinate max over the video.
  std::vector<Position> per_dim;
};

/// One entry per video segment that is directly followed by a text segment.
std::vector<BoundaryGap> boundary_gap(const TokenLayout& layout);

// Layout CSV:
//   token_index,modality,segment_index,w,h,t,dim0,dim1,dim2,dim3
// Text rows leave w/h/t empty; unused dims are empty. LF line endings.
void write_layout_csv(std::ostream& out, const TokenLayout& layout);
std::string layout_csv(const TokenLayout& layout);

/// Rebuilds the token list (and segment bookkeeping derivable from it) from
/// CSV text. Throws ParseError on malformed input.
TokenLayout parse_layout_csv(std::string_view csv, SchemeId scheme);

}  // namespace vrope

#include "vrope/layout.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "vrope/error.hpp"

namespace vrope {
namespace {

// Spec text with whitespace removed, remembering where each kept character
// came from so errors point into the caller's string.
struct Compacted {
  std::string text;
  std::vector<std::size_t> origin;

  std::size_t source_offset(std::size_t i, std::size_t fallback) const {
    return i < origin.size() ? origin[i] : fallback;
  }
};

Compacted compact(std::string_view spec) {
  Compacted c;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (std::isspace(static_cast<unsigned char>(spec[i]))) continue;
    c.text.push_back(spec[i]);
    c.origin.push_back(i);
  }
  return c;
}

class SpecParser {
 public:
  SpecParser(const Compacted& input, std::size_t source_size) : in_(input), source_size_(source_size) {}

  std::vector<Segment> parse() {
    std::vector<Segment> segments;
    if (in_.text.empty()) fail("empty layout spec", 0, 0);
    while (true) {
      segments.push_back(item());
      if (pos_ == in_.text.size()) break;
      expect(',');
    }
    return segments;
  }

 private:
  Segment item() {
    const std::string_view rest = std::string_view(in_.text).substr(pos_);
    if (rest.starts_with("text:")) {
      pos_ += 5;
      return TextSegment{positive_int("text token count")};
    }
    if (rest.starts_with("video:")) {
      pos_ += 6;
      VideoGrid grid;
      grid.width = positive_int("video width");
      expect('x');
      grid.height = positive_int("video height");
      expect('x');
      grid.frames = positive_int("video frame count");
      return VideoSegment{grid};
    }
    const std::size_t end = in_.text.find(',', pos_);
    fail("expected 'text:' or 'video:'", pos_, (end == std::string::npos ? in_.text.size() : end) - pos_);
  }

  int positive_int(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < in_.text.size() && std::isdigit(static_cast<unsigned char>(in_.text[pos_]))) ++pos_;
    if (pos_ == start) {
      fail(std::string("expected ") + what, start, pos_ < in_.text.size() ? 1 : 0);
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(in_.text.data() + start, in_.text.data() + pos_, value);
    if (ec != std::errc{}) fail(std::string(what) + " out of range", start, pos_ - start);
    if (value < 1) fail(std::string(what) + " must be >= 1", start, pos_ - start);
    return value;
  }

  void expect(char c) {
    if (pos_ >= in_.text.size() || in_.text[pos_] != c) {
      fail(std::string("expected '") + c + "'", pos_, pos_ < in_.text.size() ? 1 : 0);
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what, std::size_t at, std::size_t len) const {
    const std::size_t begin = in_.source_offset(at, source_size_);
    std::size_t span = 0;
    if (len > 0) span = in_.source_offset(at + len - 1, source_size_) - begin + 1;
    throw ParseError("layout spec: " + what, begin, span);
  }

  const Compacted& in_;
  std::size_t source_size_;
  std::size_t pos_ = 0;
};

// Continuation state between segments. Every scheme except rope_compact keeps
// text isotropic and only needs the scalar next_start. rope_compact can leave
// text anisotropic after a video, so it tracks the next text position as a vector.
struct Cursor {
  Position next_start = 0;
  std::optional<PositionVector> compact_text;
};

Position after_video(SchemeId id, Position p, const VideoGrid& g) {
  switch (id) {
    case SchemeId::rope1d:
      return p + g.tokens();
    case SchemeId::rope2d:
      return p + std::max(g.width, g.height);
    case SchemeId::rope3d:
      return p + std::max({g.width, g.height, g.frames});
    case SchemeId::rope_share:
      return p + g.frames + 1;
    case SchemeId::vrope:
      return p + Position{g.frames} * (Position{g.height} + g.width - 1);
    case SchemeId::rope_compact:
      break;
  }
  throw ConfigError("after_video: rope_compact tracks a vector cursor");
}

}  // namespace

std::vector<Segment> parse_layout_spec(std::string_view spec) {
  const Compacted c = compact(spec);
  return SpecParser(c, spec.size()).parse();
}

std::string format_layout_spec(const std::vector<Segment>& segments) {
  std::string out;
  for (const Segment& s : segments) {
    if (!out.empty()) out += ',';
    if (const auto* text = std::get_if<TextSegment>(&s)) {
      out += "text:" + std::to_string(text->tokens);
    } else {
      const VideoGrid& g = std::get<VideoSegment>(s).grid;
      out += "video:" + std::to_string(g.width) + "x" + std::to_string(g.height) + "x" + std::to_string(g.frames);
    }
  }
  return out;
}

TokenLayout build_layout(const std::vector<Segment>& segments, const SchemeConfig& scheme) {
  if (segments.empty()) throw ConfigError("layout has no segments");
  const SchemeId id = scheme.id();
  const bool compact_scheme = id == SchemeId::rope_compact;

  TokenLayout layout;
  layout.scheme = id;
  layout.segments = segments;

  Cursor cursor;
  if (compact_scheme) cursor.compact_text = PositionVector::uniform(0, 3);

  for (std::size_t si = 0; si < segments.size(); ++si) {
    layout.segment_offsets.push_back(layout.tokens.size());
    const int seg = static_cast<int>(si);

    if (const auto* text = std::get_if<TextSegment>(&segments[si])) {
      if (text->tokens < 1) throw ConfigError("text segment needs at least one token");
      for (int k = 0; k < text->tokens; ++k) {
        LayoutToken tok;
        tok.modality = Modality::text;
        tok.segment_index = seg;
        tok.text_ordinal = k;
        if (compact_scheme) {
          tok.position = *cursor.compact_text;
          for (int i = 0; i < 3; ++i) (*cursor.compact_text)[i] += 1;
        } else {
          tok.position = text_position(cursor.next_start + k, scheme);
        }
        layout.tokens.push_back(tok);
      }
      if (!compact_scheme) cursor.next_start += text->tokens;
      continue;
    }

    const VideoGrid& grid = std::get<VideoSegment>(segments[si]).grid;
    validate(grid);
    // rope_compact resumes from the largest coordinate of the pending text position.
    const Position p = compact_scheme ? cursor.compact_text->max() : cursor.next_start;
    for (int t = 0; t < grid.frames; ++t) {
      for (int h = 0; h < grid.height; ++h) {
        for (int w = 0; w < grid.width; ++w) {
          LayoutToken tok;
          tok.modality = Modality::video;
          tok.segment_index = seg;
          tok.coord = {w, h, t};
          tok.position = scheme_position(scheme, tok.coord, grid, p);
          layout.tokens.push_back(tok);
        }
      }
    }
    if (compact_scheme) {
      // Each coordinate continues one past its own maximum: (t, h, w) order.
      cursor.compact_text = PositionVector{p + grid.frames, p + grid.height, p + grid.width};
    } else {
      cursor.next_start = after_video(id, p, grid);
    }
  }
  return layout;
}

std::vector<BoundaryGap> boundary_gap(const TokenLayout& layout) {
  std::vector<BoundaryGap> gaps;
  for (std::size_t si = 0; si + 1 < layout.segments.size(); ++si) {
    if (!std::holds_alternative<VideoSegment>(layout.segments[si])) continue;
    if (!std::holds_alternative<TextSegment>(layout.segments[si + 1])) continue;

    const std::size_t begin = layout.segment_offsets[si];
    const std::size_t end = layout.segment_offsets[si + 1];
    const PositionVector& next_text = layout.tokens[end].position;
    const int dims = next_text.size();

    PositionVector max_video = layout.tokens[begin].position;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const PositionVector& pv = layout.tokens[i].position;
      for (int d = 0; d < dims; ++d) max_video[d] = std::max(max_video[d], pv[d]);
    }

    BoundaryGap gap;
    gap.video_segment = static_cast<int>(si);
    for (int d = 0; d < dims; ++d) gap.per_dim.push_back(next_text[d] - max_video[d]);
    gaps.push_back(std::move(gap));
  }
  return gaps;
}

}  // namespace vrope

#include <charconv>
#include <ostream>
#include <sstream>

#include "vrope/error.hpp"
#include "vrope/layout.hpp"

namespace vrope {
namespace {

constexpr std::string_view kHeader = "token_index,modality,segment_index,w,h,t,dim0,dim1,dim2,dim3";
constexpr int kColumns = 10;

struct Field {
  std::string_view text;
  std::size_t offset;
};

template <class Int>
Int parse_int(const Field& f, const char* what) {
  Int value{};
  const char* first = f.text.data();
  const char* last = first + f.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (f.text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(std::string("layout csv: bad ") + what + " '" + std::string(f.text) + "'", f.offset,
                     f.text.size());
  }
  return value;
}

std::vector<Field> split_row(std::string_view line, std::size_t line_offset) {
  std::vector<Field> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    fields.push_back({line.substr(start, end - start), line_offset + start});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

void write_layout_csv(std::ostream& out, const TokenLayout& layout) {
  out << kHeader << '\n';
  for (std::size_t i = 0; i < layout.tokens.size(); ++i) {
    const LayoutToken& tok = layout.tokens[i];
    out << i << ',' << (tok.modality == Modality::text ? "text" : "video") << ',' << tok.segment_index << ',';
    if (tok.modality == Modality::video) {
      out << tok.coord.w << ',' << tok.coord.h << ',' << tok.coord.t;
    } else {
      out << ",,";
    }
    for (int d = 0; d < 4; ++d) {
      out << ',';
      if (d < tok.position.size()) out << tok.position[d];
    }
    out << '\n';
  }
}

std::string layout_csv(const TokenLayout& layout) {
  std::ostringstream os;
  write_layout_csv(os, layout);
  return os.str();
}

TokenLayout parse_layout_csv(std::string_view csv, SchemeId scheme) {
  const int dims = group_count(scheme);
  TokenLayout layout;
  layout.scheme = scheme;

  std::size_t offset = 0;
  bool header_seen = false;
  while (offset < csv.size()) {
    std::size_t nl = csv.find('\n', offset);
    if (nl == std::string_view::npos) nl = csv.size();
    const std::string_view line = csv.substr(offset, nl - offset);
    const std::size_t line_offset = offset;
    offset = nl + 1;

    if (!header_seen) {
      if (line != kHeader) throw ParseError("layout csv: unexpected header", line_offset, line.size());
      header_seen = true;
      continue;
    }
    if (line.empty()) throw ParseError("layout csv: empty row", line_offset, 0);

    const std::vector<Field> f = split_row(line, line_offset);
    if (static_cast<int>(f.size()) != kColumns) {
      throw ParseError("layout csv: expected 10 columns", line_offset, line.size());
    }
    const auto index = parse_int<std::size_t>(f[0], "token_index");
    if (index != layout.tokens.size()) throw ParseError("layout csv: token_index out of sequence", f[0].offset, f[0].text.size());

    LayoutToken tok;
    if (f[1].text == "text") {
      tok.modality = Modality::text;
    } else if (f[1].text == "video") {
      tok.modality = Modality::video;
    } else {
      throw ParseError("layout csv: bad modality", f[1].offset, f[1].text.size());
    }
    tok.segment_index = parse_int<int>(f[2], "segment_index");

    if (tok.modality == Modality::video) {
      tok.coord = {parse_int<int>(f[3], "w"), parse_int<int>(f[4], "h"), parse_int<int>(f[5], "t")};
    } else {
      for (int c = 3; c < 6; ++c) {
        if (!f[c].text.empty()) throw ParseError("layout csv: text row has a coordinate", f[c].offset, f[c].text.size());
      }
    }

    tok.position = PositionVector::uniform(0, dims);
    for (int d = 0; d < 4; ++d) {
      const Field& fd = f[static_cast<std::size_t>(6 + d)];
      if (d < dims) {
        tok.position[d] = parse_int<Position>(fd, "position");
      } else if (!fd.text.empty()) {
        throw ParseError("layout csv: unused dim is not empty", fd.offset, fd.text.size());
      }
    }

    // Segment bookkeeping: indices start at 0 and only ever advance by one.
    const int current = static_cast<int>(layout.segments.size()) - 1;
    if (tok.segment_index == current + 1) {
      layout.segment_offsets.push_back(layout.tokens.size());
      if (tok.modality == Modality::text) {
        layout.segments.emplace_back(TextSegment{0});
      } else {
        layout.segments.emplace_back(VideoSegment{VideoGrid{0, 0, 0}});
      }
    } else if (tok.segment_index != current) {
      throw ParseError("layout csv: segment_index out of sequence", f[2].offset, f[2].text.size());
    }

    Segment& seg = layout.segments.back();
    if (auto* text = std::get_if<TextSegment>(&seg)) {
      if (tok.modality != Modality::text) throw ParseError("layout csv: mixed segment", f[1].offset, f[1].text.size());
      tok.text_ordinal = text->tokens++;
    } else {
      if (tok.modality != Modality::video) throw ParseError("layout csv: mixed segment", f[1].offset, f[1].text.size());
      VideoGrid& g = std::get<VideoSegment>(seg).grid;
      g.width = std::max(g.width, tok.coord.w + 1);
      g.height = std::max(g.height, tok.coord.h + 1);
      g.frames = std::max(g.frames, tok.coord.t + 1);
    }
    layout.tokens.push_back(tok);
  }
  if (!header_seen) throw ParseError("layout csv: missing header", 0, 0);

  // Video segments must be complete and in raster order.
  for (std::size_t si = 0; si < layout.segments.size(); ++si) {
    const auto* video = std::get_if<VideoSegment>(&layout.segments[si]);
    if (video == nullptr) continue;
    const VideoGrid& g = video->grid;
    const std::size_t begin = layout.segment_offsets[si];
    const std::size_t end = si + 1 < layout.segments.size() ? layout.segment_offsets[si + 1] : layout.tokens.size();
    if (static_cast<std::int64_t>(end - begin) != g.tokens()) {
      throw ParseError("layout csv: video segment " + std::to_string(si) + " is incomplete", 0, 0);
    }
    std::size_t i = begin;
    for (int t = 0; t < g.frames; ++t) {
      for (int h = 0; h < g.height; ++h) {
        for (int w = 0; w < g.width; ++w, ++i) {
          if (!(layout.tokens[i].coord == TokenCoordinate{w, h, t})) {
            throw ParseError("layout csv: video tokens not in raster order", 0, 0);
          }
        }
      }
    }
  }
  return layout;
}

}  // namespace vrope

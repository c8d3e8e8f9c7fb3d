#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vrope/error.hpp"
#include "vrope/layout.hpp"

using namespace vrope;

namespace {

std::vector<PositionVector> positions(const TokenLayout& layout) {
  std::vector<PositionVector> out;
  for (const auto& t : layout.tokens) out.push_back(t.position);
  return out;
}

TokenLayout build(const char* spec, SchemeId id, int d = 64) { return build_layout(parse_layout_spec(spec), SchemeConfig(id, d)); }

}  // namespace

TEST_SUITE("sequence_layout") {
  TEST_CASE("parse layout spec") {
    CHECK(parse_layout_spec("text:3") == std::vector<Segment>{TextSegment{3}});
    CHECK(parse_layout_spec("text:2,video:2x2x1,text:1") ==
          std::vector<Segment>{TextSegment{2}, VideoSegment{{2, 2, 1}}, TextSegment{1}});
    CHECK(parse_layout_spec(" text:2 , video: 4x3x2 ") ==
          std::vector<Segment>{TextSegment{2}, VideoSegment{{4, 3, 2}}});
    CHECK(format_layout_spec(parse_layout_spec("video:8x8x16,text:5")) == "video:8x8x16,text:5");
  }

  TEST_CASE("parse errors carry the offending span") {
    auto span_of = [](const char* spec) -> std::pair<std::size_t, std::size_t> {
      try {
        parse_layout_spec(spec);
      } catch (const ParseError& e) {
        return {e.offset(), e.length()};
      }
      FAIL("no parse error for " << spec);
      return {0, 0};
    };
    CHECK(span_of("video:0x2x2") == std::pair<std::size_t, std::size_t>{6, 1});
    CHECK(span_of("text:3,audio:4") == std::pair<std::size_t, std::size_t>{7, 7});
    CHECK(span_of("text:-1").first == 5);
    CHECK(span_of("text:2,,text:1").first == 7);
    CHECK(span_of("video:2x2").first == 9);
    CHECK(span_of("text:3,").first == 7);
    CHECK(span_of("text:99999999999").first == 5);
    CHECK_THROWS_AS(parse_layout_spec(""), ParseError);
    CHECK_THROWS_AS(parse_layout_spec("text:1 x"), ParseError);
    CHECK_THROWS_AS(build_layout({}, SchemeConfig(SchemeId::vrope, 8)), ConfigError);
  }

  TEST_CASE("text only layouts are sequential for every scheme") {
    for (SchemeId id : kAllSchemes) {
      const auto layout = build("text:3", id);
      REQUIRE(layout.tokens.size() == 3);
      for (int i = 0; i < 3; ++i) CHECK(layout.tokens[static_cast<std::size_t>(i)].position == PositionVector::uniform(i, group_count(id)));
    }
  }

  TEST_CASE("vrope interleaved example") {
    const auto layout = build("text:2,video:2x2x1,text:1", SchemeId::vrope, 8);
    CHECK(positions(layout) == std::vector<PositionVector>{{0, 0, 0, 0},
                                                           {1, 1, 1, 1},
                                                           {2, 3, 4, 3},
                                                           {3, 4, 3, 2},
                                                           {3, 2, 3, 4},
                                                           {4, 3, 2, 3},
                                                           {5, 5, 5, 5}});
    CHECK(layout.tokens[4].coord == TokenCoordinate{0, 1, 0});
    CHECK(layout.segment_offsets == std::vector<std::size_t>{0, 2, 6});
  }

  TEST_CASE("rope3d interleaved example") {
    const auto layout = build("text:2,video:2x2x1,text:1", SchemeId::rope3d, 12);
    CHECK(layout.tokens[2].position == PositionVector{2, 2, 2});
    CHECK(layout.tokens[5].position == PositionVector{2, 3, 3});
    CHECK(layout.tokens[6].position == PositionVector{4, 4, 4});
  }

  TEST_CASE("continuation rules per scheme") {
    // video 3x2x4 starting at p = 2, then two text tokens
    const char* spec = "text:2,video:3x2x4,text:2";
    CHECK(build(spec, SchemeId::rope1d).tokens[26].position == PositionVector{26});
    CHECK(build(spec, SchemeId::rope2d).tokens[26].position == PositionVector{5, 5});
    CHECK(build(spec, SchemeId::rope3d).tokens[26].position == PositionVector{6, 6, 6});
    CHECK(build(spec, SchemeId::rope_share).tokens[26].position == PositionVector{7});
    CHECK(build(spec, SchemeId::vrope).tokens[26].position == PositionVector{18, 18, 18, 18});

    // rope_compact: each coordinate continues one past its own maximum, (t, h, w) order
    const auto compact = build("text:2,video:3x2x4,text:2,video:1x1x1,text:1", SchemeId::rope_compact);
    CHECK(compact.tokens[26].position == PositionVector{6, 4, 5});
    CHECK(compact.tokens[27].position == PositionVector{7, 5, 6});
    CHECK(compact.tokens[28].position == PositionVector{8, 8, 8});
    CHECK(compact.tokens[29].position == PositionVector{9, 9, 9});
  }

  TEST_CASE("rope_share leaves text at start + T + 1") {
    const auto layout = build("text:5,video:8x8x16,text:1", SchemeId::rope_share);
    CHECK(layout.tokens[5].position == PositionVector{6});
    CHECK(layout.tokens.back().position == PositionVector{5 + 16 + 1});
  }

  TEST_CASE("boundary gaps") {
    for (SchemeId id : kAllSchemes) {
      CHECK(boundary_gap(build("text:4", id)).empty());
      CHECK(boundary_gap(build("text:1,video:2x2x2", id)).empty());
    }
    const auto r3 = boundary_gap(build("video:8x8x16,text:1", SchemeId::rope3d));
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].per_dim == std::vector<Position>{1, 9, 9});
    CHECK(boundary_gap(build("text:3,video:5x4x3,text:1", SchemeId::rope1d))[0].per_dim == std::vector<Position>{1});
    CHECK(boundary_gap(build("text:3,video:5x4x3,text:1", SchemeId::rope_share))[0].per_dim == std::vector<Position>{1});
    CHECK(boundary_gap(build("text:3,video:5x4x3,text:1", SchemeId::rope_compact))[0].per_dim ==
          std::vector<Position>{1, 1, 1});

    const auto two = boundary_gap(build("video:2x2x2,text:1,video:3x3x1,text:2", SchemeId::vrope));
    REQUIRE(two.size() == 2);
    CHECK(two[0].video_segment == 0);
    CHECK(two[1].video_segment == 2);
  }

  TEST_CASE("vrope gap is one in every dim, brute force") {
    const SchemeConfig vr(SchemeId::vrope, 8);
    for (Position p : {Position{0}, Position{7}})
      for (int W = 1; W <= 5; ++W)
        for (int H = 1; H <= 5; ++H)
          for (int T = 1; T <= 5; ++T) {
            std::vector<Segment> segs;
            if (p > 0) segs.emplace_back(TextSegment{static_cast<int>(p)});
            segs.emplace_back(VideoSegment{{W, H, T}});
            segs.emplace_back(TextSegment{1});
            const auto gaps = boundary_gap(build_layout(segs, vr));
            REQUIRE(gaps.size() == 1);
            const auto expect = oracle::vrope_gap(W, H, T, p);
            CHECK(gaps[0].per_dim == std::vector<Position>(expect.begin(), expect.end()));
            CHECK(gaps[0].per_dim == std::vector<Position>{1, 1, 1, 1});
          }
  }

  TEST_CASE("rope3d gap grows with frame count") {
    const SchemeConfig r3(SchemeId::rope3d, 64);
    for (int W : {4, 8})
      for (int H : {4, 6, 8})
        for (int T = std::max(W, H) + 1; T <= 40; ++T) {
          const auto gap = boundary_gap(build_layout({VideoSegment{{W, H, T}}, TextSegment{1}}, r3))[0].per_dim;
          CHECK(gap == std::vector<Position>{1, T - H + 1, T - W + 1});
        }
  }

  TEST_CASE("no cross-modal collisions for sequential schemes") {
    const char* spec = "text:3,video:3x2x4,text:2,video:2x2x2,text:2";
    for (SchemeId id : {SchemeId::rope1d, SchemeId::rope_share, SchemeId::vrope}) {
      const auto layout = build(spec, id);
      for (std::size_t si : {1u, 3u}) {
        const std::size_t begin = layout.segment_offsets[si];
        const std::size_t end = layout.segment_offsets[si + 1];
        const Position start = layout.tokens[begin - 1].position[0] + 1;
        for (std::size_t i = begin; i < end; ++i)
          for (int d = 0; d < group_count(id); ++d) {
            CHECK(layout.tokens[i].position[d] >= start);
            CHECK(layout.tokens[i].position[d] < layout.tokens[end].position[d]);
          }
      }
    }
    const auto flat = build(spec, SchemeId::rope1d);
    for (std::size_t i = 0; i < flat.tokens.size(); ++i) CHECK(flat.tokens[i].position[0] == static_cast<Position>(i));
  }

  TEST_CASE("build is deterministic") {
    for (SchemeId id : kAllSchemes) {
      CHECK(build("text:2,video:3x3x3,text:4,video:2x1x2", id) == build("text:2,video:3x3x3,text:4,video:2x1x2", id));
    }
  }

  TEST_CASE("layout csv format") {
    const auto csv = layout_csv(build("text:2,video:2x2x1,text:1", SchemeId::vrope, 8));
    CHECK(csv ==
          "token_index,modality,segment_index,w,h,t,dim0,dim1,dim2,dim3\n"
          "0,text,0,,,,0,0,0,0\n"
          "1,text,0,,,,1,1,1,1\n"
          "2,video,1,0,0,0,2,3,4,3\n"
          "3,video,1,1,0,0,3,4,3,2\n"
          "4,video,1,0,1,0,3,2,3,4\n"
          "5,video,1,1,1,0,4,3,2,3\n"
          "6,text,2,,,,5,5,5,5\n");
    CHECK(layout_csv(build("text:1", SchemeId::rope1d)) ==
          "token_index,modality,segment_index,w,h,t,dim0,dim1,dim2,dim3\n0,text,0,,,,0,,,\n");
  }

  TEST_CASE("layout csv round trip over random layouts") {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> extent(1, 4);
    std::uniform_int_distribution<int> count(1, 5);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Segment> segs;
      const int n = count(rng);
      for (int i = 0; i < n; ++i) {
        if ((rng() & 1) != 0) {
          segs.emplace_back(TextSegment{count(rng)});
        } else {
          segs.emplace_back(VideoSegment{{extent(rng), extent(rng), extent(rng)}});
        }
      }
      for (SchemeId id : kAllSchemes) {
        const auto layout = build_layout(segs, SchemeConfig(id, 16));
        CHECK(parse_layout_csv(layout_csv(layout), id) == layout);
      }
    }
  }

  TEST_CASE("layout csv parse errors") {
    const std::string header = "token_index,modality,segment_index,w,h,t,dim0,dim1,dim2,dim3\n";
    CHECK_THROWS_AS(parse_layout_csv("", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv("w,h\n", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv(header + "0,text,0,,,,0,,\n", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv(header + "1,text,0,,,,0,,,\n", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv(header + "0,audio,0,,,,0,,,\n", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv(header + "0,text,0,,,,0,1,,\n", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv(header + "0,text,1,,,,0,,,\n", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv(header + "0,video,0,1,0,0,0,,,\n", SchemeId::rope1d), ParseError);
    CHECK_THROWS_AS(parse_layout_csv(header + "0,text,0,,,,x,,,\n", SchemeId::rope1d), ParseError);
  }
}
